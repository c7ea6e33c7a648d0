#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "mmsel/common.hpp"
#include "mmsel/instance.hpp"

namespace mmsel {

/**
 * One player of the local interaction game: an eligible (AP, UE) pair.
 * A pair is eligible when its best beam clears the RSS threshold used to
 * build the game. Strategy 0 means "off"; strategy i in 1..n_beams means
 * "transmit on beam i-1".
 */
struct Player {
  int id = 0;
  int ap = 0;
  int ue = 0;
  int best_beam = 0;  // argmax_b S_{b,ue,ap}, lowest index on ties
};

/**
 * The game graph. Neighbor lists hold player ids, sorted ascending:
 *
 *  - same_ap:       other players on the same AP
 *  - same_ue:       other players on the same UE
 *  - in_interferers:  players whose best-beam RSS at this player's UE
 *                     exceeds i_th (excluding same-AP/same-UE players)
 *  - out_interferers: players into whose UE this player's best beam leaks
 *                     more than i_th (the exact dual of in_interferers)
 *  - utility_neighbors: players whose strategy can change this player's
 *                       utility: anyone at an AP hosting this player or
 *                       one of its in_interferers (interference slates
 *                       cover whole APs), plus same-UE players anywhere
 *  - payoff_support:  players whose utility this player's strategy can
 *                     change: the exact dual of utility_neighbors, i.e.
 *                     same_ap, same_ue, and the out_interferers of this
 *                     player and of each same-AP colleague
 *  - payoff_neighbors:  players whose strategy can change this player's
 *                       payoff: utility_neighbors closure over
 *                       {self} + payoff_support
 *
 * The referenced Instance is not owned and must outlive the game.
 */
struct Game {
  const Instance* inst = nullptr;
  double s_t = 0.0;
  double i_th = 0.0;
  std::vector<Player> players;
  std::vector<std::vector<int>> same_ap;
  std::vector<std::vector<int>> same_ue;
  std::vector<std::vector<int>> in_interferers;
  std::vector<std::vector<int>> out_interferers;
  std::vector<std::vector<int>> utility_neighbors;
  std::vector<std::vector<int>> payoff_support;
  std::vector<std::vector<int>> payoff_neighbors;

  int num_players() const { return static_cast<int>(players.size()); }
  int n_strategies() const { return inst->n_beams() + 1; }
};

// One strategy in [0, n_beams] per player, indexed by player id.
using StrategyProfile = std::vector<int>;

/**
 * Builds the game for an instance: enumerates eligible (AP, UE) pairs in
 * lexicographic order and derives every neighbor list. s_t is the
 * eligibility threshold on the best-beam RSS; i_th is the interference
 * level (watts) above which two players are coupled.
 */
Game build_game(const Instance& inst, double s_t, double i_th);

/**
 * Utility of player l: zero when the player is off or shares its UE with
 * another active player; otherwise the average of its Shannon rate over
 * every combination of one active player per interfering AP, divided by
 * the number of active players on its own AP (time-sharing). Throws
 * CapExceeded when the combination count exceeds product_cap.
 */
double utility(const Game& game, int l, const StrategyProfile& z,
               std::uint64_t product_cap = 100000);

// Payoff of player l: its own utility plus the utilities of every player
// whose utility player l can affect (payoff_support). By construction a
// change in z_l moves the payoff and the potential by the same amount.
double payoff(const Game& game, int l, const StrategyProfile& z,
              std::uint64_t product_cap = 100000);

// Potential of a profile: the sum of all player utilities. On feasible
// profiles this equals the weighted sum rate of the induced selection.
double potential(const Game& game, const StrategyProfile& z,
                 std::uint64_t product_cap = 100000);

// True when no AP and no UE has two active players.
bool profile_feasible(const Game& game, const StrategyProfile& z);

// Selection induced by a feasible profile: each active player's AP
// serves the player's UE on its strategy beam. Throws
// std::invalid_argument if the profile has AP or UE conflicts.
Selection selection_from_profile(const Game& game, const StrategyProfile& z);

/**
 * Gibbs distribution of player l's strategy given everyone else's:
 * softmax over candidates of beta * payoff, computed with max-subtraction
 * so large beta cannot overflow.
 */
std::vector<double> gibbs_distribution(const Game& game,
                                       const StrategyProfile& z, int l,
                                       double beta,
                                       std::uint64_t product_cap = 100000);

// Draws one strategy for player l from gibbs_distribution.
int gibbs_update(const Game& game, const StrategyProfile& z, int l,
                 double beta, std::mt19937_64& rng,
                 std::uint64_t product_cap = 100000);

/**
 * Random maximal set of players whose closures {l} + payoff_neighbors(l)
 * are pairwise disjoint, grown greedily along a uniformly random player
 * permutation. Such players can update concurrently.
 */
std::vector<int> sample_independent_player_set(const Game& game,
                                               std::mt19937_64& rng);

/**
 * Switches players off until no AP and no UE carries two active players.
 * AP conflicts drop the player whose removal leaves the highest
 * potential (ties toward the lowest id) and assert that the potential
 * does not decrease; UE conflicts drop the lowest-id conflicted player.
 */
StrategyProfile feasibility_repair(const Game& game, StrategyProfile z,
                                   std::uint64_t product_cap = 100000);

struct LigParams {
  AnnealSchedule beta = AnnealSchedule::log_anneal(1.0);
  int max_iters = 5000;
  std::uint64_t seed = 0;
  std::optional<double> stop_epsilon;  // stop once all players concentrate
  std::uint64_t product_cap = 100000;
  bool best_response = false;  // baseline: argmax payoff instead of sampling
  bool record_trace = true;
};

struct LigTraceRow {
  double psi = 0.0;
  int n_active = 0;
  bool feasible = false;
};

struct LigTrace {
  std::vector<LigTraceRow> rows;

  // CSV columns: iteration,psi,n_active,feasible
  void write_csv(std::ostream& out) const;
};

struct LigResult {
  StrategyProfile raw_profile;  // state when the loop stopped
  StrategyProfile profile;      // after feasibility repair
  Selection selection;
  double psi = 0.0;  // potential of the repaired profile
  int iterations_run = 0;
  LigTrace trace;
};

/**
 * Concurrent log-linear learning: starting from the all-off profile,
 * each iteration draws a random independent player set and resamples
 * every member from its Gibbs distribution against the previous profile.
 * Stops at max_iters or once every player's distribution puts at least
 * 1 - stop_epsilon on a single strategy, then repairs feasibility.
 */
LigResult lig_select(const Game& game, const LigParams& params);

// All strategy profiles in player-0-fastest order; throws CapExceeded
// when (n_beams+1)^num_players exceeds cap.
std::vector<StrategyProfile> enumerate_profiles(const Game& game,
                                                std::uint64_t cap = 4096);

struct IterationBound {
  double eta = 0.0;   // minimum single-update Gibbs probability
  int distance = 0;   // eccentricity of the optimum set in move space
  double nu0 = 0.0;   // 1 when the all-off start is already optimal
  double bound = 0.0; // distance * (1 - nu0) / eta^distance
};

/**
 * Mean-iterations bound for reaching a potential-optimal profile under
 * single-player updates at fixed beta: eta minimizes the Gibbs
 * probability over all (state, player, strategy) triples, distance is
 * the farthest state's move count to the optimum set, and the bound is
 * distance * (1 - nu0) / eta^distance. Throws CapExceeded when the
 * strategy space exceeds state_cap states.
 */
IterationBound eta_and_bound(const Game& game, double beta,
                             std::uint64_t state_cap = 4096);

}  // namespace mmsel
