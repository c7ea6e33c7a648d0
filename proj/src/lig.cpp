#include "mmsel/lig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <stdexcept>

namespace mmsel {

namespace {

void check_player_id(const Game& game, int l) {
  if (l < 0 || l >= game.num_players()) {
    throw std::invalid_argument("player id out of range");
  }
}

void check_profile(const Game& game, const StrategyProfile& z) {
  if (z.size() != static_cast<std::size_t>(game.num_players())) {
    throw std::invalid_argument("profile size must equal player count");
  }
  for (int v : z) {
    if (v < 0 || v >= game.n_strategies()) {
      throw std::invalid_argument("strategy out of range");
    }
  }
}

}  // namespace

Game build_game(const Instance& inst, double s_t, double i_th) {
  inst.validate();
  if (s_t < 0.0 || i_th < 0.0) {
    throw std::invalid_argument("build_game: thresholds must be >= 0");
  }
  Game game;
  game.inst = &inst;
  game.s_t = s_t;
  game.i_th = i_th;

  // Eligible pairs in (ap, ue) lexicographic order.
  for (int a = 0; a < inst.n_aps(); ++a) {
    for (int u = 0; u < inst.n_ues(); ++u) {
      int best = 0;
      for (int b = 1; b < inst.n_beams(); ++b) {
        if (inst.rss.at(b, u, a) > inst.rss.at(best, u, a)) best = b;
      }
      if (inst.rss.at(best, u, a) >= s_t) {
        const int id = static_cast<int>(game.players.size());
        game.players.push_back({id, a, u, best});
      }
    }
  }

  const int n = game.num_players();
  game.same_ap.assign(n, {});
  game.same_ue.assign(n, {});
  game.in_interferers.assign(n, {});
  game.out_interferers.assign(n, {});
  game.utility_neighbors.assign(n, {});
  game.payoff_support.assign(n, {});
  game.payoff_neighbors.assign(n, {});

  for (int l = 0; l < n; ++l) {
    const Player& pl = game.players[l];
    for (int l2 = 0; l2 < n; ++l2) {
      if (l2 == l) continue;
      const Player& p2 = game.players[l2];
      if (p2.ap == pl.ap) {
        game.same_ap[l].push_back(l2);
      } else if (p2.ue == pl.ue) {
        game.same_ue[l].push_back(l2);
      } else {
        // Best-beam RSS acts as the interference proxy in both directions.
        if (inst.rss.at(p2.best_beam, pl.ue, p2.ap) > i_th) {
          game.in_interferers[l].push_back(l2);
        }
        if (inst.rss.at(pl.best_beam, p2.ue, pl.ap) > i_th) {
          game.out_interferers[l].push_back(l2);
        }
      }
    }
  }

  // utility_neighbors: the utility of l reads the whole active slate of
  // any AP hosting an in-interferer, the active count of l's own AP, and
  // the on/off state of same-UE players anywhere.
  for (int l = 0; l < n; ++l) {
    std::set<int> aps = {game.players[l].ap};
    for (int g : game.in_interferers[l]) aps.insert(game.players[g].ap);
    std::set<int> acc(game.same_ue[l].begin(), game.same_ue[l].end());
    for (int l2 = 0; l2 < n; ++l2) {
      if (l2 != l && aps.count(game.players[l2].ap)) acc.insert(l2);
    }
    game.utility_neighbors[l].assign(acc.begin(), acc.end());
  }

  // payoff_support: exact dual of utility_neighbors — the players whose
  // utility moves when l changes strategy. A colleague's out-interference
  // counts because l sits on that colleague's slate.
  for (int l = 0; l < n; ++l) {
    std::set<int> acc(game.same_ap[l].begin(), game.same_ap[l].end());
    acc.insert(game.same_ue[l].begin(), game.same_ue[l].end());
    acc.insert(game.out_interferers[l].begin(), game.out_interferers[l].end());
    for (int g : game.same_ap[l]) {
      acc.insert(game.out_interferers[g].begin(),
                 game.out_interferers[g].end());
    }
    acc.erase(l);
    game.payoff_support[l].assign(acc.begin(), acc.end());
  }

  // payoff_neighbors: utility neighborhoods of everyone l can affect.
  for (int l = 0; l < n; ++l) {
    std::set<int> acc;
    for (int src : game.payoff_support[l]) {
      acc.insert(src);
      acc.insert(game.utility_neighbors[src].begin(),
                 game.utility_neighbors[src].end());
    }
    acc.insert(game.utility_neighbors[l].begin(),
               game.utility_neighbors[l].end());
    acc.erase(l);
    game.payoff_neighbors[l].assign(acc.begin(), acc.end());
  }
  return game;
}

namespace {

// Shannon rate of active player l against a fixed set of concurrently
// transmitting players (one per interfering AP). Zero when a member
// shares l's UE.
double combo_rate(const Game& game, int l, const StrategyProfile& z,
                  const std::vector<int>& combo) {
  const Instance& inst = *game.inst;
  const Player& pl = game.players[l];
  double interference = 0.0;
  for (int m : combo) {
    const Player& pm = game.players[m];
    if (pm.ue == pl.ue) return 0.0;
    interference += inst.rss.at(z[m] - 1, pl.ue, pm.ap);
  }
  const double sinr = inst.rss.at(z[l] - 1, pl.ue, pl.ap) /
                      (inst.noise_power + interference);
  return inst.weights[pl.ue] * inst.bandwidth * std::log2(1.0 + sinr);
}

}  // namespace

double utility(const Game& game, int l, const StrategyProfile& z,
               std::uint64_t product_cap) {
  check_player_id(game, l);
  check_profile(game, z);
  if (z[l] == 0) return 0.0;

  // A UE cannot listen to two APs: sharing the UE with any active player
  // nullifies both rates, wherever that player sits.
  for (int l2 : game.same_ue[l]) {
    if (z[l2] > 0) return 0.0;
  }

  // Active players per AP, for the APs that interfere with l.
  int own_ap_active = 1;
  for (int l2 : game.same_ap[l]) {
    if (z[l2] > 0) ++own_ap_active;
  }
  std::vector<int> interfering_aps;
  for (int g : game.in_interferers[l]) {
    if (z[g] > 0) {
      const int ap = game.players[g].ap;
      if (std::find(interfering_aps.begin(), interfering_aps.end(), ap) ==
          interfering_aps.end()) {
        interfering_aps.push_back(ap);
      }
    }
  }
  std::sort(interfering_aps.begin(), interfering_aps.end());

  std::vector<std::vector<int>> slates;  // active players of each such AP
  std::uint64_t combos = 1;
  for (int ap : interfering_aps) {
    std::vector<int> slate;
    for (int l2 = 0; l2 < game.num_players(); ++l2) {
      if (z[l2] > 0 && game.players[l2].ap == ap) slate.push_back(l2);
    }
    combos *= slate.size();
    if (combos > product_cap) {
      throw CapExceeded("utility: interference product set exceeds cap " +
                        std::to_string(product_cap));
    }
    slates.push_back(std::move(slate));
  }

  // Average the rate over one active player per interfering AP, then
  // share the own AP's airtime equally.
  double sum = 0.0;
  std::vector<int> pick(slates.size(), 0);
  std::vector<int> combo(slates.size());
  while (true) {
    for (std::size_t i = 0; i < slates.size(); ++i) combo[i] = slates[i][pick[i]];
    sum += combo_rate(game, l, z, combo);
    std::size_t i = 0;
    for (; i < slates.size(); ++i) {
      if (++pick[i] < static_cast<int>(slates[i].size())) break;
      pick[i] = 0;
    }
    if (i == slates.size()) break;
  }
  const double avg = slates.empty() ? sum : sum / static_cast<double>(combos);
  return avg / static_cast<double>(own_ap_active);
}

double payoff(const Game& game, int l, const StrategyProfile& z,
              std::uint64_t product_cap) {
  check_player_id(game, l);
  double total = utility(game, l, z, product_cap);
  for (int l2 : game.payoff_support[l]) {
    total += utility(game, l2, z, product_cap);
  }
  return total;
}

double potential(const Game& game, const StrategyProfile& z,
                 std::uint64_t product_cap) {
  double total = 0.0;
  for (int l = 0; l < game.num_players(); ++l) {
    total += utility(game, l, z, product_cap);
  }
  return total;
}

bool profile_feasible(const Game& game, const StrategyProfile& z) {
  check_profile(game, z);
  std::vector<int> ap_active(game.inst->n_aps(), 0);
  std::vector<int> ue_active(game.inst->n_ues(), 0);
  for (int l = 0; l < game.num_players(); ++l) {
    if (z[l] == 0) continue;
    if (++ap_active[game.players[l].ap] > 1) return false;
    if (++ue_active[game.players[l].ue] > 1) return false;
  }
  return true;
}

Selection selection_from_profile(const Game& game, const StrategyProfile& z) {
  check_profile(game, z);
  Selection sel(game.inst->n_aps());
  for (int l = 0; l < game.num_players(); ++l) {
    if (z[l] == 0) continue;
    const Player& pl = game.players[l];
    if (sel[pl.ap]) {
      throw std::invalid_argument(
          "selection_from_profile: two active players on one AP");
    }
    sel[pl.ap] = BeamUe{z[l] - 1, pl.ue};
  }
  validate_selection(*game.inst, sel);  // rejects UE conflicts
  return sel;
}

std::vector<double> gibbs_distribution(const Game& game,
                                       const StrategyProfile& z, int l,
                                       double beta,
                                       std::uint64_t product_cap) {
  check_player_id(game, l);
  check_profile(game, z);
  if (beta < 0.0) {
    throw std::invalid_argument("gibbs_distribution: beta must be >= 0");
  }
  StrategyProfile trial = z;
  std::vector<double> score(game.n_strategies());
  for (int s = 0; s < game.n_strategies(); ++s) {
    trial[l] = s;
    score[s] = payoff(game, l, trial, product_cap);
  }
  const double top = *std::max_element(score.begin(), score.end());
  double norm = 0.0;
  for (double& v : score) {
    v = std::exp(beta * (v - top));  // max-subtracted softmax
    norm += v;
  }
  for (double& v : score) v /= norm;
  return score;
}

int gibbs_update(const Game& game, const StrategyProfile& z, int l,
                 double beta, std::mt19937_64& rng,
                 std::uint64_t product_cap) {
  const std::vector<double> dist = gibbs_distribution(game, z, l, beta,
                                                      product_cap);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double draw = unif(rng);
  double acc = 0.0;
  for (int s = 0; s < static_cast<int>(dist.size()); ++s) {
    acc += dist[s];
    if (draw < acc) return s;
  }
  return static_cast<int>(dist.size()) - 1;
}

std::vector<int> sample_independent_player_set(const Game& game,
                                               std::mt19937_64& rng) {
  std::vector<int> perm(game.num_players());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  std::vector<bool> blocked(game.num_players(), false);
  std::vector<int> chosen;
  for (int l : perm) {
    bool free = !blocked[l];
    if (free) {
      for (int l2 : game.payoff_neighbors[l]) {
        if (blocked[l2]) {
          free = false;
          break;
        }
      }
    }
    if (!free) continue;
    chosen.push_back(l);
    blocked[l] = true;
    for (int l2 : game.payoff_neighbors[l]) blocked[l2] = true;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

StrategyProfile feasibility_repair(const Game& game, StrategyProfile z,
                                   std::uint64_t product_cap) {
  check_profile(game, z);
  while (true) {
    // Lowest-index AP conflict first.
    int conflict_ap = -1;
    std::vector<int> ap_members;
    for (int a = 0; a < game.inst->n_aps() && conflict_ap < 0; ++a) {
      std::vector<int> active;
      for (int l = 0; l < game.num_players(); ++l) {
        if (z[l] > 0 && game.players[l].ap == a) active.push_back(l);
      }
      if (active.size() >= 2) {
        conflict_ap = a;
        ap_members = std::move(active);
      }
    }
    if (conflict_ap >= 0) {
      const double before = potential(game, z, product_cap);
      // Drop the member whose removal leaves the highest potential; the
      // first strict improvement keeps the lowest id on ties.
      int best_l = -1;
      double best_psi = -std::numeric_limits<double>::infinity();
      for (int l : ap_members) {
        StrategyProfile trial = z;
        trial[l] = 0;
        const double psi = potential(game, trial, product_cap);
        if (psi > best_psi) {
          best_psi = psi;
          best_l = l;
        }
      }
      z[best_l] = 0;
      if (best_psi + 1e-9 * std::max(1.0, std::abs(before)) < before) {
        throw std::logic_error(
            "feasibility_repair: potential decreased on an AP conflict");
      }
      continue;
    }

    // Then lowest-index UE conflict; conflicted utilities are already
    // zero, so dropping the lowest id never lowers the potential.
    int conflict_l = -1;
    for (int u = 0; u < game.inst->n_ues() && conflict_l < 0; ++u) {
      std::vector<int> active;
      for (int l = 0; l < game.num_players(); ++l) {
        if (z[l] > 0 && game.players[l].ue == u) active.push_back(l);
      }
      if (active.size() >= 2) conflict_l = active.front();
    }
    if (conflict_l >= 0) {
      z[conflict_l] = 0;
      continue;
    }
    break;
  }
  return z;
}

void LigTrace::write_csv(std::ostream& out) const {
  out << "iteration,psi,n_active,feasible\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << i + 1 << ',' << rows[i].psi << ',' << rows[i].n_active << ','
        << (rows[i].feasible ? 1 : 0) << '\n';
  }
}

LigResult lig_select(const Game& game, const LigParams& params) {
  if (params.max_iters < 1) {
    throw std::invalid_argument("lig_select: max_iters must be >= 1");
  }
  if (params.stop_epsilon &&
      (*params.stop_epsilon <= 0.0 || *params.stop_epsilon >= 1.0)) {
    throw std::invalid_argument("lig_select: stop_epsilon must be in (0,1)");
  }
  std::mt19937_64 rng(params.seed);
  StrategyProfile z(game.num_players(), 0);

  LigResult result;
  if (params.record_trace) result.trace.rows.reserve(params.max_iters);

  for (int iter = 1; iter <= params.max_iters; ++iter) {
    const double beta = params.beta.at(iter, params.max_iters);
    const std::vector<int> members = sample_independent_player_set(game, rng);

    // All members resample against the previous profile; their payoff
    // neighborhoods are disjoint, so the joint update is well defined.
    const StrategyProfile snapshot = z;
    for (int l : members) {
      if (params.best_response) {
        const auto dist =
            gibbs_distribution(game, snapshot, l, beta, params.product_cap);
        z[l] = static_cast<int>(
            std::max_element(dist.begin(), dist.end()) - dist.begin());
      } else {
        z[l] = gibbs_update(game, snapshot, l, beta, rng, params.product_cap);
      }
    }
    result.iterations_run = iter;

    if (params.record_trace) {
      int active = 0;
      for (int v : z) {
        if (v > 0) ++active;
      }
      result.trace.rows.push_back(
          {potential(game, z, params.product_cap), active,
           profile_feasible(game, z)});
    }

    if (params.stop_epsilon) {
      bool concentrated = true;
      for (int l = 0; l < game.num_players() && concentrated; ++l) {
        const auto dist =
            gibbs_distribution(game, z, l, beta, params.product_cap);
        concentrated =
            *std::max_element(dist.begin(), dist.end()) >=
            1.0 - *params.stop_epsilon;
      }
      if (concentrated) break;
    }
  }

  result.raw_profile = z;
  result.profile = feasibility_repair(game, z, params.product_cap);
  result.selection = selection_from_profile(game, result.profile);
  result.psi = potential(game, result.profile, params.product_cap);
  return result;
}

std::vector<StrategyProfile> enumerate_profiles(const Game& game,
                                                std::uint64_t cap) {
  std::uint64_t count = 1;
  for (int l = 0; l < game.num_players(); ++l) {
    count *= static_cast<std::uint64_t>(game.n_strategies());
    if (count > cap) {
      throw CapExceeded("strategy-space enumeration exceeds cap " +
                        std::to_string(cap));
    }
  }
  std::vector<StrategyProfile> out;
  out.reserve(count);
  StrategyProfile z(game.num_players(), 0);
  while (true) {
    out.push_back(z);
    int l = 0;
    for (; l < game.num_players(); ++l) {
      if (++z[l] < game.n_strategies()) break;
      z[l] = 0;
    }
    if (l == game.num_players()) break;
  }
  return out;
}

IterationBound eta_and_bound(const Game& game, double beta,
                             std::uint64_t state_cap) {
  if (beta < 0.0) {
    throw std::invalid_argument("eta_and_bound: beta must be >= 0");
  }
  const std::vector<StrategyProfile> states = enumerate_profiles(game,
                                                                 state_cap);
  const std::size_t n = states.size();
  const int n_strat = game.n_strategies();

  std::vector<double> psi(n);
  double psi_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    psi[i] = potential(game, states[i]);
    psi_max = std::max(psi_max, psi[i]);
  }
  const auto optimal = [&](std::size_t i) {
    return psi[i] >= psi_max - 1e-9;
  };

  IterationBound result;
  result.eta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (int l = 0; l < game.num_players(); ++l) {
      const auto dist = gibbs_distribution(game, states[i], l, beta);
      for (double p : dist) result.eta = std::min(result.eta, p);
    }
  }

  // Multi-source BFS from the optimum set over single-player moves.
  const auto state_index = [&](const StrategyProfile& z) {
    std::size_t idx = 0, mult = 1;
    for (int l = 0; l < game.num_players(); ++l) {
      idx += static_cast<std::size_t>(z[l]) * mult;
      mult *= n_strat;
    }
    return idx;
  };
  std::vector<int> dist(n, -1);
  std::queue<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (optimal(i)) {
      dist[i] = 0;
      queue.push(i);
    }
  }
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop();
    StrategyProfile z = states[i];
    for (int l = 0; l < game.num_players(); ++l) {
      const int old = z[l];
      for (int s = 0; s < n_strat; ++s) {
        if (s == old) continue;
        z[l] = s;
        const std::size_t j = state_index(z);
        if (dist[j] < 0) {
          dist[j] = dist[i] + 1;
          queue.push(j);
        }
      }
      z[l] = old;
    }
  }
  result.distance = *std::max_element(dist.begin(), dist.end());

  const StrategyProfile all_off(game.num_players(), 0);
  result.nu0 = optimal(state_index(all_off)) ? 1.0 : 0.0;
  result.bound = result.distance * (1.0 - result.nu0) /
                 std::pow(result.eta, result.distance);
  return result;
}

}  // namespace mmsel
