#include "mmsel/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace mmsel {

namespace {

// Per-pair best beams, lowest index on ties: best[a][u].
std::vector<std::vector<int>> best_beams(const Instance& inst) {
  std::vector<std::vector<int>> best(inst.n_aps(),
                                     std::vector<int>(inst.n_ues(), 0));
  for (int a = 0; a < inst.n_aps(); ++a) {
    for (int u = 0; u < inst.n_ues(); ++u) {
      for (int b = 1; b < inst.n_beams(); ++b) {
        if (inst.rss.at(b, u, a) > inst.rss.at(best[a][u], u, a)) {
          best[a][u] = b;
        }
      }
    }
  }
  return best;
}

// Rate of candidate (ap, ue) on its best beam against the interference
// of the APs already assigned in `sel`.
double constructive_rate(const Instance& inst,
                         const std::vector<std::vector<int>>& best,
                         const Selection& sel, int ap, int ue) {
  double interference = 0.0;
  for (int a2 = 0; a2 < inst.n_aps(); ++a2) {
    if (a2 == ap || !sel[a2]) continue;
    interference += inst.rss.at(sel[a2]->beam, ue, a2);
  }
  const double serving = inst.rss.at(best[ap][ue], ue, ap);
  return inst.weights[ue] * inst.bandwidth *
         std::log2(1.0 + serving / (inst.noise_power + interference));
}

struct ConstructiveState {
  Selection sel;
  std::vector<bool> ap_done;
  std::vector<bool> ue_taken;
};

ConstructiveState fresh_state(const Instance& inst) {
  return {Selection(inst.n_aps()), std::vector<bool>(inst.n_aps(), false),
          std::vector<bool>(inst.n_ues(), false)};
}

// Assigns the rate-maximizing eligible UE to `ap`, or leaves it silent
// when every free UE is below threshold. Lowest UE index wins ties.
void assign_best_ue(const Instance& inst,
                    const std::vector<std::vector<int>>& best,
                    ConstructiveState& st, int ap) {
  int best_ue = -1;
  double best_rate = -std::numeric_limits<double>::infinity();
  for (int u = 0; u < inst.n_ues(); ++u) {
    if (st.ue_taken[u]) continue;
    if (inst.rss.at(best[ap][u], u, ap) < inst.rss_threshold) continue;
    const double r = constructive_rate(inst, best, st.sel, ap, u);
    if (r > best_rate) {
      best_rate = r;
      best_ue = u;
    }
  }
  st.ap_done[ap] = true;
  if (best_ue >= 0) {
    st.sel[ap] = BeamUe{best[ap][best_ue], best_ue};
    st.ue_taken[best_ue] = true;
  }
}

}  // namespace

Selection ngub1(const Instance& inst, const GreedyParams& params,
                std::vector<double>* round_rates) {
  inst.validate();
  const auto best = best_beams(inst);
  const int rounds =
      params.improvement_rounds < 0 ? 3 * inst.n_aps()
                                    : params.improvement_rounds;

  // Phase 1: joint (AP, UE) argmax against the already-assigned APs.
  ConstructiveState st = fresh_state(inst);
  const int steps = std::min(inst.n_aps(), inst.n_ues());
  for (int step = 0; step < steps; ++step) {
    int pick_ap = -1, pick_ue = -1;
    double pick_rate = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < inst.n_aps(); ++a) {
      if (st.ap_done[a]) continue;
      for (int u = 0; u < inst.n_ues(); ++u) {
        if (st.ue_taken[u]) continue;
        if (inst.rss.at(best[a][u], u, a) < inst.rss_threshold) continue;
        const double r = constructive_rate(inst, best, st.sel, a, u);
        // Strict improvement in (a, u) scan order keeps the lowest AP,
        // then lowest UE, on ties.
        if (r > pick_rate) {
          pick_rate = r;
          pick_ap = a;
          pick_ue = u;
        }
      }
    }
    if (pick_ap < 0) break;  // every remaining pair is below threshold
    st.sel[pick_ap] = BeamUe{best[pick_ap][pick_ue], pick_ue};
    st.ap_done[pick_ap] = true;
    st.ue_taken[pick_ue] = true;
  }

  if (round_rates) {
    round_rates->clear();
    round_rates->push_back(weighted_sum_rate(inst, st.sel));
  }

  // Phase 2: per-AP replacement with a free UE when the total improves.
  for (int round = 0; round < rounds; ++round) {
    for (int a = 0; a < inst.n_aps(); ++a) {
      const double current = weighted_sum_rate(inst, st.sel);
      double best_rate = current;
      int best_ue = -1;
      for (int u = 0; u < inst.n_ues(); ++u) {
        const bool is_current = st.sel[a] && st.sel[a]->ue == u;
        if ((st.ue_taken[u] && !is_current) || is_current) continue;
        if (inst.rss.at(best[a][u], u, a) < inst.rss_threshold) continue;
        Selection trial = st.sel;
        trial[a] = BeamUe{best[a][u], u};
        const double r = weighted_sum_rate(inst, trial);
        if (r > best_rate) {  // strict: keeps the current UE on ties
          best_rate = r;
          best_ue = u;
        }
      }
      if (best_ue >= 0) {
        if (st.sel[a]) st.ue_taken[st.sel[a]->ue] = false;
        st.sel[a] = BeamUe{best[a][best_ue], best_ue};
        st.ue_taken[best_ue] = true;
      }
    }
    if (round_rates) round_rates->push_back(weighted_sum_rate(inst, st.sel));
  }
  return st.sel;
}

Selection ngub2(const Instance& inst, const GreedyParams& params,
                std::vector<double>* pass_rates) {
  inst.validate();
  const auto best = best_beams(inst);
  const int passes = params.j_passes < 0
                         ? std::max(10, inst.n_aps() * inst.n_aps())
                         : params.j_passes;
  if (passes < 1) {
    throw std::invalid_argument("ngub2: j_passes must be >= 1");
  }
  const int steps = std::min(inst.n_aps(), inst.n_ues());
  if (params.forced_ap_order &&
      static_cast<int>(params.forced_ap_order->size()) < steps) {
    throw std::invalid_argument("ngub2: forced_ap_order too short");
  }

  std::mt19937_64 rng(params.seed);
  if (pass_rates) pass_rates->clear();

  Selection best_sel(inst.n_aps());
  double best_rate = -std::numeric_limits<double>::infinity();
  for (int pass = 0; pass < passes; ++pass) {
    ConstructiveState st = fresh_state(inst);
    for (int step = 0; step < steps; ++step) {
      int ap;
      if (params.forced_ap_order) {
        ap = (*params.forced_ap_order)[step];
        if (ap < 0 || ap >= inst.n_aps() || st.ap_done[ap]) {
          throw std::invalid_argument("ngub2: invalid forced_ap_order");
        }
      } else {
        std::vector<int> open;
        for (int a = 0; a < inst.n_aps(); ++a) {
          if (!st.ap_done[a]) open.push_back(a);
        }
        std::uniform_int_distribution<int> pick(
            0, static_cast<int>(open.size()) - 1);
        ap = open[pick(rng)];
      }
      assign_best_ue(inst, best, st, ap);
    }
    const double rate = weighted_sum_rate(inst, st.sel);
    if (pass_rates) pass_rates->push_back(rate);
    if (rate > best_rate) {  // strict: earliest best pass wins
      best_rate = rate;
      best_sel = st.sel;
    }
  }
  return best_sel;
}

}  // namespace mmsel
