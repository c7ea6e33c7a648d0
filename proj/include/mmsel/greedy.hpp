#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mmsel/instance.hpp"

namespace mmsel {

struct GreedyParams {
  // Full improvement rounds over all APs after the constructive phase;
  // negative means the default 3 * n_aps.
  int improvement_rounds = -1;
  // Number of randomized passes for the best-of variant; negative means
  // the default max(10, n_aps^2).
  int j_passes = -1;
  std::uint64_t seed = 0;
  // Testing hook: fixes the AP visit order of each randomized pass
  // instead of drawing it.
  std::optional<std::vector<int>> forced_ap_order;
};

/**
 * Two-phase greedy selection. Phase 1 repeatedly picks the unassigned
 * (AP, UE) pair with the highest rate against the interference of the
 * APs assigned so far, every pair using its per-pair best beam; ties go
 * to the lowest AP then lowest UE index. Phase 2 sweeps the APs round-
 * robin and replaces an AP's UE with a free UE (keeping the current one
 * on ties) whenever that strictly raises the total weighted sum rate.
 * Pairs whose best-beam RSS falls below S_t are never assigned.
 *
 * If round_rates is given it receives the total rate after Phase 1 and
 * after each full Phase-2 round (a non-decreasing sequence).
 */
Selection ngub1(const Instance& inst, const GreedyParams& params = {},
                std::vector<double>* round_rates = nullptr);

/**
 * Best-of-J randomized greedy: each pass assigns uniformly random
 * unassigned APs in turn, giving each the rate-maximizing unassigned UE
 * (per-pair best beams, lowest UE index on ties), and the best pass by
 * weighted sum rate wins (earliest pass on ties). Passes draw from one
 * RNG stream, so a longer J extends a shorter one with the same seed.
 *
 * If pass_rates is given it receives each pass's achieved rate.
 */
Selection ngub2(const Instance& inst, const GreedyParams& params = {},
                std::vector<double>* pass_rates = nullptr);

}  // namespace mmsel
