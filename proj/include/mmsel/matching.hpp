#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mmsel/instance.hpp"

namespace mmsel {

// Non-negative rectangular weight matrix for a bipartite matching problem.
struct WeightMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> w;  // row-major

  WeightMatrix() = default;
  WeightMatrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), w(static_cast<std::size_t>(r) * c, fill) {}

  double at(int r, int c) const { return w[static_cast<std::size_t>(r) * cols + c]; }
  double& at(int r, int c) { return w[static_cast<std::size_t>(r) * cols + c]; }

  void validate() const;
};

struct Matching {
  std::vector<std::pair<int, int>> pairs;  // (row, col), sorted by row
  double total_weight = 0.0;
};

/**
 * Maximum-weight bipartite matching via the Hungarian algorithm with row/
 * column potentials (O(n^3) on the zero-padded square matrix). Pairs whose
 * weight is zero are dropped from the result, so the matching need not be
 * perfect; with non-negative weights this never lowers the total. Fully
 * deterministic: equal-cost augmenting columns are broken toward the
 * lowest index.
 */
Matching max_weight_matching(const WeightMatrix& m);

/**
 * Rate of the candidate link (ap -> ue) when every AP transmits using the
 * beams in `b`:
 *
 *   w_ue * B * log2(1 + S_{b_a,ue,a} / (N0 + sum_{a' != a} S_{b_{a'},ue,a'}))
 *
 * Returns 0 when the serving RSS falls below the instance threshold S_t,
 * so such links are never worth matching.
 */
double candidate_link_rate(const Instance& inst, const BeamVector& b, int ap,
                           int ue);

struct UeAssignment {
  std::vector<std::optional<int>> ue_for_ap;  // one entry per AP
  double total_rate = 0.0;                    // sum of matched link rates
};

/**
 * Best UE-to-AP association for a fixed beam vector: builds the
 * candidate_link_rate weight matrix over (AP, UE) pairs and solves a
 * maximum-weight matching. APs whose best use is a zero-rate link are
 * left unassigned.
 */
UeAssignment optimal_ue_assignment(const Instance& inst, const BeamVector& b);

// Combines a beam vector with the matcher's output into a Selection.
Selection selection_from_assignment(const BeamVector& b,
                                    const UeAssignment& ass);

}  // namespace mmsel
