#include "mmsel/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmsel {

void WeightMatrix::validate() const {
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("WeightMatrix: dimensions must be positive");
  }
  if (w.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("WeightMatrix: data size does not match dims");
  }
  for (double v : w) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument(
          "WeightMatrix: weights must be finite and >= 0");
    }
  }
}

Matching max_weight_matching(const WeightMatrix& m) {
  m.validate();
  // Zero-padded square cost matrix; minimizing cost = -weight maximizes
  // weight, and the padding lets the matching drop useless rows/columns.
  const int n = std::max(m.rows, m.cols);
  std::vector<double> cost(static_cast<std::size_t>(n) * n, 0.0);
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      cost[static_cast<std::size_t>(r) * n + c] = -m.at(r, c);
    }
  }

  // Hungarian algorithm with potentials, shortest augmenting paths.
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur =
            cost[static_cast<std::size_t>(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        // Strict comparison: among equal reduced costs the lowest column
        // index wins, which keeps the result deterministic.
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Matching result;
  for (int j = 1; j <= n; ++j) {
    const int r = p[j] - 1;
    const int c = j - 1;
    if (r < m.rows && c < m.cols && m.at(r, c) > 0.0) {
      result.pairs.emplace_back(r, c);
      result.total_weight += m.at(r, c);
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  return result;
}

double candidate_link_rate(const Instance& inst, const BeamVector& b, int ap,
                           int ue) {
  if (ap < 0 || ap >= inst.n_aps() || ue < 0 || ue >= inst.n_ues()) {
    throw std::invalid_argument("candidate_link_rate: index out of range");
  }
  const double serving = inst.rss.at(b[ap], ue, ap);
  if (serving < inst.rss_threshold) return 0.0;
  double interference = 0.0;
  for (int a2 = 0; a2 < inst.n_aps(); ++a2) {
    if (a2 == ap) continue;
    interference += inst.rss.at(b[a2], ue, a2);
  }
  return inst.weights[ue] * inst.bandwidth *
         std::log2(1.0 + serving / (inst.noise_power + interference));
}

UeAssignment optimal_ue_assignment(const Instance& inst, const BeamVector& b) {
  validate_beam_vector(inst, b);
  WeightMatrix wm(inst.n_aps(), inst.n_ues());
  for (int a = 0; a < inst.n_aps(); ++a) {
    for (int u = 0; u < inst.n_ues(); ++u) {
      wm.at(a, u) = candidate_link_rate(inst, b, a, u);
    }
  }
  const Matching match = max_weight_matching(wm);
  UeAssignment ass;
  ass.ue_for_ap.assign(inst.n_aps(), std::nullopt);
  for (const auto& [a, u] : match.pairs) ass.ue_for_ap[a] = u;
  ass.total_rate = match.total_weight;
  return ass;
}

Selection selection_from_assignment(const BeamVector& b,
                                    const UeAssignment& ass) {
  if (b.size() != ass.ue_for_ap.size()) {
    throw std::invalid_argument("selection_from_assignment: size mismatch");
  }
  Selection sel(b.size());
  for (std::size_t a = 0; a < b.size(); ++a) {
    if (ass.ue_for_ap[a]) sel[a] = BeamUe{b[a], *ass.ue_for_ap[a]};
  }
  return sel;
}

}  // namespace mmsel
