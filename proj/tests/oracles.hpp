// Independent brute-force oracles used by the test suites. Everything
// here recomputes results from first principles (no calls into the code
// paths under test) so that agreement is meaningful.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "mmsel/common.hpp"
#include "mmsel/instance.hpp"
#include "mmsel/matching.hpp"

namespace oracles {

// Max-weight matching by enumerating every partial injective row->col
// assignment. Exponential; rows <= 6 only.
inline double brute_force_matching(const mmsel::WeightMatrix& m) {
  double best = 0.0;
  std::vector<int> col_of_row(m.rows, -1);
  std::vector<char> col_used(m.cols, 0);
  auto rec = [&](auto&& self, int row, double acc) -> void {
    if (row == m.rows) {
      best = std::max(best, acc);
      return;
    }
    self(self, row + 1, acc);  // leave this row unmatched
    for (int c = 0; c < m.cols; ++c) {
      if (col_used[c]) continue;
      col_used[c] = 1;
      self(self, row + 1, acc + m.at(row, c));
      col_used[c] = 0;
    }
  };
  rec(rec, 0, 0.0);
  return best;
}

// The per-link weight used by the scheduling objective for a fixed beam
// vector: interference is summed over ALL other APs, and links whose
// serving power falls below the threshold are worthless.
inline double naive_candidate_rate(const mmsel::Instance& inst,
                                   const std::vector<int>& b, int ap, int ue) {
  const double s = inst.rss.at(b[ap], ue, ap);
  if (s < inst.rss_threshold) return 0.0;
  double interference = 0.0;
  for (int a2 = 0; a2 < inst.n_aps(); ++a2) {
    if (a2 != ap) interference += inst.rss.at(b[a2], ue, a2);
  }
  const double sinr = s / (inst.noise_power + interference);
  return inst.weights[ue] * inst.bandwidth * std::log2(1.0 + sinr);
}

// Best total candidate weight over partial injective AP->UE assignments
// for one beam vector (matcher-free; exponential in n_aps).
inline double naive_best_assignment(const mmsel::Instance& inst,
                                    const std::vector<int>& b) {
  double best = 0.0;
  std::vector<char> ue_used(inst.n_ues(), 0);
  auto rec = [&](auto&& self, int ap, double acc) -> void {
    if (ap == inst.n_aps()) {
      best = std::max(best, acc);
      return;
    }
    self(self, ap + 1, acc);  // AP silent
    for (int u = 0; u < inst.n_ues(); ++u) {
      if (ue_used[u]) continue;
      ue_used[u] = 1;
      self(self, ap + 1, acc + naive_candidate_rate(inst, b, ap, u));
      ue_used[u] = 0;
    }
  };
  rec(rec, 0, 0.0);
  return best;
}

// Global optimum by the naive double loop: all beam vectors x all
// partial injective assignments.
inline double naive_optimum(const mmsel::Instance& inst) {
  std::vector<int> b(inst.n_aps(), 0);
  double best = 0.0;
  while (true) {
    best = std::max(best, naive_best_assignment(inst, b));
    int i = inst.n_aps() - 1;
    for (; i >= 0; --i) {
      if (++b[i] < inst.n_beams()) break;
      b[i] = 0;
    }
    if (i < 0) break;
  }
  return best;
}

// Random instance with every RSS entry drawn log-uniformly across a dBm
// band; unit weights, B = 1, N0 = 1 W unless reshaped by the caller.
inline mmsel::Instance random_instance(std::mt19937_64& rng, int n_aps,
                                       int n_ues, int n_beams,
                                       double lo_dbm = 25.0,
                                       double hi_dbm = 40.0) {
  mmsel::Instance inst;
  inst.rss = mmsel::RssTensor(n_beams, n_ues, n_aps);
  std::uniform_real_distribution<double> dbm(lo_dbm, hi_dbm);
  for (double& v : inst.rss.s) v = mmsel::dbm_to_watts(dbm(rng));
  inst.weights.assign(n_ues, 1.0);
  inst.noise_power = 1.0;
  inst.bandwidth = 1.0;
  inst.rss_threshold = 0.0;
  return inst;
}

/**
 * Random instance shaped so that every AP transmitting concurrently is
 * optimal: each AP has a loud serving band (its own slice of UEs) and
 * all cross-AP power sits 35-65 dB below it. Used where an algorithm
 * must actually find the global optimum with a visible gap.
 */
inline mmsel::Instance dominant_instance(std::mt19937_64& rng, int n_aps,
                                         int n_ues, int n_beams) {
  mmsel::Instance inst;
  inst.rss = mmsel::RssTensor(n_beams, n_ues, n_aps);
  std::uniform_real_distribution<double> serve_dbm(25.0, 40.0);
  std::uniform_real_distribution<double> cross_dbm(-25.0, -10.0);
  for (int b = 0; b < n_beams; ++b) {
    for (int u = 0; u < n_ues; ++u) {
      for (int a = 0; a < n_aps; ++a) {
        const bool home = (u % n_aps) == a;
        const double dbm = home ? serve_dbm(rng) : cross_dbm(rng);
        inst.rss.at(b, u, a) = mmsel::dbm_to_watts(dbm);
      }
    }
  }
  inst.weights.assign(n_ues, 1.0);
  inst.noise_power = 1.0;
  inst.bandwidth = 1.0;
  inst.rss_threshold = 0.0;
  return inst;
}

/**
 * Random instance whose global optimum is separated from every other
 * beam vector by a wide rate gap. AP a's privileged UE is UE a; its
 * serving powers across beams are a random permutation of fixed dBm
 * levels spaced 5 dB apart, so switching any AP off its best beam costs
 * about one bit/s/Hz. Everything else (cross leaks, other UEs) sits
 * 35-65 dB down. Finite-temperature annealers can only end on the exact
 * optimum reliably when such a gap exists.
 */
inline mmsel::Instance separated_instance(std::mt19937_64& rng, int n_aps,
                                          int n_ues, int n_beams) {
  if (n_ues < n_aps) throw std::invalid_argument("needs n_ues >= n_aps");
  mmsel::Instance inst;
  inst.rss = mmsel::RssTensor(n_beams, n_ues, n_aps);
  std::uniform_real_distribution<double> cross_dbm(-25.0, -10.0);
  for (double& v : inst.rss.s) v = mmsel::dbm_to_watts(cross_dbm(rng));
  for (int a = 0; a < n_aps; ++a) {
    std::vector<double> levels(n_beams);
    for (int b = 0; b < n_beams; ++b) levels[b] = 38.0 - 5.0 * b;
    std::shuffle(levels.begin(), levels.end(), rng);
    for (int b = 0; b < n_beams; ++b) {
      inst.rss.at(b, a, a) = mmsel::dbm_to_watts(levels[b]);
    }
  }
  inst.weights.assign(n_ues, 1.0);
  inst.noise_power = 1.0;
  inst.bandwidth = 1.0;
  inst.rss_threshold = 0.0;
  return inst;
}

// Chi-squared statistic for an observed histogram against uniform
// expected counts.
inline double chi_squared_uniform(const std::vector<int>& counts,
                                  int total_draws) {
  const double expected =
      static_cast<double>(total_draws) / static_cast<double>(counts.size());
  double stat = 0.0;
  for (int c : counts) {
    const double d = c - expected;
    stat += d * d / expected;
  }
  return stat;
}

}  // namespace oracles
