#include "mmsel/mcmc.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "mmsel/common.hpp"
#include "mmsel/exhaustive.hpp"

namespace mmsel {

void McmcTrace::write_csv(std::ostream& out) const {
  out << "iteration,rate,accepted,alpha\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << i + 1 << ',' << rows[i].rate << ',' << (rows[i].accepted ? 1 : 0)
        << ',' << rows[i].alpha << '\n';
  }
}

namespace {

struct BeamVectorHash {
  std::size_t operator()(const BeamVector& b) const {
    std::size_t h = 1469598103934665603ull;  // FNV-1a
    for (int v : b) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b9;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

McmcResult mcmc_select(const Instance& inst, const McmcParams& params) {
  inst.validate();
  if (params.max_iters < 1) {
    throw std::invalid_argument("mcmc_select: max_iters must be >= 1");
  }
  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<int> beam_dist(0, inst.n_beams() - 1);
  std::uniform_int_distribution<int> ap_dist(0, inst.n_aps() - 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Matcher results are cached per beam vector; the chain revisits states
  // heavily once the temperature drops.
  std::unordered_map<BeamVector, double, BeamVectorHash> rate_cache;
  const auto rate_of = [&](const BeamVector& b) {
    auto it = rate_cache.find(b);
    if (it != rate_cache.end()) return it->second;
    const double r = optimal_ue_assignment(inst, b).total_rate;
    rate_cache.emplace(b, r);
    return r;
  };

  BeamVector current(inst.n_aps());
  for (int a = 0; a < inst.n_aps(); ++a) current[a] = beam_dist(rng);
  double current_rate = rate_of(current);

  McmcResult result;
  if (params.record_trace) result.trace.rows.reserve(params.max_iters);

  for (int iter = 1; iter <= params.max_iters; ++iter) {
    const double alpha = params.alpha.at(iter, params.max_iters);
    BeamVector proposal = current;
    proposal[ap_dist(rng)] = beam_dist(rng);
    const double proposal_rate = rate_of(proposal);

    bool accepted = false;
    if (proposal_rate > current_rate) {
      accepted = true;
    } else {
      // exp(alpha * delta) with delta <= 0 always lies in [0, 1].
      const double p = std::exp(alpha * (proposal_rate - current_rate));
      assert(p >= 0.0 && p <= 1.0);
      accepted = unif(rng) < p;
    }
    if (accepted) {
      current = std::move(proposal);
      current_rate = proposal_rate;
    }
    if (params.record_trace) {
      result.trace.rows.push_back({current, current_rate, accepted, alpha});
    }
  }

  result.beam_vector = current;
  result.rate = current_rate;
  result.selection = selection_from_assignment(
      current, optimal_ue_assignment(inst, current));
  return result;
}

std::vector<std::vector<double>> transition_matrix(const Instance& inst,
                                                   double alpha,
                                                   std::uint64_t cap) {
  if (alpha < 0.0) {
    throw std::invalid_argument("transition_matrix: alpha must be >= 0");
  }
  const std::vector<BeamVector> states = enumerate_beam_vectors(inst, cap);
  const std::size_t n = states.size();
  std::vector<double> rates(n);
  for (std::size_t i = 0; i < n; ++i) {
    rates[i] = optimal_ue_assignment(inst, states[i]).total_rate;
  }
  std::unordered_map<BeamVector, std::size_t, BeamVectorHash> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(states[i], i);

  // Proposal mass 1/(n_aps * n_beams) per single-AP redraw; rejected mass
  // and same-beam redraws accumulate on the diagonal.
  const double proposal_p =
      1.0 / (static_cast<double>(inst.n_aps()) * inst.n_beams());
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double off_diag = 0.0;
    for (int a = 0; a < inst.n_aps(); ++a) {
      for (int beam = 0; beam < inst.n_beams(); ++beam) {
        if (beam == states[i][a]) continue;
        BeamVector neighbor = states[i];
        neighbor[a] = beam;
        const std::size_t j = index.at(neighbor);
        const double delta = rates[j] - rates[i];
        const double accept = delta > 0.0 ? 1.0 : std::exp(alpha * delta);
        p[i][j] = proposal_p * accept;
        off_diag += p[i][j];
      }
    }
    p[i][i] = 1.0 - off_diag;
  }
  return p;
}

std::vector<double> stationary_distribution(const Instance& inst, double alpha,
                                            std::uint64_t cap) {
  if (alpha < 0.0) {
    throw std::invalid_argument("stationary_distribution: alpha must be >= 0");
  }
  const std::vector<BeamVector> states = enumerate_beam_vectors(inst, cap);
  std::vector<double> rates(states.size());
  double max_rate = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < states.size(); ++i) {
    rates[i] = optimal_ue_assignment(inst, states[i]).total_rate;
    max_rate = std::max(max_rate, rates[i]);
  }
  std::vector<double> pi(states.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    pi[i] = std::exp(alpha * (rates[i] - max_rate));
    norm += pi[i];
  }
  for (double& v : pi) v /= norm;
  return pi;
}

}  // namespace mmsel
