#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mmsel/common.hpp"
#include "mmsel/instance.hpp"
#include "mmsel/matching.hpp"

namespace mmsel {

struct McmcParams {
  AnnealSchedule alpha = AnnealSchedule::log_anneal(1.0);
  int max_iters = 5000;
  std::uint64_t seed = 0;
  bool record_trace = true;
};

struct McmcTraceRow {
  BeamVector beam_vector;  // state after the iteration
  double rate = 0.0;       // matcher rate of that state
  bool accepted = false;   // whether the proposal was taken
  double alpha = 0.0;
};

struct McmcTrace {
  std::vector<McmcTraceRow> rows;

  // CSV columns: iteration,rate,accepted,alpha
  void write_csv(std::ostream& out) const;
};

struct McmcResult {
  BeamVector beam_vector;
  Selection selection;
  double rate = 0.0;
  McmcTrace trace;
};

/**
 * Metropolis search over beam vectors. Starts from a uniformly random
 * vector; each iteration re-draws the beam of one uniformly chosen AP
 * (the current beam may be re-drawn), evaluates the proposal with the
 * matching oracle, accepts improvements outright and worse proposals
 * with probability exp(alpha * (R_new - R_old)). The final state's
 * matching gives the returned selection.
 */
McmcResult mcmc_select(const Instance& inst, const McmcParams& params);

/**
 * Exact single-step transition matrix of the fixed-alpha chain over the
 * full beam space in enumerate_beam_vectors order. Off-diagonal mass
 * exists only between vectors differing at exactly one AP; the diagonal
 * absorbs all rejected proposals, so every row sums to 1. Throws
 * CapExceeded when the beam space exceeds `cap` states.
 */
std::vector<std::vector<double>> transition_matrix(const Instance& inst,
                                                   double alpha,
                                                   std::uint64_t cap = 4096);

/**
 * Stationary distribution of the fixed-alpha chain: a softmax
 * pi(b) proportional to exp(alpha * R_b), computed with max-subtraction
 * so large alpha cannot overflow. Order matches enumerate_beam_vectors.
 */
std::vector<double> stationary_distribution(const Instance& inst, double alpha,
                                            std::uint64_t cap = 4096);

}  // namespace mmsel
