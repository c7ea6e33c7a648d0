#pragma once

#include <cstdint>
#include <vector>

#include "mmsel/instance.hpp"
#include "mmsel/matching.hpp"

namespace mmsel {

/**
 * Enumerates all beam vectors in lexicographic order (AP 0 most
 * significant). Throws CapExceeded when n_beams^n_aps > cap.
 */
std::vector<BeamVector> enumerate_beam_vectors(const Instance& inst,
                                               std::uint64_t cap = 1000000);

struct ExhaustiveResult {
  BeamVector beam_vector;
  Selection selection;
  double rate = 0.0;
};

/**
 * Reference optimum: maximizes optimal_ue_assignment(b).total_rate over
 * every beam vector b. APs can implicitly stay silent through zero-rate
 * matching edges. Ties keep the lexicographically smallest beam vector.
 * Throws CapExceeded when the beam space exceeds `cap` vectors.
 */
ExhaustiveResult exhaustive_select(const Instance& inst,
                                   std::uint64_t cap = 1000000);

}  // namespace mmsel
