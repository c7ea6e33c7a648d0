#include "mmsel/exhaustive.hpp"

#include <cmath>

#include "mmsel/common.hpp"

namespace mmsel {

namespace {

std::uint64_t beam_space_size(const Instance& inst, std::uint64_t cap) {
  std::uint64_t count = 1;
  for (int a = 0; a < inst.n_aps(); ++a) {
    count *= static_cast<std::uint64_t>(inst.n_beams());
    if (count > cap) {
      throw CapExceeded("beam-vector enumeration: n_beams^n_aps exceeds cap " +
                        std::to_string(cap));
    }
  }
  return count;
}

// Odometer step in lexicographic order; false once the space is exhausted.
bool next_beam_vector(BeamVector& b, int n_beams) {
  for (int a = static_cast<int>(b.size()) - 1; a >= 0; --a) {
    if (++b[a] < n_beams) return true;
    b[a] = 0;
  }
  return false;
}

}  // namespace

std::vector<BeamVector> enumerate_beam_vectors(const Instance& inst,
                                               std::uint64_t cap) {
  inst.validate();
  const std::uint64_t count = beam_space_size(inst, cap);
  std::vector<BeamVector> out;
  out.reserve(count);
  BeamVector b(inst.n_aps(), 0);
  do {
    out.push_back(b);
  } while (next_beam_vector(b, inst.n_beams()));
  return out;
}

ExhaustiveResult exhaustive_select(const Instance& inst, std::uint64_t cap) {
  inst.validate();
  beam_space_size(inst, cap);

  ExhaustiveResult best;
  bool have_best = false;
  BeamVector b(inst.n_aps(), 0);
  do {
    const UeAssignment ass = optimal_ue_assignment(inst, b);
    // Strict improvement in lexicographic enumeration order keeps the
    // lexicographically smallest beam vector among exact ties.
    if (!have_best || ass.total_rate > best.rate) {
      best.beam_vector = b;
      best.selection = selection_from_assignment(b, ass);
      best.rate = ass.total_rate;
      have_best = true;
    }
  } while (next_beam_vector(b, inst.n_beams()));
  return best;
}

}  // namespace mmsel
