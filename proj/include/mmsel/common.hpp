#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mmsel {

// Thrown when an enumeration-based operation would exceed its configured
// cap (beam-vector enumeration, strategy-space enumeration, utility
// product sets). Never silently truncates.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Internal computations use linear watts; file formats carry dBm.
inline double dbm_to_watts(double dbm) {
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

inline double watts_to_dbm(double watts) {
  return 10.0 * std::log10(watts) + 30.0;
}

/**
 * Inverse-temperature schedule for the annealed stochastic searches. The
 * logarithmic schedule value_i = v0 * ln(1 + i) is the annealing default;
 * linear and constant schedules exist for diagnostics. Every schedule is
 * non-decreasing in the iteration index.
 */
struct AnnealSchedule {
  enum class Kind { Constant, Linear, Log };
  Kind kind = Kind::Log;
  double v0 = 1.0;  // Constant value, Linear start, or Log multiplier
  double v1 = 0.0;  // Linear end (unused otherwise)

  static AnnealSchedule constant(double v) { return {Kind::Constant, v, v}; }
  static AnnealSchedule linear(double from, double to) {
    return {Kind::Linear, from, to};
  }
  static AnnealSchedule log_anneal(double v0) { return {Kind::Log, v0, 0.0}; }

  // Value used at iteration `iter` in 1..max_iters.
  double at(int iter, int max_iters) const {
    if (iter < 1) {
      throw std::invalid_argument("AnnealSchedule: iter must be >= 1");
    }
    switch (kind) {
      case Kind::Constant:
        return v0;
      case Kind::Linear:
        return v0 + (v1 - v0) * (static_cast<double>(iter) / max_iters);
      case Kind::Log:
        return v0 * std::log1p(static_cast<double>(iter));
    }
    return v0;
  }
};

}  // namespace mmsel
