#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mmsel {

/**
 * Received signal strength S_{b,u,a} for every (beam, UE, AP) triple of a
 * scheduling slot, in linear watts. Stored flattened row-major in
 * (beam, ue, ap) order.
 */
struct RssTensor {
  int n_beams = 0;
  int n_ues = 0;
  int n_aps = 0;
  std::vector<double> s;

  RssTensor() = default;
  RssTensor(int beams, int ues, int aps, double fill = 0.0);

  std::size_t index(int b, int u, int a) const {
    return (static_cast<std::size_t>(b) * n_ues + u) * n_aps + a;
  }
  double at(int b, int u, int a) const { return s[index(b, u, a)]; }
  double& at(int b, int u, int a) { return s[index(b, u, a)]; }

  // Throws std::invalid_argument on non-positive dimensions, a size
  // mismatch, or entries that are negative or non-finite.
  void validate() const;
};

/**
 * One scheduling instance: the RSS tensor, per-UE scheduling weights w_u,
 * noise power N0 (watts), bandwidth B (Hz), and the RSS threshold S_t
 * (watts) below which a link cannot carry data.
 */
struct Instance {
  RssTensor rss;
  std::vector<double> weights;
  double noise_power = 1.0;
  double bandwidth = 1.0;
  double rss_threshold = 0.0;

  int n_aps() const { return rss.n_aps; }
  int n_ues() const { return rss.n_ues; }
  int n_beams() const { return rss.n_beams; }

  void validate() const;
};

// Per-AP transmission choice: a (beam, UE) pair, or nothing (AP silent).
struct BeamUe {
  int beam = 0;
  int ue = 0;
  friend bool operator==(const BeamUe&, const BeamUe&) = default;
};

// One entry per AP; std::nullopt means the AP does not transmit.
using Selection = std::vector<std::optional<BeamUe>>;

using BeamVector = std::vector<int>;  // one beam index per AP
using UeVector = std::vector<int>;    // one UE index per AP, pairwise distinct

void validate_selection(const Instance& inst, const Selection& sel);
void validate_beam_vector(const Instance& inst, const BeamVector& b);
void validate_ue_vector(const Instance& inst, const UeVector& u);

// Builds the Selection in which AP a serves UE u[a] on beam b[a].
Selection selection_from_vectors(const BeamVector& b, const UeVector& u);

/**
 * Weighted sum rate of a selection:
 *
 *   R = sum_{active a} w_{u_a} * B * log2(1 + S_{b_a,u_a,a} /
 *         (N0 + sum_{active a' != a} S_{b_{a'},u_a,a'}))
 *
 * Silent APs contribute no rate and no interference. Validates the
 * selection first.
 */
double weighted_sum_rate(const Instance& inst, const Selection& sel);

/**
 * Weighted sum rate when every AP transmits: AP a serves UE u[a] on beam
 * b[a], with interference at each served UE from all other APs. Requires
 * n_ues >= n_aps and an injective u.
 */
double rate_given_vectors(const Instance& inst, const BeamVector& b,
                          const UeVector& u);

/**
 * Per-UE Shannon rates under a selection (un-weighted): entry u holds
 * B * log2(1 + SINR) for the UE's serving link, or 0 if the UE is not
 * served. Used for throughput accounting.
 */
std::vector<double> per_ue_rates(const Instance& inst, const Selection& sel);

/**
 * Jain's fairness index (sum x)^2 / (n * sum x^2) of a non-negative,
 * not-all-zero throughput vector. Lies in (0, 1]; equals 1 iff all
 * entries are equal.
 */
double jain_fairness_index(const std::vector<double>& x);

/**
 * JSON instance files carry powers in dBm:
 *   { "n_aps", "n_ues", "n_beams", "noise_dbm", "bandwidth_hz",
 *     "rss_threshold_dbm" (optional), "weights", "rss_dbm" }
 * with "rss_dbm" flattened row-major in (beam, ue, ap) order. A zero-watt
 * entry serializes as null (its dBm value is -infinity).
 */
Instance load_instance(std::istream& in);
Instance load_instance_file(const std::string& path);
void save_instance(const Instance& inst, std::ostream& out);
void save_instance_file(const Instance& inst, const std::string& path);

}  // namespace mmsel
