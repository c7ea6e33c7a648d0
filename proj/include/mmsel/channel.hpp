#pragma once

#include <array>
#include <random>
#include <vector>

#include "mmsel/instance.hpp"

namespace mmsel {

enum class ScenarioKind { InH, UMi, UMa, RMa };

ScenarioKind scenario_kind_from_string(const std::string& name);
std::string to_string(ScenarioKind kind);

/**
 * Deployment scenario: a square arena with a path-loss exponent,
 * log-normal shadowing and random blockage. The four presets follow the
 * usual indoor-hotspot / urban-micro / urban-macro / rural-macro split.
 */
struct Scenario {
  ScenarioKind kind = ScenarioKind::InH;
  double arena_edge_m = 50.0;
  double path_loss_exponent = 2.0;
  double shadowing_sigma_db = 3.0;
  double blockage_prob = 0.1;
  double blockage_loss_db = 20.0;
  double carrier_ghz = 60.0;       // presets: 28, 60, 73
  double tx_power_dbm = 30.0;
  double ap_height_m = 6.0;
  double ue_height_m = 1.5;

  static Scenario preset(ScenarioKind kind, double carrier_ghz = 60.0);
  void validate() const;
};

// Beam grid: 12 azimuth sectors x 3 elevation tiers, each 20 x 20
// degrees of flat mainlobe over a -20 dB sidelobe floor.
inline constexpr int kAzimuthSectors = 12;
inline constexpr int kElevationTiers = 3;
inline constexpr int kBeamCount = kAzimuthSectors * kElevationTiers;
inline constexpr double kBeamWidthDeg = 20.0;
inline constexpr std::array<double, kElevationTiers> kElevationCentersDeg = {
    -50.0, -25.0, -6.0};

// Mainlobe gain of the 20x20-degree aperture (4*pi over its solid
// angle) and the -20 dB sidelobe floor.
double mainlobe_gain();
double sidelobe_gain();

// Boresight direction of a beam; azimuth in [-180, 180) degrees.
std::array<double, 2> beam_boresight_deg(int beam);

// Antenna gain of `beam` toward (azimuth, elevation) in degrees.
double beam_gain(int beam, double azimuth_deg, double elevation_deg);

/**
 * AP grid plus UE positions inside the arena. AP count must be a perfect
 * square (4, 9 or 16 in the presets); APs sit at the centers of a
 * sqrt(n) x sqrt(n) cell grid, UEs start uniformly at random.
 */
struct Topology {
  std::vector<std::array<double, 2>> ap_pos;
  std::vector<std::array<double, 2>> ue_pos;
};

Topology make_grid_topology(const Scenario& sc, int n_aps, int n_ues,
                            std::mt19937_64& rng);

/**
 * Slot RSS tensor for the current positions: transmit power times beam
 * gain times 1-meter-referenced power-law path loss, log-normal
 * shadowing and Bernoulli blockage per (UE, AP) link. Distances are
 * clamped to 1 m. Draws shadowing then blockage for each (ap, ue) pair
 * in row-major order, so equal seeds give equal tensors.
 */
RssTensor generate_rss(const Scenario& sc, const Topology& topo,
                       std::mt19937_64& rng);

/**
 * One random-walk step: every UE moves `speed` meters in a fresh
 * uniformly random direction and reflects off the arena walls.
 */
void random_walk_step(std::vector<std::array<double, 2>>& ue_pos,
                      double speed_m, double arena_edge_m,
                      std::mt19937_64& rng);

}  // namespace mmsel
