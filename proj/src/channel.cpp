#include "mmsel/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "mmsel/common.hpp"

namespace mmsel {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSpeedOfLight = 299792458.0;  // m/s

double deg_to_rad(double deg) { return deg * kPi / 180.0; }

// Wraps an angle difference into [-180, 180).
double wrap_deg(double deg) {
  double d = std::fmod(deg + 180.0, 360.0);
  if (d < 0.0) d += 360.0;
  return d - 180.0;
}

}  // namespace

ScenarioKind scenario_kind_from_string(const std::string& name) {
  if (name == "InH") return ScenarioKind::InH;
  if (name == "UMi") return ScenarioKind::UMi;
  if (name == "UMa") return ScenarioKind::UMa;
  if (name == "RMa") return ScenarioKind::RMa;
  throw std::invalid_argument("unknown scenario: " + name);
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::InH:
      return "InH";
    case ScenarioKind::UMi:
      return "UMi";
    case ScenarioKind::UMa:
      return "UMa";
    case ScenarioKind::RMa:
      return "RMa";
  }
  return "?";
}

Scenario Scenario::preset(ScenarioKind kind, double carrier_ghz) {
  if (carrier_ghz != 28.0 && carrier_ghz != 60.0 && carrier_ghz != 73.0) {
    throw std::invalid_argument("carrier preset must be 28, 60 or 73 GHz");
  }
  Scenario sc;
  sc.kind = kind;
  sc.carrier_ghz = carrier_ghz;
  switch (kind) {
    case ScenarioKind::InH:
      sc.arena_edge_m = 50.0;
      sc.path_loss_exponent = 2.0;
      sc.shadowing_sigma_db = 3.0;
      break;
    case ScenarioKind::UMi:
      sc.arena_edge_m = 100.0;
      sc.path_loss_exponent = 2.1;
      sc.shadowing_sigma_db = 4.0;
      break;
    case ScenarioKind::UMa:
      sc.arena_edge_m = 200.0;
      sc.path_loss_exponent = 2.8;
      sc.shadowing_sigma_db = 6.0;
      break;
    case ScenarioKind::RMa:
      sc.arena_edge_m = 500.0;
      sc.path_loss_exponent = 2.3;
      sc.shadowing_sigma_db = 5.0;
      break;
  }
  return sc;
}

void Scenario::validate() const {
  if (!(arena_edge_m > 0.0) || !(carrier_ghz > 0.0) ||
      !(path_loss_exponent > 0.0)) {
    throw std::invalid_argument("Scenario: geometry/propagation invalid");
  }
  if (shadowing_sigma_db < 0.0 || blockage_prob < 0.0 ||
      blockage_prob > 1.0 || blockage_loss_db < 0.0) {
    throw std::invalid_argument("Scenario: fading parameters invalid");
  }
  if (!(ap_height_m > 0.0) || !(ue_height_m > 0.0)) {
    throw std::invalid_argument("Scenario: heights must be positive");
  }
}

double mainlobe_gain() {
  const double width = deg_to_rad(kBeamWidthDeg);
  return 4.0 * kPi / (width * width);
}

double sidelobe_gain() { return mainlobe_gain() * 1e-2; }  // -20 dB

std::array<double, 2> beam_boresight_deg(int beam) {
  if (beam < 0 || beam >= kBeamCount) {
    throw std::invalid_argument("beam index out of range");
  }
  const int sector = beam % kAzimuthSectors;
  const int tier = beam / kAzimuthSectors;
  const double az = -180.0 + (sector + 0.5) * (360.0 / kAzimuthSectors);
  return {az, kElevationCentersDeg[tier]};
}

double beam_gain(int beam, double azimuth_deg, double elevation_deg) {
  const auto [bore_az, bore_el] = beam_boresight_deg(beam);
  const bool in_az =
      std::abs(wrap_deg(azimuth_deg - bore_az)) <= kBeamWidthDeg / 2.0;
  const bool in_el = std::abs(elevation_deg - bore_el) <= kBeamWidthDeg / 2.0;
  return in_az && in_el ? mainlobe_gain() : sidelobe_gain();
}

Topology make_grid_topology(const Scenario& sc, int n_aps, int n_ues,
                            std::mt19937_64& rng) {
  sc.validate();
  const int side = static_cast<int>(std::lround(std::sqrt(n_aps)));
  if (n_aps <= 0 || side * side != n_aps) {
    throw std::invalid_argument("topology: AP count must be a perfect square");
  }
  if (n_ues <= 0) {
    throw std::invalid_argument("topology: UE count must be positive");
  }
  Topology topo;
  const double cell = sc.arena_edge_m / side;
  for (int gy = 0; gy < side; ++gy) {
    for (int gx = 0; gx < side; ++gx) {
      topo.ap_pos.push_back({(gx + 0.5) * cell, (gy + 0.5) * cell});
    }
  }
  std::uniform_real_distribution<double> unif(0.0, sc.arena_edge_m);
  for (int u = 0; u < n_ues; ++u) {
    const double x = unif(rng);
    const double y = unif(rng);
    topo.ue_pos.push_back({x, y});
  }
  return topo;
}

RssTensor generate_rss(const Scenario& sc, const Topology& topo,
                       std::mt19937_64& rng) {
  sc.validate();
  const int n_aps = static_cast<int>(topo.ap_pos.size());
  const int n_ues = static_cast<int>(topo.ue_pos.size());
  if (n_aps == 0 || n_ues == 0) {
    throw std::invalid_argument("generate_rss: empty topology");
  }
  const double tx_watts = dbm_to_watts(sc.tx_power_dbm);
  const double lambda = kSpeedOfLight / (sc.carrier_ghz * 1e9);
  const double friis_1m = std::pow(lambda / (4.0 * kPi), 2.0);
  const double height_diff = sc.ue_height_m - sc.ap_height_m;

  std::normal_distribution<double> shadow_db(0.0, sc.shadowing_sigma_db);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  RssTensor rss(kBeamCount, n_ues, n_aps, 0.0);
  for (int a = 0; a < n_aps; ++a) {
    for (int u = 0; u < n_ues; ++u) {
      const double dx = topo.ue_pos[u][0] - topo.ap_pos[a][0];
      const double dy = topo.ue_pos[u][1] - topo.ap_pos[a][1];
      const double d2 = std::sqrt(dx * dx + dy * dy);
      const double d3 =
          std::max(1.0, std::sqrt(d2 * d2 + height_diff * height_diff));
      const double azimuth = std::atan2(dy, dx) * 180.0 / kPi;
      const double elevation = std::atan2(height_diff, d2) * 180.0 / kPi;

      const double path = friis_1m * std::pow(d3, -sc.path_loss_exponent);
      // Per-link draws: shadowing first, then blockage, in (a, u) order.
      const double shadow =
          sc.shadowing_sigma_db > 0.0
              ? std::pow(10.0, shadow_db(rng) / 10.0)
              : 1.0;
      double block = 1.0;
      if (sc.blockage_prob > 0.0 && unif(rng) < sc.blockage_prob) {
        block = std::pow(10.0, -sc.blockage_loss_db / 10.0);
      }
      const double link = tx_watts * path * shadow * block;
      for (int b = 0; b < kBeamCount; ++b) {
        rss.at(b, u, a) = link * beam_gain(b, azimuth, elevation);
      }
    }
  }
  return rss;
}

void random_walk_step(std::vector<std::array<double, 2>>& ue_pos,
                      double speed_m, double arena_edge_m,
                      std::mt19937_64& rng) {
  if (speed_m < 0.0 || !(arena_edge_m > 0.0)) {
    throw std::invalid_argument("random_walk_step: bad speed or arena");
  }
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (auto& pos : ue_pos) {
    const double theta = angle(rng);
    pos[0] += speed_m * std::cos(theta);
    pos[1] += speed_m * std::sin(theta);
    for (int c = 0; c < 2; ++c) {  // reflect off the walls
      while (pos[c] < 0.0 || pos[c] > arena_edge_m) {
        if (pos[c] < 0.0) pos[c] = -pos[c];
        if (pos[c] > arena_edge_m) pos[c] = 2.0 * arena_edge_m - pos[c];
      }
    }
  }
}

}  // namespace mmsel
