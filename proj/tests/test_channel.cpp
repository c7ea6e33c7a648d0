#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "mmsel/channel.hpp"
#include "mmsel/common.hpp"

using namespace mmsel;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Quiet channel: no shadowing, no blockage, so values are closed-form.
Scenario quiet_scenario() {
  Scenario sc = Scenario::preset(ScenarioKind::UMa);
  sc.shadowing_sigma_db = 0.0;
  sc.blockage_prob = 0.0;
  return sc;
}

}  // namespace

TEST_CASE("scenario presets carry the documented arena and propagation") {
  const Scenario inh = Scenario::preset(ScenarioKind::InH);
  CHECK(inh.arena_edge_m == 50.0);
  CHECK(inh.path_loss_exponent == 2.0);
  CHECK(inh.shadowing_sigma_db == 3.0);
  const Scenario umi = Scenario::preset(ScenarioKind::UMi);
  CHECK(umi.arena_edge_m == 100.0);
  CHECK(umi.path_loss_exponent == 2.1);
  const Scenario uma = Scenario::preset(ScenarioKind::UMa);
  CHECK(uma.arena_edge_m == 200.0);
  CHECK(uma.shadowing_sigma_db == 6.0);
  const Scenario rma = Scenario::preset(ScenarioKind::RMa, 73.0);
  CHECK(rma.arena_edge_m == 500.0);
  CHECK(rma.path_loss_exponent == 2.3);
  CHECK(rma.carrier_ghz == 73.0);
  CHECK_THROWS_AS(Scenario::preset(ScenarioKind::InH, 30.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(scenario_kind_from_string("suburban"),
                  std::invalid_argument);
}

TEST_CASE("mainlobe gain matches the 20x20-degree aperture approximation") {
  const double width_rad = 20.0 * kPi / 180.0;
  const double aperture = 4.0 * kPi / (width_rad * width_rad);
  CHECK(mainlobe_gain() == doctest::Approx(aperture).epsilon(1e-12));
  // Kraus-style sanity band: within a factor 2 of 41253 / (20 * 20).
  const double kraus = 41253.0 / 400.0;
  CHECK(mainlobe_gain() >= 0.5 * kraus);
  CHECK(mainlobe_gain() <= 2.0 * kraus);
  CHECK(sidelobe_gain() / mainlobe_gain() ==
        doctest::Approx(0.01).epsilon(1e-12));  // -20 dB floor
}

TEST_CASE("boresights tile 12 azimuth sectors by 3 elevation tiers") {
  CHECK(beam_boresight_deg(0)[0] == doctest::Approx(-165.0));
  CHECK(beam_boresight_deg(0)[1] == doctest::Approx(-50.0));
  CHECK(beam_boresight_deg(23)[0] == doctest::Approx(165.0));
  CHECK(beam_boresight_deg(23)[1] == doctest::Approx(-25.0));
  CHECK(beam_boresight_deg(35)[0] == doctest::Approx(165.0));
  CHECK(beam_boresight_deg(35)[1] == doctest::Approx(-6.0));
  CHECK_THROWS_AS(beam_boresight_deg(36), std::invalid_argument);
}

TEST_CASE("beam gain is flat on the mainlobe and floors outside it") {
  // Beam 30: azimuth sector 6 (center 15 deg), elevation tier 2 (-6).
  CHECK(beam_gain(30, 15.0, -6.0) == mainlobe_gain());
  CHECK(beam_gain(30, 24.9, -6.0) == mainlobe_gain());
  CHECK(beam_gain(30, 25.1, -6.0) == sidelobe_gain());
  CHECK(beam_gain(30, 15.0, -16.1) == sidelobe_gain());
  CHECK(beam_gain(30, -170.0, -6.0) == sidelobe_gain());
  // Azimuth wrap-around: sector 0's center sits at -165.
  CHECK(beam_gain(24, 179.0, -6.0) == sidelobe_gain());  // 14 deg away wrapped
  CHECK(beam_gain(24, -174.0, -6.0) == mainlobe_gain());
}

TEST_CASE("a boresight link reproduces the closed-form power") {
  const Scenario sc = quiet_scenario();
  Topology topo;
  topo.ap_pos = {{25.0, 25.0}};
  // Elevation hits tier 2 (-6 deg) exactly; azimuth 15 = sector 6 center.
  const double dxy = 4.5 / std::tan(6.0 * kPi / 180.0);
  topo.ue_pos = {{25.0 + dxy * std::cos(15.0 * kPi / 180.0),
                  25.0 + dxy * std::sin(15.0 * kPi / 180.0)}};
  std::mt19937_64 rng(701);
  const RssTensor rss = generate_rss(sc, topo, rng);

  const double d3 = std::sqrt(dxy * dxy + 4.5 * 4.5);
  const double lambda = 299792458.0 / (sc.carrier_ghz * 1e9);
  const double friis = std::pow(lambda / (4.0 * kPi), 2.0);
  const double expect = dbm_to_watts(sc.tx_power_dbm) * mainlobe_gain() *
                        friis * std::pow(d3, -sc.path_loss_exponent);
  CHECK(rss.at(30, 0, 0) == doctest::Approx(expect).epsilon(1e-9));
  // Any beam pointed elsewhere sees the same link 20 dB down.
  CHECK(rss.at(0, 0, 0) == doctest::Approx(expect * 0.01).epsilon(1e-9));
}

TEST_CASE("doubling the distance scales power by 2^(-gamma)") {
  const Scenario sc = quiet_scenario();  // gamma = 2.8
  Topology topo;
  topo.ap_pos = {{25.0, 25.0}};
  // Both UEs due east (azimuth 0: in the gap between sectors, so every
  // beam applies the same sidelobe gain) at 3-D distances 9 and 18 m.
  const double dxy1 = std::sqrt(9.0 * 9.0 - 4.5 * 4.5);
  const double dxy2 = std::sqrt(18.0 * 18.0 - 4.5 * 4.5);
  topo.ue_pos = {{25.0 + dxy1, 25.0}, {25.0 + dxy2, 25.0}};
  std::mt19937_64 rng(709);
  const RssTensor rss = generate_rss(sc, topo, rng);
  for (int b = 0; b < kBeamCount; ++b) {
    CHECK(rss.at(b, 0, 0) / rss.at(b, 1, 0) ==
          doctest::Approx(std::pow(2.0, sc.path_loss_exponent))
              .epsilon(1e-9));
  }
}

TEST_CASE("distances are clamped to one meter") {
  Scenario sc = quiet_scenario();
  sc.ap_height_m = 1.6;  // almost at UE height: raw distance can be < 1
  Topology topo;
  topo.ap_pos = {{25.0, 25.0}};
  topo.ue_pos = {{25.0, 25.0}, {25.05, 25.0}};
  std::mt19937_64 rng(719);
  const RssTensor rss = generate_rss(sc, topo, rng);
  for (int b = 0; b < kBeamCount; ++b) {
    CHECK(rss.at(b, 0, 0) == doctest::Approx(rss.at(b, 1, 0)).epsilon(1e-9));
  }
}

TEST_CASE("certain blockage costs exactly the configured loss") {
  Scenario clear = quiet_scenario();
  Scenario blocked = clear;
  blocked.blockage_prob = 1.0;
  Topology topo;
  topo.ap_pos = {{25.0, 25.0}};
  topo.ue_pos = {{40.0, 31.0}};
  std::mt19937_64 rng1(727), rng2(727);
  const RssTensor a = generate_rss(clear, topo, rng1);
  const RssTensor b = generate_rss(blocked, topo, rng2);
  for (int beam = 0; beam < kBeamCount; ++beam) {
    CHECK(b.at(beam, 0, 0) / a.at(beam, 0, 0) ==
          doctest::Approx(0.01).epsilon(1e-12));  // 20 dB
  }
}

TEST_CASE("more transmit power means pointwise more received power") {
  Scenario lo = Scenario::preset(ScenarioKind::UMi);
  lo.shadowing_sigma_db = 0.0;
  lo.blockage_prob = 0.0;
  Scenario hi = lo;
  hi.tx_power_dbm += 3.0;
  std::mt19937_64 rng(733);
  const Topology topo = make_grid_topology(lo, 4, 6, rng);
  std::mt19937_64 r1(1), r2(1);
  const RssTensor a = generate_rss(lo, topo, r1);
  const RssTensor b = generate_rss(hi, topo, r2);
  for (std::size_t i = 0; i < a.s.size(); ++i) {
    CHECK(b.s[i] > a.s[i]);
    CHECK(b.s[i] / a.s[i] ==
          doctest::Approx(std::pow(10.0, 0.3)).epsilon(1e-9));
  }
}

TEST_CASE("tensors are reproducible per seed under fading") {
  const Scenario sc = Scenario::preset(ScenarioKind::InH);  // fading on
  std::mt19937_64 rng(739);
  const Topology topo = make_grid_topology(sc, 4, 5, rng);
  std::mt19937_64 r1(42), r2(42), r3(43);
  const RssTensor a = generate_rss(sc, topo, r1);
  const RssTensor b = generate_rss(sc, topo, r2);
  const RssTensor c = generate_rss(sc, topo, r3);
  CHECK(a.s == b.s);
  CHECK(a.s != c.s);
  for (double v : a.s) CHECK(v > 0.0);
}

TEST_CASE("AP grids sit at cell centers in row-major order") {
  const Scenario sc = Scenario::preset(ScenarioKind::InH);  // 50 m arena
  std::mt19937_64 rng(743);
  const Topology topo = make_grid_topology(sc, 4, 3, rng);
  REQUIRE(topo.ap_pos.size() == 4);
  CHECK(topo.ap_pos[0] == std::array<double, 2>{12.5, 12.5});
  CHECK(topo.ap_pos[1] == std::array<double, 2>{37.5, 12.5});
  CHECK(topo.ap_pos[2] == std::array<double, 2>{12.5, 37.5});
  CHECK(topo.ap_pos[3] == std::array<double, 2>{37.5, 37.5});
  for (const auto& p : topo.ue_pos) {
    CHECK(p[0] >= 0.0);
    CHECK(p[0] <= 50.0);
    CHECK(p[1] >= 0.0);
    CHECK(p[1] <= 50.0);
  }
  CHECK_THROWS_AS(make_grid_topology(sc, 5, 3, rng), std::invalid_argument);
  CHECK_THROWS_AS(make_grid_topology(sc, 4, 0, rng), std::invalid_argument);
}

TEST_CASE("zero speed freezes the walk") {
  std::vector<std::array<double, 2>> pos = {{1.0, 2.0}, {3.0, 4.0}};
  const auto before = pos;
  std::mt19937_64 rng(751);
  random_walk_step(pos, 0.0, 50.0, rng);
  CHECK(pos == before);
}

TEST_CASE("walkers reflect off the walls and stay inside") {
  std::vector<std::array<double, 2>> pos = {{0.1, 0.1}, {49.9, 49.9}};
  std::mt19937_64 rng(757);
  for (int step = 0; step < 2000; ++step) {
    random_walk_step(pos, 3.0, 50.0, rng);
    for (const auto& p : pos) {
      CHECK(p[0] >= 0.0);
      CHECK(p[0] <= 50.0);
      CHECK(p[1] >= 0.0);
      CHECK(p[1] <= 50.0);
    }
  }
}

TEST_CASE("an unobstructed step moves exactly the speed") {
  std::vector<std::array<double, 2>> pos = {{500.0, 500.0}};
  std::mt19937_64 rng(761);
  random_walk_step(pos, 2.5, 1000.0, rng);
  const double dx = pos[0][0] - 500.0, dy = pos[0][1] - 500.0;
  CHECK(std::sqrt(dx * dx + dy * dy) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("the walk diffuses with the textbook mean-square displacement") {
  // In a huge arena (no reflections) the mean-square displacement after
  // T unit steps is T * speed^2 and the mean displacement vanishes.
  const int walkers = 400, steps = 10000;
  const double speed = 1.0, arena = 1e9;
  std::mt19937_64 rng(769);
  std::vector<std::array<double, 2>> pos(walkers,
                                         std::array<double, 2>{5e8, 5e8});
  const auto start = pos;
  for (int s = 0; s < steps; ++s) random_walk_step(pos, speed, arena, rng);
  double msd = 0.0, mean_dx = 0.0, mean_dy = 0.0;
  for (int w = 0; w < walkers; ++w) {
    const double dx = pos[w][0] - start[w][0];
    const double dy = pos[w][1] - start[w][1];
    msd += dx * dx + dy * dy;
    mean_dx += dx;
    mean_dy += dy;
  }
  msd /= walkers;
  mean_dx /= walkers;
  mean_dy /= walkers;
  CHECK(msd == doctest::Approx(steps * speed * speed).epsilon(0.10));
  CHECK(std::abs(mean_dx) < 20.0);  // ~6 sigma of the mean's spread
  CHECK(std::abs(mean_dy) < 20.0);
}
