#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <set>

#include "doctest.h"
#include "mmsel/matching.hpp"
#include "oracles.hpp"

using namespace mmsel;

namespace {

WeightMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  WeightMatrix m(static_cast<int>(rows.size()),
                 static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
  return m;
}

}  // namespace

TEST_CASE("dominant diagonal is matched on the diagonal") {
  const WeightMatrix m =
      from_rows({{5, 1, 1}, {1, 5, 1}, {1, 1, 5}});
  const Matching res = max_weight_matching(m);
  CHECK(res.total_weight == doctest::Approx(15.0).epsilon(1e-12));
  REQUIRE(res.pairs.size() == 3);
  for (const auto& [r, c] : res.pairs) CHECK(r == c);
}

TEST_CASE("2x3 example picks the two 3-weight corners") {
  const WeightMatrix m = from_rows({{1, 2, 3}, {3, 2, 1}});
  const Matching res = max_weight_matching(m);
  CHECK(res.total_weight == doctest::Approx(6.0).epsilon(1e-12));
  REQUIRE(res.pairs.size() == 2);
  CHECK(res.pairs[0] == std::pair<int, int>(0, 2));
  CHECK(res.pairs[1] == std::pair<int, int>(1, 0));
}

TEST_CASE("all-equal matrix reaches min(rows, cols) times the weight") {
  const WeightMatrix m(3, 5, 2.5);
  CHECK(max_weight_matching(m).total_weight ==
        doctest::Approx(3 * 2.5).epsilon(1e-12));
}

TEST_CASE("matching equals brute force on 1000 random matrices") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> rows(1, 5), cols(1, 6);
  std::uniform_real_distribution<double> weight(0.0, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    WeightMatrix m(rows(rng), cols(rng));
    for (double& v : m.w) v = weight(rng);
    const Matching res = max_weight_matching(m);

    // Structurally a matching: no row or column reused.
    std::set<int> rs, cs;
    for (const auto& [r, c] : res.pairs) {
      CHECK(rs.insert(r).second);
      CHECK(cs.insert(c).second);
    }
    double recomputed = 0.0;
    for (const auto& [r, c] : res.pairs) recomputed += m.at(r, c);
    CHECK(res.total_weight == doctest::Approx(recomputed).epsilon(1e-12));

    CHECK(res.total_weight ==
          doctest::Approx(oracles::brute_force_matching(m)).epsilon(1e-12));
  }
}

TEST_CASE("scaling all weights scales the optimum by exactly that factor") {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> weight(0.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    WeightMatrix m(4, 5);
    for (double& v : m.w) v = weight(rng);
    WeightMatrix scaled = m;
    const double c = 3.25;
    for (double& v : scaled.w) v *= c;
    CHECK(max_weight_matching(scaled).total_weight ==
          doctest::Approx(c * max_weight_matching(m).total_weight)
              .epsilon(1e-12));
  }
}

TEST_CASE("matrix validation rejects negatives and non-finite entries") {
  WeightMatrix m(2, 2, 1.0);
  m.at(0, 1) = -0.5;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m.at(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

TEST_CASE("single AP picks the argmax UE") {
  std::mt19937_64 rng(107);
  const Instance inst = oracles::random_instance(rng, 1, 4, 2);
  const BeamVector b = {1};
  const UeAssignment res = optimal_ue_assignment(inst, b);
  int best_u = 0;
  for (int u = 1; u < 4; ++u) {
    if (inst.rss.at(1, u, 0) > inst.rss.at(1, best_u, 0)) best_u = u;
  }
  REQUIRE(res.ue_for_ap[0].has_value());
  CHECK(*res.ue_for_ap[0] == best_u);
}

TEST_CASE("assignment weight equals brute force over injective maps") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 200; ++trial) {
    const int n_aps = 2 + trial % 3;  // 2..4
    const int n_ues = n_aps + trial % 2;
    const Instance inst = oracles::random_instance(rng, n_aps, n_ues, 2);
    BeamVector b(n_aps);
    std::uniform_int_distribution<int> beam(0, 1);
    for (int& v : b) v = beam(rng);
    const UeAssignment res = optimal_ue_assignment(inst, b);
    CHECK(res.total_rate ==
          doctest::Approx(oracles::naive_best_assignment(inst, b))
              .epsilon(1e-9));
  }
}

TEST_CASE("a UE silent to every AP is never matched when spare UEs exist") {
  std::mt19937_64 rng(113);
  Instance inst = oracles::random_instance(rng, 2, 4, 2);
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a) inst.rss.at(b, 3, a) = 0.0;
  const UeAssignment res = optimal_ue_assignment(inst, {0, 1});
  for (const auto& ue : res.ue_for_ap) {
    if (ue) CHECK(*ue != 3);
  }
}

TEST_CASE("links below the usability threshold leave their AP silent") {
  Instance inst;
  inst.rss = RssTensor(1, 2, 2, 0.0);
  inst.rss.at(0, 0, 0) = 8.0;
  inst.rss.at(0, 1, 1) = 0.5;  // below threshold: unusable
  inst.weights = {1.0, 1.0};
  inst.rss_threshold = 1.0;
  const UeAssignment res = optimal_ue_assignment(inst, {0, 0});
  REQUIRE(res.ue_for_ap[0].has_value());
  CHECK(*res.ue_for_ap[0] == 0);
  CHECK_FALSE(res.ue_for_ap[1].has_value());
  const Selection sel = selection_from_assignment({0, 0}, res);
  CHECK(weighted_sum_rate(inst, sel) ==
        doctest::Approx(std::log2(9.0)).epsilon(1e-12));
}

TEST_CASE("candidate rates count interference from every other AP") {
  Instance inst;
  inst.rss = RssTensor(1, 2, 2, 0.0);
  inst.rss.at(0, 0, 0) = 6.0;
  inst.rss.at(0, 0, 1) = 2.0;  // cross power onto UE 0
  inst.rss.at(0, 1, 1) = 5.0;
  inst.weights = {1.0, 1.0};
  // SINR for (AP0 -> UE0) = 6 / (1 + 2), regardless of who AP1 serves.
  CHECK(candidate_link_rate(inst, {0, 0}, 0, 0) ==
        doctest::Approx(std::log2(3.0)).epsilon(1e-12));
}
