#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "macroblock/blocking.hpp"
#include "macroblock/placement.hpp"

using namespace macroblock;
using Catch::Approx;

namespace {

// Closed-form LOS probability of two paths with overlap v.
double los_closed_form(double lambda, double a1, double a2, double v) {
  return std::exp(-lambda * a1) + std::exp(-lambda * a2) - std::exp(-lambda * (a1 + a2 - v));
}

}  // namespace

TEST_CASE("nlos_prob") {
  CHECK(nlos_prob(0.0, 3.0) == 0.0);
  CHECK(nlos_prob(0.6, 0.0) == 0.0);
  CHECK(nlos_prob(0.6, 0.8) == Approx(0.38121660819385916).epsilon(1e-14));
  CHECK_THROWS_AS(nlos_prob(-0.1, 1.0), Error);
  CHECK_THROWS_AS(nlos_prob(0.1, -1.0), Error);
}

TEST_CASE("joint_pmf") {
  SECTION("independence") {
    const auto pmf = joint_pmf(0.3, 0.4, 0.7, 0.6, 0.0);
    CHECK(pmf[0][0] == Approx(0.42));
    CHECK(pmf[0][1] == Approx(0.28));
    CHECK(pmf[1][0] == Approx(0.18));
    CHECK(pmf[1][1] == Approx(0.12));
  }
  SECTION("perfect correlation") {
    const auto pmf = joint_pmf(0.5, 0.5, 0.5, 0.5, 1.0);
    CHECK(pmf[0][0] == Approx(0.5));
    CHECK(pmf[0][1] == Approx(0.0).margin(1e-15));
    CHECK(pmf[1][0] == Approx(0.0).margin(1e-15));
    CHECK(pmf[1][1] == Approx(0.5));
  }
  SECTION("partial correlation, h = sqrt(0.0504)") {
    const auto pmf = joint_pmf(0.3, 0.4, 0.7, 0.6, 0.5);
    CHECK(pmf[1][1] == Approx(0.23224972160321822).epsilon(1e-14));
    CHECK(pmf[0][0] == Approx(0.5322497216032183).epsilon(1e-14));
    CHECK(pmf[0][1] == Approx(0.16775027839678175).epsilon(1e-14));
    CHECK(pmf[1][0] == Approx(0.06775027839678176).epsilon(1e-14));
  }
  SECTION("incoherent correlation is rejected") {
    CHECK_THROWS_WITH(joint_pmf(0.1, 0.9, 0.9, 0.1, 1.0), "incoherent correlation");
    CHECK_THROWS_AS(joint_pmf(0.3, 0.4, 0.6, 0.6, 0.0), Error);
  }
}

TEST_CASE("pair_stats special geometries") {
  const Point2D o{0, 0};
  SECTION("no blockages") {
    const auto s = pair_stats(o, {1, 0}, {0, 2}, 0.8, 0.0);
    CHECK(s.p1 == 0.0);
    CHECK(s.p2 == 0.0);
    CHECK(s.joint[0][0] == 1.0);
    CHECK(s.rho == 0.0);
  }
  SECTION("opposite base stations block independently") {
    const auto s = pair_stats(o, {1.2, 0}, {-2.0, 0}, 0.8, 0.6);
    CHECK(s.v == Approx(0.0).margin(1e-15));
    CHECK(s.joint[0][0] == Approx(s.q1 * s.q2).epsilon(1e-14));
    CHECK(s.rho == Approx(0.0).margin(1e-14));
  }
  SECTION("identical base stations are perfectly correlated") {
    const auto s = pair_stats(o, {1, 1}, {1, 1}, 0.8, 0.6);
    CHECK(s.v == Approx(s.a1).epsilon(1e-13));
    CHECK(s.joint[0][0] == Approx(s.q1).epsilon(1e-13));
    CHECK(s.rho == Approx(1.0).epsilon(1e-12));
  }
  SECTION("translation to another transmitter") {
    const auto s0 = pair_stats(o, {1, 0}, {0, 1.5}, 0.6, 0.4);
    const Point2D d{3, -2};
    const auto s1 = pair_stats(d, Point2D{1, 0} + d, Point2D{0, 1.5} + d, 0.6, 0.4);
    CHECK(s1.rho == Approx(s0.rho).epsilon(1e-10));
    CHECK(s1.v == Approx(s0.v).epsilon(1e-10));
  }
  CHECK_THROWS_WITH(pair_stats(o, o, {1, 0}, 0.8, 0.6), "zero-length path");
}

TEST_CASE("los_probability") {
  const Point2D o{0, 0};
  const auto none = pair_stats(o, {1, 0}, {0, 2}, 0.8, 0.0);
  for (int n : {1, 2}) {
    for (bool c : {true, false}) CHECK(los_probability(none, n, c) == 1.0);
  }

  const auto opposite = pair_stats(o, {1, 0}, {-1.5, 0}, 0.8, 0.6);
  CHECK(los_probability(opposite, 2, true) ==
        Approx(opposite.q1 + opposite.q2 - opposite.q1 * opposite.q2).epsilon(1e-14));

  // lambda = 0.6, a1 = 0.8, a2 = 1.2, v = 0.3 via the pmf route.
  PairBlockingStats s;
  s.a1 = 0.8, s.a2 = 1.2, s.v = 0.3;
  s.p1 = nlos_prob(0.6, s.a1), s.q1 = 1 - s.p1;
  s.p2 = nlos_prob(0.6, s.a2), s.q2 = 1 - s.p2;
  s.rho = (std::exp(-0.6 * (s.a1 + s.a2 - s.v)) - s.q1 * s.q2) / s.h();
  CHECK(los_probability(s, 2, true) == Approx(0.7449407075930341).epsilon(1e-12));
  CHECK(los_probability(s, 1, true) == s.q1);
  CHECK(los_probability(s, 2, false) == Approx(1 - s.p1 * s.p2).epsilon(1e-15));
  CHECK_THROWS_AS(los_probability(s, 3, true), Error);
}

TEST_CASE("pair_stats invariants on random origin-anchored geometries") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> uw(0.2, 1.2), ul(0.0, 1.5);
  for (int k = 0; k < 10000; ++k) {
    RngStream rng(31, static_cast<std::uint64_t>(k));
    const auto bs = sample_base_stations(0.3, 2, rng);
    const double w = uw(gen), lambda = ul(gen);
    const auto s = pair_stats({0, 0}, bs[0], bs[1], w, lambda);

    CHECK(s.p1 + s.q1 == Approx(1.0).epsilon(1e-15));
    CHECK(s.v >= 0.0);
    CHECK(s.v <= std::min(s.a1, s.a2));
    CHECK(s.rho >= 0.0);
    double total = 0.0;
    for (auto& row : s.joint) {
      for (double e : row) {
        CHECK(e >= 0.0);
        CHECK(e <= 1.0);
        total += e;
      }
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
    CHECK(std::abs(s.joint[0][0] + s.joint[0][1] - s.q1) <= 1e-12);
    CHECK(std::abs(s.joint[0][0] + s.joint[1][0] - s.q2) <= 1e-12);
    CHECK(std::abs(s.joint[0][0] - std::exp(-lambda * (s.a1 + s.a2 - s.v))) <= 1e-12);

    const double corr = los_probability(s, 2, true);
    CHECK(std::abs(corr - los_closed_form(lambda, s.a1, s.a2, s.v)) <= 1e-12);
    CHECK(corr <= los_probability(s, 2, false));
    CHECK(corr >= los_probability(s, 1, true));
    CHECK(los_probability(s, 2, false) >= los_probability(s, 1, false));
  }
}
