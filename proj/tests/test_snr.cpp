#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "macroblock/distribution.hpp"
#include "macroblock/placement.hpp"
#include "macroblock/snr.hpp"

using namespace macroblock;
using Catch::Approx;

namespace {

NetworkRealization two_stations(Point2D x1, Point2D x2) {
  NetworkRealization r;
  r.base_stations = {x1, x2};
  return r;
}

double prob_at(const DiscreteDistribution& d, double value) {
  for (const auto& a : d.atoms()) {
    if (a.value == value) return a.probability;
  }
  return 0.0;
}

}  // namespace

TEST_CASE("DiscreteDistribution normalizes its atoms") {
  const DiscreteDistribution d({{4, 0.5}, {0, 0.25}, {1, 0.125}, {1, 0.125}, {7, 0.0}});
  REQUIRE(d.size() == 3);
  CHECK(d.atoms()[0] == Atom{0, 0.25});
  CHECK(d.atoms()[1] == Atom{1, 0.25});
  CHECK(d.atoms()[2] == Atom{4, 0.5});
  CHECK_THROWS_AS(DiscreteDistribution({{1, 0.5}}), Error);
  CHECK_THROWS_AS(DiscreteDistribution({{-1, 1.0}}), Error);
  CHECK_THROWS_AS(DiscreteDistribution({{1, 1.5}, {2, -0.5}}), Error);

  const auto s = DiscreteDistribution::from_samples({3, 1, 3, 3});
  REQUIRE(s.size() == 2);
  CHECK(s.atoms()[0] == Atom{1, 0.25});
  CHECK(s.atoms()[1] == Atom{3, 0.75});
}

TEST_CASE("outage is the right-continuous CDF at beta") {
  const DiscreteDistribution d({{0, 0.25}, {1, 0.25}, {4, 0.5}});
  CHECK(outage(d, 0.0) == 0.5);  // beta = 1 linear, atom at 1 included
  CHECK(outage(d, -100.0) == 0.25);
  CHECK(outage(d, 10.0) == 1.0);

  const DiscreteDistribution positive({{2, 0.5}, {5, 0.5}});
  CHECK(outage(positive, 0.0) == 0.0);   // below the smallest atom
  CHECK(outage(positive, 20.0) == 1.0);  // above the largest

  const std::vector<double> grid{-1, 0, 1, 2, 4, 9};
  const auto v = d.cdf_on(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(v[i] == d.cdf(grid[i]));
}

TEST_CASE("snr_distribution with no blockages is a single atom") {
  const auto r = two_stations({1, 0}, {0, 2});
  const ChannelParams params{3.0, 15.0, 0.8, 0.0};
  const auto d = snr_distribution(r, 2, Scheme::diversity, params, true);
  REQUIRE(d.size() == 1);
  CHECK(d.atoms()[0].value == Approx(params.snr0() * (1.0 + 0.125)));
  CHECK(d.atoms()[0].probability == 1.0);

  const auto n1 = snr_distribution(r, 1, Scheme::selection, params, true);
  REQUIRE(n1.size() == 1);
  CHECK(n1.atoms()[0].value == Approx(params.snr0()));
}

TEST_CASE("snr_distribution atoms follow the blocking pmf") {
  const Point2D x1{1, 0}, x2{0.9, 0.9};
  const auto r = two_stations(x1, x2);
  const ChannelParams params{3.0, 15.0, 0.8, 0.6};
  const double snr0 = params.snr0();
  const double o1 = std::pow(1.0, -3.0), o2 = std::pow(norm(x2), -3.0);
  const auto stats = pair_stats({0, 0}, x1, x2, 0.8, 0.6);
  const double h = stats.h();

  SECTION("diversity") {
    const auto d = snr_distribution(r, 2, Scheme::diversity, params, true);
    CHECK(prob_at(d, 0.0) == Approx(stats.p1 * stats.p2 + stats.rho * h));
    CHECK(prob_at(d, snr0 * o2) == Approx(stats.p1 * stats.q2 - stats.rho * h));
    CHECK(prob_at(d, snr0 * o1) == Approx(stats.q1 * stats.p2 - stats.rho * h));
    CHECK(prob_at(d, snr0 * (o1 + o2)) == Approx(stats.q1 * stats.q2 + stats.rho * h));

    // Piecewise CDF breakpoints: p1p2 + rho h -> p1 -> p1 + q1 p2 - rho h -> 1.
    CHECK(std::abs(d.cdf(0.0) - (stats.p1 * stats.p2 + stats.rho * h)) <= 1e-12);
    CHECK(std::abs(d.cdf(snr0 * o2) - stats.p1) <= 1e-12);
    CHECK(std::abs(d.cdf(snr0 * o1) - (stats.p1 + stats.q1 * stats.p2 - stats.rho * h)) <= 1e-12);
    CHECK(std::abs(d.cdf(snr0 * (o1 + o2)) - 1.0) <= 1e-12);
  }
  SECTION("selection") {
    const auto d = snr_distribution(r, 2, Scheme::selection, params, true);
    CHECK(d.size() == 3);
    CHECK(std::abs(d.cdf(0.0) - (stats.p1 * stats.p2 + stats.rho * h)) <= 1e-12);
    // Plateau p1 on [Omega_2, Omega_1).
    CHECK(std::abs(d.cdf(snr0 * o2) - stats.p1) <= 1e-12);
    CHECK(std::abs(d.cdf(0.5 * snr0 * (o1 + o2)) - stats.p1) <= 1e-12);
    CHECK(d.cdf(snr0 * o1) == 1.0);
  }
  SECTION("independent blocking uses the product pmf") {
    const auto d = snr_distribution(r, 2, Scheme::diversity, params, false);
    CHECK(prob_at(d, 0.0) == Approx(stats.p1 * stats.p2).epsilon(1e-14));
    CHECK(prob_at(d, snr0 * (o1 + o2)) == Approx(stats.q1 * stats.q2).epsilon(1e-14));
  }
  SECTION("first order") {
    const auto d = snr_distribution(r, 1, Scheme::diversity, params, true);
    CHECK(prob_at(d, 0.0) == Approx(stats.p1));
    CHECK(prob_at(d, snr0 * o1) == Approx(stats.q1));
  }
}

TEST_CASE("selection with p1 = p2 = 0.5 and no correlation") {
  // Opposite stations give v = 0, hence rho = 0. Distances differ by 1e-6 so
  // the two branch atoms stay distinct while p1 and p2 are 0.5 to ~1e-6.
  const double w = 0.8, dist = 1.5;
  const double lambda = std::log(2.0) / (w * dist);
  const auto r = two_stations({dist, 0}, {-dist * (1 + 1e-6), 0});
  const ChannelParams params{3.0, 15.0, w, lambda};
  const auto d = snr_distribution(r, 2, Scheme::selection, params, true);
  REQUIRE(d.size() == 3);
  CHECK(d.atoms()[0].probability == Approx(0.25).margin(1e-5));
  CHECK(d.atoms()[1].probability == Approx(0.25).margin(1e-5));
  CHECK(d.atoms()[2].probability == Approx(0.5).margin(1e-5));
  CHECK(d.atoms()[2].value == Approx(params.snr0() * std::pow(dist, -3.0)).epsilon(1e-14));
}

TEST_CASE("selection CDF dominates diversity CDF") {
  for (std::uint64_t i = 0; i < 500; ++i) {
    RngStream rng(3, i);
    NetworkRealization r;
    r.base_stations = sample_base_stations(0.3, 2, rng);
    const ChannelParams params{3.0, 15.0, 0.8, 0.6};
    for (bool corr : {true, false}) {
      const auto sel = snr_distribution(r, 2, Scheme::selection, params, corr);
      const auto div = snr_distribution(r, 2, Scheme::diversity, params, corr);
      for (const auto& a : div.atoms()) {
        CHECK(sel.cdf(a.value) >= div.cdf(a.value) - 1e-12);
      }
      for (const auto& a : sel.atoms()) {
        CHECK(sel.cdf(a.value) >= div.cdf(a.value) - 1e-12);
      }
    }
  }
}

TEST_CASE("equidistant base stations merge atoms") {
  const auto r = two_stations({1, 0}, {0, 1});
  const ChannelParams params{3.0, 15.0, 0.8, 0.6};
  const auto d = snr_distribution(r, 2, Scheme::selection, params, true);
  CHECK(d.size() == 2);
  double total = 0.0;
  for (const auto& a : d.atoms()) total += a.probability;
  CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("snr_distribution validates input") {
  NetworkRealization r;
  r.base_stations = {{1, 0}};
  const ChannelParams params{3.0, 15.0, 0.8, 0.6};
  CHECK_THROWS_AS(snr_distribution(r, 2, Scheme::diversity, params, true), Error);
  CHECK_THROWS_AS(snr_distribution(r, 3, Scheme::diversity, params, true), Error);
  CHECK_NOTHROW(snr_distribution(r, 1, Scheme::diversity, params, true));
}
