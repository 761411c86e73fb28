#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "macroblock/error.hpp"
#include "macroblock/geometry.hpp"
#include "macroblock/rng.hpp"

namespace macroblock {

// One sampled network geometry. The source transmitter is at the origin and
// base stations are sorted by distance to it.
struct NetworkRealization {
  Point2D source{};
  std::vector<Point2D> base_stations;
  std::vector<Point2D> interferers;
  double lambda_bs = 0.0;
  std::size_t interferer_count = 0;
};

inline void check_density(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error("invalid density");
}

// Inverse-transform step for the distance to the next-nearest point of a PPP
// given the previous one: solves u = 1 - exp(-lambda*pi*(r^2 - prev^2)) for r.
inline double next_ordered_distance(double previous, double u, double lambda) {
  check_density(lambda);
  return std::sqrt(-std::log1p(-u) / (lambda * std::numbers::pi) + previous * previous);
}

inline std::vector<double> sample_ordered_distances(double lambda, std::size_t count,
                                                    RngStream& rng) {
  check_density(lambda);
  if (count == 0) throw Error("count must be positive");
  std::vector<double> r(count);
  double previous = 0.0;
  for (auto& ri : r) {
    ri = next_ordered_distance(previous, rng.uniform(), lambda);
    previous = ri;
  }
  return r;
}

// Nearest `count` points of a PPP around the origin. Each base station
// consumes two uniforms in order (distance draw, then angle), so the first k
// stations do not depend on `count`.
inline std::vector<Point2D> sample_base_stations(double lambda, std::size_t count,
                                                 RngStream& rng) {
  check_density(lambda);
  if (count == 0) throw Error("count must be positive");
  std::vector<Point2D> stations;
  stations.reserve(count);
  double previous = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = next_ordered_distance(previous, rng.uniform(), lambda);
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    stations.push_back(polar_point(r, angle));
    previous = r;
  }
  return stations;
}

// Uniform point on the disk of the given radius about center.
inline Point2D sample_in_disk(Point2D center, double radius, RngStream& rng) {
  const double r = radius * std::sqrt(rng.uniform());
  const double angle = 2.0 * std::numbers::pi * rng.uniform();
  return center + polar_point(r, angle);
}

// Blockage centers of a PPP restricted to the disk of region_radius about center.
inline std::vector<Point2D> sample_blockages(double lambda_bl, double region_radius,
                                             RngStream& rng, Point2D center = {}) {
  if (!(lambda_bl >= 0.0) || !std::isfinite(lambda_bl)) throw Error("invalid blockage density");
  if (!(region_radius > 0.0)) throw Error("region radius must be positive");
  if (lambda_bl == 0.0) return {};
  const double mean = lambda_bl * std::numbers::pi * region_radius * region_radius;
  std::poisson_distribution<std::size_t> count_dist(mean);
  const std::size_t count = count_dist(rng.engine());
  std::vector<Point2D> centers;
  centers.reserve(count);
  for (std::size_t k = 0; k < count; ++k) centers.push_back(sample_in_disk(center, region_radius, rng));
  return centers;
}

// Average cell radius under perfect packing.
inline double cell_radius(double lambda_bs) {
  check_density(lambda_bs);
  return 1.0 / std::sqrt(lambda_bs * std::numbers::pi);
}

// Interferer j (1-based) sits uniformly in the cell-radius disk around
// X_{serving + j}, the j-th nearest base station not serving the source.
inline std::vector<Point2D> place_interferers(const NetworkRealization& realization,
                                              std::size_t serving, std::size_t count,
                                              double lambda_bs, RngStream& rng) {
  if (serving < 1 || serving > 2) throw Error("macrodiversity order must be 1 or 2");
  if (realization.base_stations.size() < serving + count) throw Error("need N+M base stations");
  const double radius = cell_radius(lambda_bs);
  std::vector<Point2D> interferers;
  interferers.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    interferers.push_back(sample_in_disk(realization.base_stations[serving + j], radius, rng));
  }
  return interferers;
}

}  // namespace macroblock
