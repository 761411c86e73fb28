#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "macroblock/blocking.hpp"
#include "macroblock/error.hpp"
#include "macroblock/geometry.hpp"
#include "macroblock/placement.hpp"
#include "macroblock/rng.hpp"
#include "macroblock/sinr.hpp"
#include "macroblock/snr.hpp"

// Brute-force ground truth: draw actual blockage fields and test every path
// geometrically. Nothing here uses the analytic formulas.
namespace macroblock::oracle {

struct OracleReport {
  JointPmf pmf{};             // empirical P[B1 = b1, B2 = b2]
  JointPmf standard_error{};  // binomial standard error per entry
  double p_los = 0.0;         // empirical P[not both blocked]
  std::size_t trials = 0;
};

// Radius of an origin-centred disk containing every blockage that can touch
// any of the given paths.
inline double covering_radius(const std::vector<std::pair<Point2D, Point2D>>& paths,
                              double width) {
  double radius = 0.0;
  for (const auto& [tx, rx] : paths) radius = std::max(radius, norm(tx) + distance(tx, rx));
  return radius + width;
}

inline bool any_inside(const PathRegion& region, const std::vector<Point2D>& centers) {
  return std::any_of(centers.begin(), centers.end(),
                     [&](const Point2D& c) { return region.contains(c); });
}

inline OracleReport empirical_pair_pmf(Point2D tx, Point2D x1, Point2D x2, double width,
                                       double lambda_bl, std::size_t trials, RngStream& rng) {
  if (trials < 1) throw Error("trials must be positive");
  const PathRegion r1(tx, x1, width);
  const PathRegion r2(tx, x2, width);
  const double radius = covering_radius({{tx, x1}, {tx, x2}}, width);

  std::size_t counts[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t t = 0; t < trials; ++t) {
    const auto centers = sample_blockages(lambda_bl, radius, rng);
    ++counts[any_inside(r1, centers)][any_inside(r2, centers)];
  }

  OracleReport report;
  report.trials = trials;
  const double n = static_cast<double>(trials);
  for (int b1 = 0; b1 < 2; ++b1) {
    for (int b2 = 0; b2 < 2; ++b2) {
      const double p = static_cast<double>(counts[b1][b2]) / n;
      report.pmf[b1][b2] = p;
      report.standard_error[b1][b2] = std::sqrt(p * (1.0 - p) / n);
    }
  }
  report.p_los = 1.0 - report.pmf[1][1];
  return report;
}

// Combined SINR per trial. With `correlated` every path sees one shared
// blockage field; otherwise each path draws its own field, which removes all
// correlation between paths.
inline std::vector<double> empirical_sinr_samples(const NetworkRealization& realization, int order,
                                                  int interferers, Scheme scheme,
                                                  const ChannelParams& params, std::size_t trials,
                                                  RngStream& rng, bool correlated = true) {
  if (trials < 1) throw Error("trials must be positive");
  params.validate();
  const auto gains = gain_matrix(realization, order, interferers, params.alpha);
  const auto tx = transmitters(realization, interferers);
  const int columns = static_cast<int>(tx.size());

  std::vector<PathRegion> regions;  // index j * order + i
  std::vector<std::pair<Point2D, Point2D>> paths;
  for (int j = 0; j < columns; ++j) {
    for (int i = 0; i < order; ++i) {
      regions.emplace_back(tx[j], realization.base_stations[i], params.width);
      paths.emplace_back(tx[j], realization.base_stations[i]);
    }
  }
  const double shared_radius = covering_radius(paths, params.width);
  const double inv_snr0 = 1.0 / params.snr0();

  std::vector<double> samples;
  samples.reserve(trials);
  BlockingState state{0, order, columns, 1.0};
  for (std::size_t t = 0; t < trials; ++t) {
    state.bits = 0;
    if (correlated) {
      const auto centers = sample_blockages(params.lambda_bl, shared_radius, rng);
      for (std::size_t k = 0; k < regions.size(); ++k) {
        if (any_inside(regions[k], centers)) state.bits |= 1u << k;
      }
    } else {
      for (std::size_t k = 0; k < regions.size(); ++k) {
        const auto& [from, to] = paths[k];
        const auto centers =
            sample_blockages(params.lambda_bl, regions[k].length() + params.width, rng, from);
        if (any_inside(regions[k], centers)) state.bits |= 1u << k;
      }
    }
    double value = detail::state_sinr(state, gains, inv_snr0, 0);
    if (order == 2) value = combine(value, detail::state_sinr(state, gains, inv_snr0, 1), scheme);
    samples.push_back(value);
  }
  return samples;
}

}  // namespace macroblock::oracle
