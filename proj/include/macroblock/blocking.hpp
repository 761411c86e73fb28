#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "macroblock/error.hpp"
#include "macroblock/geometry.hpp"

namespace macroblock {

// Joint pmf of the blocking indicators (B1, B2), indexed [b1][b2].
using JointPmf = std::array<std::array<double, 2>, 2>;

inline constexpr double pmf_coherence_tolerance = 1e-12;

// Blocking statistics for one transmitter against a pair of base stations.
struct PairBlockingStats {
  double a1 = 0.0;
  double a2 = 0.0;
  double v = 0.0;  // overlap of the two blockage regions
  double p1 = 0.0;
  double p2 = 0.0;
  double q1 = 1.0;
  double q2 = 1.0;
  double rho = 0.0;
  JointPmf joint{{{1.0, 0.0}, {0.0, 0.0}}};

  double h() const { return std::sqrt(p1 * p2 * q1 * q2); }
};

// Probability that a region of the given area holds at least one blockage.
inline double nlos_prob(double lambda_bl, double area) {
  if (!(lambda_bl >= 0.0) || !(area >= 0.0)) throw Error("nlos_prob: negative input");
  return -std::expm1(-lambda_bl * area);
}

inline JointPmf joint_pmf(double p1, double p2, double q1, double q2, double rho) {
  if (std::abs(p1 + q1 - 1.0) > pmf_coherence_tolerance ||
      std::abs(p2 + q2 - 1.0) > pmf_coherence_tolerance) {
    throw Error("joint_pmf: p_i + q_i must equal 1");
  }
  const double rh = rho * std::sqrt(p1 * p2 * q1 * q2);
  JointPmf pmf{{{q1 * q2 + rh, q1 * p2 - rh}, {p1 * q2 - rh, p1 * p2 + rh}}};
  for (auto& row : pmf) {
    for (auto& entry : row) {
      if (entry < -pmf_coherence_tolerance || entry > 1.0 + pmf_coherence_tolerance) {
        throw Error("incoherent correlation");
      }
      entry = std::clamp(entry, 0.0, 1.0);
    }
  }
  return pmf;
}

// Same marginals with the correlation removed.
inline PairBlockingStats independent(PairBlockingStats stats) {
  stats.rho = 0.0;
  stats.joint = joint_pmf(stats.p1, stats.p2, stats.q1, stats.q2, 0.0);
  return stats;
}

// Blocking statistics of the paths tx -> x1 and tx -> x2 under a blockage PPP
// of density lambda_bl with blockage width W.
inline PairBlockingStats pair_stats(Point2D tx, Point2D x1, Point2D x2, double width,
                                    double lambda_bl) {
  const ConvexPolygon r1 = path_rectangle(tx, x1, width);
  const ConvexPolygon r2 = path_rectangle(tx, x2, width);

  PairBlockingStats s;
  s.a1 = width * distance(tx, x1);
  s.a2 = width * distance(tx, x2);
  s.v = std::clamp(convex_intersection_area(r1, r2), 0.0, std::min(s.a1, s.a2));
  s.p1 = nlos_prob(lambda_bl, s.a1);
  s.p2 = nlos_prob(lambda_bl, s.a2);
  s.q1 = std::exp(-lambda_bl * s.a1);
  s.q2 = std::exp(-lambda_bl * s.a2);

  // P[both LOS] - q1*q2 = exp(-lambda*(a1 + a2 - v)) - q1*q2, written so it
  // stays nonnegative in floating point.
  const double excess = s.q1 * s.q2 * std::expm1(lambda_bl * s.v);
  const double h = s.h();
  // rho is 0/0 when either marginal is degenerate; the marginals then fix the pmf.
  s.rho = h > 0.0 ? excess / h : 0.0;
  s.joint = joint_pmf(s.p1, s.p2, s.q1, s.q2, s.rho);
  return s;
}

// Probability that at least one of the N serving paths is unblocked.
inline double los_probability(const PairBlockingStats& stats, int order, bool correlated) {
  if (order == 1) return stats.q1;
  if (order != 2) throw Error("macrodiversity order must be 1 or 2");
  const double both_blocked = stats.p1 * stats.p2 + (correlated ? stats.rho * stats.h() : 0.0);
  return 1.0 - both_blocked;
}

}  // namespace macroblock
