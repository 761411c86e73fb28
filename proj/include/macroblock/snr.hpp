#pragma once

#include <cmath>
#include <string_view>
#include <vector>

#include "macroblock/blocking.hpp"
#include "macroblock/distribution.hpp"
#include "macroblock/error.hpp"
#include "macroblock/placement.hpp"

namespace macroblock {

enum class Scheme { selection, diversity };

constexpr std::string_view to_string(Scheme s) {
  return s == Scheme::selection ? "selection" : "diversity";
}

struct ChannelParams {
  double alpha = 3.0;     // path-loss exponent
  double snr0_db = 15.0;  // SNR of an unblocked unit-distance link
  double width = 0.8;     // blockage width W
  double lambda_bl = 0.0;

  void validate() const {
    if (!(alpha > 0.0)) throw Error("path-loss exponent must be positive");
    if (!(width > 0.0)) throw Error("blockage width must be positive");
    if (!(lambda_bl >= 0.0)) throw Error("invalid blockage density");
    if (!std::isfinite(snr0_db)) throw Error("reference SNR must be finite");
  }
  double snr0() const { return db_to_linear(snr0_db); }
};

inline double path_gain(double dist, double alpha) {
  const double g = std::pow(dist, -alpha);
  if (!std::isfinite(g) || !(g > 0.0)) throw Error("path gain is not positive and finite");
  return g;
}

inline void check_order(int order) {
  if (order != 1 && order != 2) throw Error("macrodiversity order must be 1 or 2");
}

// Exact SNR distribution of one realization, averaged over blockage draws only.
inline DiscreteDistribution snr_distribution(const NetworkRealization& realization, int order,
                                             Scheme scheme, const ChannelParams& params,
                                             bool correlated) {
  check_order(order);
  params.validate();
  const auto& bs = realization.base_stations;
  if (bs.size() < static_cast<std::size_t>(order)) throw Error("need N base stations");
  const double snr0 = params.snr0();
  const Point2D tx = realization.source;
  const double omega1 = path_gain(distance(tx, bs[0]), params.alpha);

  if (order == 1) {
    const double p1 = nlos_prob(params.lambda_bl, params.width * distance(tx, bs[0]));
    const double q1 = std::exp(-params.lambda_bl * params.width * distance(tx, bs[0]));
    return DiscreteDistribution({{0.0, p1}, {snr0 * omega1, q1}});
  }

  const double omega2 = path_gain(distance(tx, bs[1]), params.alpha);
  PairBlockingStats stats = pair_stats(tx, bs[0], bs[1], params.width, params.lambda_bl);
  if (!correlated) stats = independent(stats);
  const auto& pmf = stats.joint;

  if (scheme == Scheme::diversity) {
    return DiscreteDistribution({{0.0, pmf[1][1]},
                                 {snr0 * omega2, pmf[1][0]},
                                 {snr0 * omega1, pmf[0][1]},
                                 {snr0 * (omega1 + omega2), pmf[0][0]}});
  }
  // Selection keeps the stronger branch, X_1 whenever it is LOS.
  return DiscreteDistribution(
      {{0.0, pmf[1][1]}, {snr0 * omega2, pmf[1][0]}, {snr0 * omega1, stats.q1}});
}

// P[value <= beta] with beta given in dB.
inline double outage(const DiscreteDistribution& dist, double beta_db) {
  return dist.cdf(db_to_linear(beta_db));
}

}  // namespace macroblock
