#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "macroblock/blocking.hpp"
#include "macroblock/distribution.hpp"
#include "macroblock/error.hpp"
#include "macroblock/placement.hpp"
#include "macroblock/snr.hpp"

namespace macroblock {

// Largest number of blocking indicators enumerated exactly.
inline constexpr int max_state_bits = 24;

// One configuration of the blocking matrix: bit (j * order + i) is set when
// the path from transmitter j to base station i is blocked. Transmitter 0 is
// the source; 1..M are interferers.
struct BlockingState {
  std::uint32_t bits = 0;
  int order = 2;
  int transmitters = 1;
  double probability = 0.0;

  bool blocked(int station, int tx) const { return (bits >> (tx * order + station)) & 1u; }
};

// Path gains from every transmitter to every serving base station.
class GainMatrix {
 public:
  GainMatrix(int order, int transmitters)
      : order_(order), transmitters_(transmitters),
        gains_(static_cast<std::size_t>(order) * transmitters, 0.0) {}

  int order() const { return order_; }
  int transmitters() const { return transmitters_; }
  double operator()(int station, int tx) const { return gains_[index(station, tx)]; }
  double& operator()(int station, int tx) { return gains_[index(station, tx)]; }

 private:
  std::size_t index(int station, int tx) const {
    return static_cast<std::size_t>(station) * transmitters_ + tx;
  }
  int order_;
  int transmitters_;
  std::vector<double> gains_;
};

// Transmitter positions Y_0..Y_M; Y_0 is the source.
inline std::vector<Point2D> transmitters(const NetworkRealization& realization, int interferers) {
  if (interferers < 0 || realization.interferers.size() < static_cast<std::size_t>(interferers)) {
    throw Error("realization holds fewer interferers than requested");
  }
  std::vector<Point2D> tx{realization.source};
  tx.insert(tx.end(), realization.interferers.begin(), realization.interferers.begin() + interferers);
  return tx;
}

inline GainMatrix gain_matrix(const NetworkRealization& realization, int order, int interferers,
                              double alpha) {
  check_order(order);
  if (realization.base_stations.size() < static_cast<std::size_t>(order)) {
    throw Error("need N base stations");
  }
  const auto tx = transmitters(realization, interferers);
  GainMatrix gains(order, static_cast<int>(tx.size()));
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < gains.transmitters(); ++j) {
      gains(i, j) = path_gain(distance(tx[j], realization.base_stations[i]), alpha);
    }
  }
  return gains;
}

// All 2^(order * columns) blocking states. Columns are independent of each
// other; within a column the two rows follow that transmitter's joint pmf
// (order 2) or its marginal toward X_1 (order 1).
inline std::vector<BlockingState> blocking_state_space(std::span<const PairBlockingStats> per_tx,
                                                       int order) {
  check_order(order);
  const int columns = static_cast<int>(per_tx.size());
  if (columns < 1) throw Error("need at least the source transmitter");
  const int bits = order * columns;
  if (bits > max_state_bits) throw Error("state space too large");

  const std::uint32_t count = 1u << bits;
  const std::uint32_t column_mask = (1u << order) - 1u;
  std::vector<BlockingState> states(count);
  for (std::uint32_t s = 0; s < count; ++s) {
    double prob = 1.0;
    for (int j = 0; j < columns; ++j) {
      const std::uint32_t col = (s >> (j * order)) & column_mask;
      const auto& stats = per_tx[j];
      if (order == 2) {
        prob *= stats.joint[col & 1u][col >> 1];
      } else {
        prob *= col ? stats.p1 : stats.q1;
      }
    }
    states[s] = {s, order, columns, prob};
  }
  return states;
}

namespace detail {

inline double state_sinr(const BlockingState& state, const GainMatrix& gains, double inv_snr0,
                         int station) {
  if (state.blocked(station, 0)) return 0.0;
  double denominator = inv_snr0;
  for (int j = 1; j < gains.transmitters(); ++j) {
    if (!state.blocked(station, j)) denominator += gains(station, j);
  }
  return gains(station, 0) / denominator;
}

}  // namespace detail

// SINR at serving base station `station` (0-based) in the given blocking state.
inline double sinr_for_state(const BlockingState& state, const GainMatrix& gains, double snr0_db,
                             int station) {
  if (station < 0 || station >= gains.order() || state.order != gains.order() ||
      state.transmitters != gains.transmitters()) {
    throw Error("blocking state and gain matrix dimensions disagree");
  }
  return detail::state_sinr(state, gains, 1.0 / db_to_linear(snr0_db), station);
}

// Diversity combining takes the sum of branch SINRs, i.e. the bound is used
// with equality.
inline double combine(double sinr1, double sinr2, Scheme scheme) {
  return scheme == Scheme::selection ? std::max(sinr1, sinr2) : sinr1 + sinr2;
}

// Blocking statistics of every transmitter's paths toward the serving base
// stations. For order 1 both rows refer to X_1.
inline std::vector<PairBlockingStats> transmitter_stats(const NetworkRealization& realization,
                                                        int order, int interferers,
                                                        const ChannelParams& params,
                                                        bool correlated) {
  check_order(order);
  const auto& bs = realization.base_stations;
  if (bs.size() < static_cast<std::size_t>(order)) throw Error("need N base stations");
  const Point2D x1 = bs[0];
  const Point2D x2 = order == 2 ? bs[1] : bs[0];
  std::vector<PairBlockingStats> stats;
  for (const Point2D& tx : transmitters(realization, interferers)) {
    auto s = pair_stats(tx, x1, x2, params.width, params.lambda_bl);
    stats.push_back(correlated ? s : independent(s));
  }
  return stats;
}

// Exact SINR distribution of one realization with `interferers` active
// interferers, averaging over all blocking states.
inline DiscreteDistribution sinr_distribution(const NetworkRealization& realization, int order,
                                              int interferers, Scheme scheme,
                                              const ChannelParams& params, bool correlated) {
  params.validate();
  const auto stats = transmitter_stats(realization, order, interferers, params, correlated);
  const auto gains = gain_matrix(realization, order, interferers, params.alpha);
  const auto states = blocking_state_space(stats, order);
  const double inv_snr0 = 1.0 / params.snr0();

  std::vector<Atom> atoms;
  atoms.reserve(states.size());
  for (const auto& state : states) {
    double value = detail::state_sinr(state, gains, inv_snr0, 0);
    if (order == 2) value = combine(value, detail::state_sinr(state, gains, inv_snr0, 1), scheme);
    atoms.push_back({value, state.probability});
  }
  return DiscreteDistribution(std::move(atoms));
}

}  // namespace macroblock
