#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "macroblock/blocking.hpp"
#include "macroblock/config.hpp"
#include "macroblock/curve_table.hpp"
#include "macroblock/distribution.hpp"
#include "macroblock/error.hpp"
#include "macroblock/oracle.hpp"
#include "macroblock/placement.hpp"
#include "macroblock/rng.hpp"
#include "macroblock/sinr.hpp"
#include "macroblock/snr.hpp"

namespace macroblock {

// Mean over realizations of per-realization CDFs, evaluated on a grid.
struct EmpiricalCDF {
  std::vector<double> grid;
  std::vector<double> values;
  std::size_t realizations = 0;
};

struct SpatialAverage {
  double mean = 0.0;
  double half_width = 0.0;  // 95% normal-approximation interval
};

// Arithmetic mean with a 1.96 s / sqrt(n) half-width, s the sample standard
// deviation (n - 1 denominator; 0 for a single value).
inline SpatialAverage spatial_average(std::span<const double> values) {
  if (values.empty()) throw Error("spatial_average: empty input");
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double s = std::sqrt(ss / (n - 1.0));
  return {mean, 1.96 * s / std::sqrt(n)};
}

inline EmpiricalCDF aggregate_cdf(std::span<const DiscreteDistribution> distributions,
                                  std::span<const double> grid) {
  if (distributions.empty()) throw Error("aggregate_cdf: empty input");
  EmpiricalCDF out;
  out.grid.assign(grid.begin(), grid.end());
  out.values.assign(grid.size(), 0.0);
  out.realizations = distributions.size();
  for (const auto& dist : distributions) {
    const auto cdf = dist.cdf_on(grid);
    for (std::size_t g = 0; g < grid.size(); ++g) out.values[g] += cdf[g];
  }
  for (auto& v : out.values) v /= static_cast<double>(distributions.size());
  return out;
}

// One evaluated variant: everything that distinguishes two curves (or two
// points of a swept curve) on the same geometry.
struct Scenario {
  double lambda_bl = 0.0;
  double width = 0.8;
  int interferers = 0;
  int order = 2;
  Scheme scheme = Scheme::selection;
  bool correlated = true;
};

struct Curve {
  std::string name;
  std::vector<Scenario> points;  // one per swept x value, or one for CDF experiments
};

struct ExperimentPlan {
  std::string x_header;
  std::vector<double> x_values;
  std::vector<Curve> curves;
  bool cdf_experiment = false;  // true: each scenario contributes a whole CDF over x_values
};

inline ExperimentPlan plan_experiment(const ExperimentConfig& config) {
  ExperimentPlan plan;
  const auto e = config.experiment;
  const bool sweep_lambda =
      e == Experiment::plos_vs_lambda_bl || e == Experiment::snr_outage_vs_lambda_bl;
  const bool sweep_m = e == Experiment::sinr_outage_vs_M;
  switch (e) {
    case Experiment::plos_cdf:
      plan.x_header = "plos";
      plan.x_values = config.plos_grid;
      plan.cdf_experiment = true;
      break;
    case Experiment::snr_cdf:
    case Experiment::sinr_cdf:
      plan.x_header = "threshold_db";
      plan.x_values = config.threshold_grid_db;
      plan.cdf_experiment = true;
      break;
    case Experiment::plos_vs_lambda_bl:
    case Experiment::snr_outage_vs_lambda_bl:
      plan.x_header = "lambda_bl";
      plan.x_values = config.lambda_bl;
      break;
    case Experiment::sinr_outage_vs_M:
      plan.x_header = "M";
      plan.x_values.assign(config.interferers.begin(), config.interferers.end());
      break;
  }

  const std::vector<double> lambdas = sweep_lambda ? std::vector<double>{0.0} : config.lambda_bl;
  const std::vector<int> ms = (!config.uses_interferers() || sweep_m) ? std::vector<int>{0}
                                                                      : config.interferers;
  const std::vector<Scheme> schemes =
      config.is_plos() ? std::vector<Scheme>{Scheme::selection} : config.schemes;

  for (double w : config.width) {
    for (double lambda : lambdas) {
      for (int m : ms) {
        for (int n : config.orders) {
          for (Scheme scheme : schemes) {
            for (bool corr : config.correlation) {
              Curve curve;
              curve.name = "N" + std::to_string(n);
              if (!config.is_plos()) curve.name += "_" + std::string(to_string(scheme));
              curve.name += corr ? "_corr" : "_ind";
              if (ms.size() > 1) curve.name += "_M" + std::to_string(m);
              if (lambdas.size() > 1) curve.name += "_lbl" + format_double(lambda);
              if (config.width.size() > 1) curve.name += "_W" + format_double(w);

              const Scenario base{lambda, w, m, n, scheme, corr};
              if (plan.cdf_experiment) {
                curve.points.push_back(base);
              } else {
                for (double x : plan.x_values) {
                  Scenario s = base;
                  if (sweep_lambda) s.lambda_bl = x;
                  if (sweep_m) s.interferers = static_cast<int>(x);
                  curve.points.push_back(s);
                }
              }
              plan.curves.push_back(std::move(curve));
            }
          }
        }
      }
    }
  }
  return plan;
}

inline std::vector<Scenario> flatten(const ExperimentPlan& plan) {
  std::vector<Scenario> out;
  for (const auto& c : plan.curves) out.insert(out.end(), c.points.begin(), c.points.end());
  return out;
}

struct ScenarioOutput {
  Scenario scenario;
  double p_los = 0.0;                 // plos experiments
  DiscreteDistribution distribution;  // SNR / SINR experiments
};

struct RealizationResult {
  std::size_t index = 0;
  NetworkRealization geometry;  // base stations, interferers placed for N = 2
  std::vector<ScenarioOutput> outputs;
};

namespace detail {

inline int max_interferers(const ExperimentConfig& config) {
  if (!config.uses_interferers()) return 0;
  return *std::max_element(config.interferers.begin(), config.interferers.end());
}

inline NetworkRealization with_interferers(const NetworkRealization& base, int order, int count,
                                           double lambda_bs, const RngStream& root) {
  NetworkRealization r = base;
  RngStream rng = root.fork(1);
  r.interferers = place_interferers(base, static_cast<std::size_t>(order),
                                    static_cast<std::size_t>(count), lambda_bs, rng);
  r.interferer_count = static_cast<std::size_t>(count);
  return r;
}

inline double geometric_plos(const NetworkRealization& r, const Scenario& s, std::size_t trials,
                             RngStream& rng) {
  const Point2D x1 = r.base_stations[0];
  const Point2D x2 = r.base_stations[1];
  if (s.correlated) {
    const auto report =
        oracle::empirical_pair_pmf(r.source, x1, x2, s.width, s.lambda_bl, trials, rng);
    if (s.order == 1) return report.pmf[0][0] + report.pmf[0][1];
    return report.p_los;
  }
  // Independent fields per path: P[LOS] = 1 - prod of empirical blocking rates.
  auto blocked_rate = [&](Point2D x) {
    const auto report =
        oracle::empirical_pair_pmf(r.source, x, x, s.width, s.lambda_bl, trials, rng);
    return report.pmf[1][1];
  };
  const double b1 = blocked_rate(x1);
  if (s.order == 1) return 1.0 - b1;
  return 1.0 - b1 * blocked_rate(x2);
}

}  // namespace detail

// Samples one geometry (a deterministic function of seed and index) and
// evaluates every scenario of the experiment on it.
inline RealizationResult run_realization(const ExperimentConfig& config, std::size_t index,
                                         const std::vector<Scenario>& scenarios) {
  const RngStream root(config.seed, index);
  const int max_m = detail::max_interferers(config);

  NetworkRealization base;
  base.lambda_bs = config.lambda_bs;
  {
    RngStream rng = root.fork(0);
    base.base_stations =
        sample_base_stations(config.lambda_bs, static_cast<std::size_t>(2 + max_m), rng);
  }
  NetworkRealization by_order[2] = {base, base};
  if (max_m > 0) {
    for (int n = 1; n <= 2; ++n) {
      by_order[n - 1] = detail::with_interferers(base, n, max_m, config.lambda_bs, root);
    }
  }

  RealizationResult result;
  result.index = index;
  result.geometry = by_order[1];
  result.outputs.reserve(scenarios.size());
  for (std::size_t k = 0; k < scenarios.size(); ++k) {
    const Scenario& s = scenarios[k];
    const NetworkRealization& r = by_order[s.order - 1];
    const ChannelParams params{config.alpha, config.snr0_db, s.width, s.lambda_bl};
    ScenarioOutput out{s, 0.0, {}};

    if (config.mode == Mode::analytic) {
      if (config.is_plos()) {
        const auto stats =
            pair_stats(r.source, r.base_stations[0], r.base_stations[1], s.width, s.lambda_bl);
        out.p_los = los_probability(stats, s.order, s.correlated);
      } else if (config.uses_interferers()) {
        out.distribution =
            sinr_distribution(r, s.order, s.interferers, s.scheme, params, s.correlated);
      } else {
        out.distribution = snr_distribution(r, s.order, s.scheme, params, s.correlated);
      }
    } else {
      RngStream rng = root.fork(2).fork(k);
      if (config.is_plos()) {
        out.p_los = detail::geometric_plos(r, s, config.oracle_trials, rng);
      } else {
        const int m = config.uses_interferers() ? s.interferers : 0;
        out.distribution = DiscreteDistribution::from_samples(oracle::empirical_sinr_samples(
            r, s.order, m, s.scheme, params, config.oracle_trials, rng, s.correlated));
      }
    }
    result.outputs.push_back(std::move(out));
  }
  return result;
}

inline RealizationResult run_realization(const ExperimentConfig& config, std::size_t index) {
  return run_realization(config, index, flatten(plan_experiment(config)));
}

// Runs all realizations (in parallel when config.workers != 1) and reduces
// them in realization-index order, so the table is independent of the worker
// count. CDF experiments average per-realization CDFs over the grid; sweep
// experiments report the spatial average at each swept value.
inline CurveTable run_experiment(const ExperimentConfig& config) {
  config.validate();
  const ExperimentPlan plan = plan_experiment(config);
  const std::vector<Scenario> scenarios = flatten(plan);

  const std::size_t xs = plan.x_values.size();
  std::vector<double> linear_grid_values;
  if (plan.cdf_experiment && !config.is_plos()) {
    for (double db : plan.x_values) linear_grid_values.push_back(db_to_linear(db));
  }
  const double beta = db_to_linear(config.beta_db);
  // Slots: curve c, x index k -> c * xs + k. For CDF experiments one scenario
  // fills xs slots; for sweeps each scenario fills one.
  const std::size_t slots = plan.curves.size() * xs;
  const std::size_t n = config.realizations;
  std::vector<double> contributions(n * slots, 0.0);

  auto evaluate = [&](std::size_t index) {
    const auto result = run_realization(config, index, scenarios);
    double* row = contributions.data() + index * slots;
    for (std::size_t k = 0; k < result.outputs.size(); ++k) {
      const auto& out = result.outputs[k];
      switch (config.experiment) {
        case Experiment::plos_cdf:
          for (std::size_t g = 0; g < xs; ++g) row[k * xs + g] = out.p_los <= plan.x_values[g];
          break;
        case Experiment::plos_vs_lambda_bl:
          row[k] = out.p_los;
          break;
        case Experiment::snr_cdf:
        case Experiment::sinr_cdf: {
          const auto cdf = out.distribution.cdf_on(linear_grid_values);
          std::copy(cdf.begin(), cdf.end(), row + k * xs);
          break;
        }
        case Experiment::snr_outage_vs_lambda_bl:
        case Experiment::sinr_outage_vs_M:
          row[k] = out.distribution.cdf(beta);
          break;
      }
    }
  };

  unsigned workers = config.workers ? config.workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            evaluate(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  CurveTable table;
  table.name = std::string(to_string(config.experiment));
  table.headers.push_back(plan.x_header);
  for (const auto& c : plan.curves) table.headers.push_back(c.name);
  table.rows.assign(xs, std::vector<double>(plan.curves.size() + 1, 0.0));
  std::vector<double> column(n);
  for (std::size_t k = 0; k < xs; ++k) {
    table.rows[k][0] = plan.x_values[k];
    for (std::size_t c = 0; c < plan.curves.size(); ++c) {
      const std::size_t slot = c * xs + k;
      for (std::size_t i = 0; i < n; ++i) column[i] = contributions[i * slots + slot];
      table.rows[k][c + 1] = spatial_average(column).mean;
    }
  }
  return table;
}

}  // namespace macroblock
