#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "macroblock/error.hpp"
#include "macroblock/sinr.hpp"
#include "macroblock/snr.hpp"

namespace macroblock {

enum class Experiment {
  plos_cdf,
  plos_vs_lambda_bl,
  snr_cdf,
  snr_outage_vs_lambda_bl,
  sinr_cdf,
  sinr_outage_vs_M,
};

enum class Mode { analytic, geometric };

inline constexpr std::pair<Experiment, std::string_view> experiment_names[] = {
    {Experiment::plos_cdf, "plos_cdf"},
    {Experiment::plos_vs_lambda_bl, "plos_vs_lambda_bl"},
    {Experiment::snr_cdf, "snr_cdf"},
    {Experiment::snr_outage_vs_lambda_bl, "snr_outage_vs_lambda_bl"},
    {Experiment::sinr_cdf, "sinr_cdf"},
    {Experiment::sinr_outage_vs_M, "sinr_outage_vs_M"},
};

constexpr std::string_view to_string(Experiment e) {
  for (const auto& [value, name] : experiment_names) {
    if (value == e) return name;
  }
  return "unknown";
}

constexpr std::string_view to_string(Mode m) {
  return m == Mode::analytic ? "analytic" : "geometric";
}

inline std::optional<Experiment> parse_experiment(std::string_view name) {
  for (const auto& [value, text] : experiment_names) {
    if (text == name) return value;
  }
  return std::nullopt;
}

// Shortest representation that parses back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Evenly spaced values start, start + step, ... up to and including stop.
// Points are rounded to 12 significant digits so 0:1:0.1 yields 0.3, not
// 0.30000000000000004.
inline std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw Error("invalid grid range");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", start + static_cast<double>(k) * step);
    grid[k] = std::strtod(buf, nullptr);
  }
  return grid;
}

// Full description of one experiment. List-valued fields either define the
// swept axis or are crossed into separate curves.
struct ExperimentConfig {
  Experiment experiment = Experiment::snr_cdf;
  double lambda_bs = 0.3;
  std::vector<double> lambda_bl{0.6};
  std::vector<double> width{0.8};
  std::vector<int> orders{1, 2};
  std::vector<int> interferers{0};
  double alpha = 3.0;
  double snr0_db = 15.0;
  double beta_db = 10.0;
  std::size_t realizations = 1000;
  std::uint64_t seed = 1;
  Mode mode = Mode::analytic;
  std::vector<Scheme> schemes{Scheme::selection, Scheme::diversity};
  std::vector<bool> correlation{true, false};
  std::vector<double> threshold_grid_db = linear_grid(-30.0, 40.0, 0.5);
  std::vector<double> plos_grid = linear_grid(0.0, 1.0, 0.01);
  std::size_t oracle_trials = 1000;
  // 0 selects the hardware concurrency. Never affects results.
  unsigned workers = 0;

  bool is_plos() const {
    return experiment == Experiment::plos_cdf || experiment == Experiment::plos_vs_lambda_bl;
  }
  bool uses_interferers() const {
    return experiment == Experiment::sinr_cdf || experiment == Experiment::sinr_outage_vs_M;
  }

  void validate() const {
    auto require = [](bool ok, const char* what) {
      if (!ok) throw ConfigError(what);
    };
    require(lambda_bs > 0.0 && std::isfinite(lambda_bs), "lambda_bs must be positive");
    require(!lambda_bl.empty(), "lambda_bl must not be empty");
    for (double l : lambda_bl) require(l >= 0.0 && std::isfinite(l), "lambda_bl must be nonnegative");
    require(!width.empty(), "W must not be empty");
    for (double w : width) require(w > 0.0 && std::isfinite(w), "W must be positive");
    require(!orders.empty(), "N must not be empty");
    for (int n : orders) require(n == 1 || n == 2, "N must be 1 or 2");
    require(!interferers.empty(), "M must not be empty");
    for (int m : interferers) {
      require(m >= 0, "M must be nonnegative");
      require(2 * (m + 1) <= max_state_bits, "M too large for exact enumeration");
    }
    require(alpha > 0.0 && std::isfinite(alpha), "alpha must be positive");
    require(std::isfinite(snr0_db), "snr0_db must be finite");
    require(std::isfinite(beta_db), "beta_db must be finite");
    require(realizations >= 1, "realizations must be at least 1");
    require(!schemes.empty(), "scheme must not be empty");
    require(!correlation.empty(), "correlated must not be empty");
    require(oracle_trials >= 1, "oracle_trials must be at least 1");
    auto increasing = [](const std::vector<double>& g) {
      if (g.empty()) return false;
      for (std::size_t i = 1; i < g.size(); ++i) {
        if (!(g[i] > g[i - 1])) return false;
      }
      return true;
    };
    require(increasing(threshold_grid_db), "threshold_grid must be strictly increasing");
    require(increasing(plos_grid), "plos_grid must be strictly increasing");
  }

  // Resolved settings as key=value pairs. Omits `workers`, which cannot
  // change any output.
  std::vector<std::pair<std::string, std::string>> echo() const {
    auto list = [](const auto& values, auto fmt) {
      std::string out;
      for (const auto& v : values) {
        if (!out.empty()) out += ',';
        out += fmt(v);
      }
      return out;
    };
    auto num = [](double x) { return format_double(x); };
    auto integer = [](auto x) { return std::to_string(x); };
    return {
        {"experiment", std::string(to_string(experiment))},
        {"lambda_bs", num(lambda_bs)},
        {"lambda_bl", list(lambda_bl, num)},
        {"W", list(width, num)},
        {"N", list(orders, integer)},
        {"M", list(interferers, integer)},
        {"alpha", num(alpha)},
        {"snr0_db", num(snr0_db)},
        {"beta_db", num(beta_db)},
        {"realizations", integer(realizations)},
        {"seed", integer(seed)},
        {"mode", std::string(to_string(mode))},
        {"scheme", list(schemes, [](Scheme s) { return std::string(to_string(s)); })},
        {"correlated", correlation.size() > 1 ? "both" : (correlation[0] ? "true" : "false")},
        {"threshold_grid", list(threshold_grid_db, num)},
        {"plos_grid", list(plos_grid, num)},
        {"oracle_trials", integer(oracle_trials)},
    };
  }
};

}  // namespace macroblock
