#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "macroblock/config.hpp"
#include "macroblock/error.hpp"

namespace macroblock::io {

// One key=value assignment and where it came from ("run.cfg:3", "--seed").
struct ConfigEntry {
  std::string key;
  std::string value;
  std::string origin;
};

inline constexpr std::string_view config_keys[] = {
    "experiment", "lambda_bs",  "lambda_bl", "W",         "N",
    "M",          "alpha",      "snr0_db",   "beta_db",   "realizations",
    "seed",       "mode",       "scheme",    "correlated", "threshold_grid",
    "plos_grid",  "oracle_trials", "workers",
};

inline bool is_config_key(std::string_view key) {
  for (auto k : config_keys) {
    if (k == key) return true;
  }
  return false;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <class T>
bool parse_number(std::string_view text, T& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

struct Malformed {};

template <class T>
T number(std::string_view text) {
  T v{};
  if (!parse_number(text, v)) throw Malformed{};
  return v;
}

// Comma-separated items, each a number or an inclusive range start:stop[:step].
template <class T>
std::vector<T> number_list(std::string_view text) {
  std::vector<T> out;
  for (auto item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(number<T>(parts[0]));
      continue;
    }
    if (parts.size() > 3) throw Malformed{};
    const T start = number<T>(parts[0]);
    const T stop = number<T>(parts[1]);
    const T step = parts.size() == 3 ? number<T>(parts[2]) : T{1};
    if (!(step > T{0}) || stop < start) throw Malformed{};
    if constexpr (std::is_floating_point_v<T>) {
      const auto grid = linear_grid(start, stop, step);
      out.insert(out.end(), grid.begin(), grid.end());
    } else {
      for (T v = start; v <= stop; v += step) out.push_back(v);
    }
  }
  return out;
}

}  // namespace detail

// Lines of key=value; '#' starts a comment, blank lines are ignored.
inline std::vector<ConfigEntry> parse_config_text(std::string_view text,
                                                  const std::string& source_name) {
  std::vector<ConfigEntry> entries;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (!line.empty()) {
      const std::string origin = source_name + ":" + std::to_string(line_no);
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ConfigError(origin + ": expected key=value");
      entries.push_back({std::string(detail::trim(line.substr(0, eq))),
                         std::string(detail::trim(line.substr(eq + 1))), origin});
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return entries;
}

inline std::vector<ConfigEntry> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

// Builds a validated config from entries applied in order, so later entries
// (command-line flags) override earlier ones (file lines). Keys that are not
// given take documented defaults, some of which depend on the experiment.
inline ExperimentConfig build_config(const std::vector<ConfigEntry>& entries) {
  ExperimentConfig cfg;
  bool have_experiment = false;
  bool have_lambda_bl = false;
  bool have_m = false;

  for (const auto& e : entries) {
    auto fail = [&](const std::string& why) -> ConfigError {
      return ConfigError(e.origin + ": " + why);
    };
    if (!is_config_key(e.key)) throw fail("unknown key '" + e.key + "'");
    try {
      const std::string_view v = e.value;
      if (e.key == "experiment") {
        const auto exp = parse_experiment(v);
        if (!exp) throw fail("unknown experiment '" + e.value + "'");
        cfg.experiment = *exp;
        have_experiment = true;
      } else if (e.key == "lambda_bs") {
        cfg.lambda_bs = detail::number<double>(v);
      } else if (e.key == "lambda_bl") {
        cfg.lambda_bl = detail::number_list<double>(v);
        have_lambda_bl = true;
      } else if (e.key == "W") {
        cfg.width = detail::number_list<double>(v);
      } else if (e.key == "N") {
        cfg.orders = detail::number_list<int>(v);
      } else if (e.key == "M") {
        cfg.interferers = detail::number_list<int>(v);
        have_m = true;
      } else if (e.key == "alpha") {
        cfg.alpha = detail::number<double>(v);
      } else if (e.key == "snr0_db") {
        cfg.snr0_db = detail::number<double>(v);
      } else if (e.key == "beta_db") {
        cfg.beta_db = detail::number<double>(v);
      } else if (e.key == "realizations") {
        cfg.realizations = detail::number<std::size_t>(v);
      } else if (e.key == "seed") {
        cfg.seed = detail::number<std::uint64_t>(v);
      } else if (e.key == "mode") {
        if (v == "analytic") cfg.mode = Mode::analytic;
        else if (v == "geometric") cfg.mode = Mode::geometric;
        else throw detail::Malformed{};
      } else if (e.key == "scheme") {
        cfg.schemes.clear();
        for (auto item : detail::split(v, ',')) {
          if (item == "selection") cfg.schemes.push_back(Scheme::selection);
          else if (item == "diversity") cfg.schemes.push_back(Scheme::diversity);
          else if (item == "both") cfg.schemes.insert(cfg.schemes.end(), {Scheme::selection, Scheme::diversity});
          else throw detail::Malformed{};
        }
      } else if (e.key == "correlated") {
        if (v == "true") cfg.correlation = {true};
        else if (v == "false") cfg.correlation = {false};
        else if (v == "both") cfg.correlation = {true, false};
        else throw detail::Malformed{};
      } else if (e.key == "threshold_grid") {
        cfg.threshold_grid_db = detail::number_list<double>(v);
      } else if (e.key == "plos_grid") {
        cfg.plos_grid = detail::number_list<double>(v);
      } else if (e.key == "oracle_trials") {
        cfg.oracle_trials = detail::number<std::size_t>(v);
      } else if (e.key == "workers") {
        cfg.workers = detail::number<unsigned>(v);
      }
      cfg.validate();
    } catch (const detail::Malformed&) {
      throw fail("malformed value for '" + e.key + "': '" + e.value + "'");
    } catch (const ConfigError& err) {
      const std::string what = err.what();
      if (what.rfind(e.origin, 0) == 0) throw;
      throw fail(what);
    } catch (const Error& err) {
      throw fail(err.what());
    }
  }

  if (!have_experiment) throw ConfigError("missing required key 'experiment'");
  const auto exp = cfg.experiment;
  if (!have_lambda_bl &&
      (exp == Experiment::plos_vs_lambda_bl || exp == Experiment::snr_outage_vs_lambda_bl)) {
    cfg.lambda_bl = linear_grid(0.0, 1.0, 0.1);
  }
  if (!have_m) {
    if (exp == Experiment::sinr_outage_vs_M) cfg.interferers = {0, 1, 2, 3, 4, 5, 6};
    if (exp == Experiment::sinr_cdf) cfg.interferers = {0, 5};
  }
  cfg.validate();
  return cfg;
}

}  // namespace macroblock::io
