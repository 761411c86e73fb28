#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "macroblock/error.hpp"

namespace macroblock {

struct Atom {
  double value = 0.0;
  double probability = 0.0;

  friend constexpr bool operator==(const Atom&, const Atom&) = default;
};

// Finite distribution over nonnegative values. Atoms are kept sorted by
// value, equal values are merged, and zero-probability atoms are dropped.
class DiscreteDistribution {
 public:
  // Accepted deviation of the total mass from 1.
  static constexpr double mass_tolerance = 1e-9;
  // Negative probabilities down to this are rounding noise and become 0.
  static constexpr double negative_tolerance = 1e-12;

  DiscreteDistribution() = default;

  explicit DiscreteDistribution(std::vector<Atom> atoms) {
    double total = 0.0;
    for (auto& a : atoms) {
      if (!std::isfinite(a.value) || a.value < 0.0) {
        throw Error("distribution values must be finite and nonnegative");
      }
      if (!(a.probability >= -negative_tolerance)) throw Error("negative probability");
      a.probability = std::max(a.probability, 0.0);
      total += a.probability;
    }
    if (std::abs(total - 1.0) > mass_tolerance) throw Error("probabilities do not sum to 1");

    std::stable_sort(atoms.begin(), atoms.end(),
                     [](const Atom& x, const Atom& y) { return x.value < y.value; });
    for (const auto& a : atoms) {
      if (a.probability == 0.0) continue;
      if (!atoms_.empty() && atoms_.back().value == a.value) {
        atoms_.back().probability += a.probability;
      } else {
        atoms_.push_back(a);
      }
    }
  }

  // Equal-weight distribution of the given samples.
  static DiscreteDistribution from_samples(std::vector<double> samples) {
    if (samples.empty()) throw Error("no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    std::vector<Atom> atoms;
    std::size_t i = 0;
    while (i < samples.size()) {
      std::size_t j = i;
      while (j < samples.size() && samples[j] == samples[i]) ++j;
      atoms.push_back({samples[i], static_cast<double>(j - i) / n});
      i = j;
    }
    return DiscreteDistribution(std::move(atoms));
  }

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  // P[X <= x], right-continuous.
  double cdf(double x) const {
    double sum = 0.0;
    for (const auto& a : atoms_) {
      if (a.value > x) break;
      sum += a.probability;
    }
    return std::min(sum, 1.0);
  }

  // cdf() at each point of an increasing grid, in one pass.
  std::vector<double> cdf_on(std::span<const double> grid) const {
    std::vector<double> out(grid.size());
    double sum = 0.0;
    std::size_t k = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      while (k < atoms_.size() && atoms_[k].value <= grid[g]) sum += atoms_[k++].probability;
      out[g] = std::min(sum, 1.0);
    }
    return out;
  }

 private:
  std::vector<Atom> atoms_;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace macroblock
