#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace macroblock {

// Deterministic pseudo-random stream addressed by (seed, substream index).
//
// The same (seed, index) always yields the same sequence. fork(tag) derives an
// independent child stream so that different consumers of one realization
// (base stations, interferers, oracle blockages) never share positions.
class RngStream {
 public:
  using engine_type = std::mt19937_64;

  RngStream(std::uint64_t seed, std::uint64_t index) : RngStream(seed, index, {}) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }

  RngStream fork(std::uint64_t tag) const {
    std::vector<std::uint64_t> path = path_;
    path.push_back(tag);
    return RngStream(seed_, index_, std::move(path));
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  engine_type& engine() { return engine_; }

 private:
  RngStream(std::uint64_t seed, std::uint64_t index, std::vector<std::uint64_t> path)
      : seed_(seed), index_(index), path_(std::move(path)) {
    std::vector<std::uint32_t> words;
    auto push = [&](std::uint64_t v) {
      words.push_back(static_cast<std::uint32_t>(v));
      words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed_);
    push(index_);
    for (auto tag : path_) push(tag);
    push(path_.size());
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
  }

  std::uint64_t seed_;
  std::uint64_t index_;
  std::vector<std::uint64_t> path_;
  engine_type engine_;
};

}  // namespace macroblock
