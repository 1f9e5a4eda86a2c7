#pragma once

#include <cstdint>
#include <random>

#include "rutv/matrix.hpp"

namespace rutv {

/// Seeded source of standard normal draws. Two streams built from the same
/// seed produce the same sequence on the same standard library build;
/// nothing is promised across toolchains.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  double normal() { return dist_(engine_); }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

/// m x n matrix of i.i.d. N(0,1) entries, filled column by column.
Matrix gaussian(Index m, Index n, RngStream& rng);

}  // namespace rutv
