#pragma once

#include <cstdint>
#include <random>

#include <boost/random/normal_distribution.hpp>

#include "mfcma/types.hpp"

namespace mfcma {

/// Seeded random source used by every stochastic operation.
///
/// Standard-normal draws go through a single counted entry point so that
/// tests can assert exact draw budgets. Copying an Rng forks the stream:
/// both copies produce the same future sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  double normal();
  Vector normal_vector(Eigen::Index n);
  double uniform(double lo, double hi);

  /// Number of scalar standard-normal values drawn so far.
  std::uint64_t normal_draws() const noexcept { return normal_draws_; }

  /// Seed of the index-th independent substream derived from base.
  static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

 private:
  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::uint64_t normal_draws_ = 0;
};

}  // namespace mfcma
