#pragma once

#include <cstddef>
#include <limits>

#include "mfcma/objectives.hpp"

namespace mfcma {

/// Counts objective evaluations and keeps the best point seen so far.
/// A NaN result is reported as an evaluation failure.
class Evaluator {
 public:
  explicit Evaluator(ObjectiveFn fn) : fn_(std::move(fn)) {}

  double operator()(const Vector& x);

  std::size_t evaluations() const noexcept { return evaluations_; }
  double best_fitness() const noexcept { return best_fitness_; }
  const Vector& best_x() const noexcept { return best_x_; }

 private:
  ObjectiveFn fn_;
  std::size_t evaluations_ = 0;
  double best_fitness_ = std::numeric_limits<double>::infinity();
  Vector best_x_;
};

}  // namespace mfcma
