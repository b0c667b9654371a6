#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "mfcma/types.hpp"

namespace mfcma {

struct Member {
  Vector x;
  Vector d;
  std::optional<Vector> z;  // source normal; vanilla sampler only
  double fitness = std::numeric_limits<double>::quiet_NaN();
  std::size_t index = 0;    // sampling order, used to break ties
};

struct Population {
  std::vector<Member> members;
  bool sorted = false;

  std::size_t size() const noexcept { return members.size(); }

  /// Stable ascending sort by fitness; ties keep sampling order.
  void sort_by_fitness();
};

}  // namespace mfcma
