#pragma once

#include <cstdint>

namespace mfcma::instrumentation {

// Process-wide counters of matrix work. The matrix-free optimization path
// must leave both at zero.
struct Counters {
  std::uint64_t decompositions = 0;
  std::uint64_t square_matrices = 0;
};

Counters snapshot() noexcept;
void reset() noexcept;

void note_decomposition() noexcept;
void note_square_matrix() noexcept;

}  // namespace mfcma::instrumentation
