#include "mfcma/instrumentation.hpp"

#include <atomic>

namespace mfcma {

namespace instrumentation {

namespace {
std::atomic<std::uint64_t> g_decompositions{0};
std::atomic<std::uint64_t> g_square_matrices{0};
}  // namespace

Counters snapshot() noexcept {
  return {g_decompositions.load(std::memory_order_relaxed),
          g_square_matrices.load(std::memory_order_relaxed)};
}

void reset() noexcept {
  g_decompositions.store(0, std::memory_order_relaxed);
  g_square_matrices.store(0, std::memory_order_relaxed);
}

void note_decomposition() noexcept { g_decompositions.fetch_add(1, std::memory_order_relaxed); }
void note_square_matrix() noexcept { g_square_matrices.fetch_add(1, std::memory_order_relaxed); }

}  // namespace instrumentation

}  // namespace mfcma
