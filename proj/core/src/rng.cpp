#include "mfcma/rng.hpp"


namespace mfcma {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(mix(seed)) {}

double Rng::normal() {
  ++normal_draws_;
  return normal_(engine_);
}

Vector Rng::normal_vector(Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
  return v;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }

std::uint64_t Rng::derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix(mix(base) ^ mix(index + 0x632be59bd9b4e019ULL));
}

}  // namespace mfcma
