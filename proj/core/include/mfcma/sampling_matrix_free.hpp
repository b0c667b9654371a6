#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "mfcma/params.hpp"
#include "mfcma/population.hpp"
#include "mfcma/rng.hpp"
#include "mfcma/types.hpp"

namespace mfcma {

/// The mu best difference vectors of one generation, fitness-sorted, and
/// that generation's evolution path.
struct ArchiveEntry {
  std::vector<Vector> d;
  Vector p_c;
  std::size_t gen = 0;
};

/// Ring of the h most recent archive entries, oldest first.
class Archive {
 public:
  explicit Archive(std::size_t capacity);

  /// Appends entry, evicting the oldest one when full. Throws
  /// std::invalid_argument unless entry.gen exceeds every stored gen.
  void push(ArchiveEntry entry);

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return entries_.empty(); }
  const std::deque<ArchiveEntry>& entries() const noexcept { return entries_; }

 private:
  std::size_t capacity_;
  std::deque<ArchiveEntry> entries_;
};

/// One difference vector for generation t (1-based) from the archived
/// generations tau < t:
///
///   delta = sum_tau (1-c_cov)^{(t-1-tau)/2} [ sqrt(c_mu) sum_j sqrt(w_j) d_j r
///                                           + sqrt(c_1) p_c s ]
///           + (1-c_cov)^{(t-1)/2} v
///
/// with independent standard normals r, s and v ~ N(0, I). Its covariance
/// is C^{(t)} of the matrix-based update run on the same history, up to the
/// truncation to the archive window. Draws exactly (mu+1)*size + n normals:
/// oldest generation first, d_1..d_mu then p_c, the isotropic vector last.
Vector sample_delta_mf(const Archive& archive, std::size_t t, const StrategyParams& params,
                       Rng& rng);

/// lambda independent sample_delta_mf draws; members carry no z.
Population sample_population_mf(const Archive& archive, std::size_t t, const Vector& m,
                                double sigma, const StrategyParams& params, Rng& rng);

}  // namespace mfcma
