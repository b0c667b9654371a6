#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mfcma/objectives.hpp"
#include "mfcma/params.hpp"
#include "mfcma/rng.hpp"
#include "mfcma/sampling_matrix_free.hpp"
#include "mfcma/types.hpp"

namespace mfcma {

/// Per-generation {sorted best d vectors, pre-update p_c} records together
/// with the coefficients they were produced under. Records share the
/// archive layout.
struct GenerationHistory {
  std::size_t n = 0;
  std::vector<ArchiveEntry> generations;
  std::vector<double> weights;
  double c_1 = 0.0;
  double c_mu = 0.0;

  double c_cov() const noexcept { return c_1 + c_mu; }
};

/// Closed-form covariance after t generations:
///   sum_{tau<=t} (1-c_cov)^{t-tau} (c_1 C_1^tau + c_mu C_mu^tau) + (1-c_cov)^t I
Matrix covariance_nonrecursive(const GenerationHistory& history, std::size_t t);

/// The same quantity by iterating update_covariance from C = I.
Matrix covariance_recursive(const GenerationHistory& history, std::size_t t);

/// (1/N) sum s s^T about the origin. Throws for N < 2.
Matrix empirical_covariance(std::span<const Vector> samples);

/// Streaming form of empirical_covariance that also tracks first moments.
class CovarianceAccumulator {
 public:
  explicit CovarianceAccumulator(Eigen::Index n);
  void add(const Vector& s);
  std::size_t count() const noexcept { return count_; }
  Matrix covariance() const;
  Vector mean() const;

 private:
  Matrix second_;
  Vector first_;
  std::size_t count_ = 0;
};

struct CoordinateMoments {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

std::vector<CoordinateMoments> coordinate_moments(std::span<const Vector> samples);

struct EquivalenceReport {
  double rel_frobenius = 0.0;
  double mean_max_abs = 0.0;
  double mean_bound = 0.0;  // 4 sqrt(trace(C) / N)
  std::size_t sample_count = 0;
  double tolerance = 0.0;
  bool pass = false;
};

inline constexpr double kTheorem1Tolerance = 0.05;

/// Draws N matrix-free samples from an archive of the first t history
/// records and compares their empirical covariance against
/// covariance_nonrecursive(history, t). The archive capacity is params.h;
/// when that truncates the history, allow_truncation must be set.
EquivalenceReport theorem1_check(const GenerationHistory& history, std::size_t t,
                                 const StrategyParams& params, std::size_t N, Rng& rng,
                                 bool allow_truncation = false,
                                 double tolerance = kTheorem1Tolerance);

/// Same gate applied to N draws from N(0, reference) produced by a
/// factor of the reference matrix, as a calibration null.
EquivalenceReport gaussian_null_check(const Matrix& reference, std::size_t N, Rng& rng,
                                      double tolerance = kTheorem1Tolerance);

/// Runs the matrix-based strategy with constant sigma for the given number
/// of generations and records its archive-layout history.
GenerationHistory record_vanilla_history(const Objective& objective, const StrategyParams& params,
                                         const Vector& m0, double sigma, std::size_t generations,
                                         Rng& rng);

/// Eigenvalues in non-increasing order. Throws on asymmetric input.
std::vector<double> eigen_spectrum(const Matrix& C);

/// max eigenvalue / max(min eigenvalue, eigenvalue_floor(max eigenvalue))
double condition_number(const Matrix& C);
double condition_number(std::span<const double> spectrum);

double relative_frobenius(const Matrix& a, const Matrix& reference);

}  // namespace mfcma
