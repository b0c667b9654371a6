#pragma once

#include <cstddef>
#include <span>

#include "mfcma/population.hpp"
#include "mfcma/rng.hpp"
#include "mfcma/types.hpp"

namespace mfcma {

/// Eigen-based square root of a covariance matrix: L = B diag(sqrt(e)).
struct CovarianceFactor {
  Matrix L;
  Vector eigenvalues;       // ascending, after clamping
  std::size_t clamped = 0;  // eigenvalues raised to the floor
};

/// 1e-14 * largest, or 0 when largest <= 0. Relative, so the floor follows
/// the overall scale of C, which carries the whole step length when sigma
/// is held constant.
double eigenvalue_floor(double largest) noexcept;

/// Symmetric eigendecomposition. Eigenvalues below eigenvalue_floor() of the
/// largest one are raised to that floor.
/// Throws std::invalid_argument on non-square or asymmetric input.
CovarianceFactor decompose_covariance(const Matrix& C);

/// lambda members with z ~ N(0, I), d = L z, x = m + sigma d.
Population sample_population_vanilla(const Vector& m, double sigma, const Matrix& L,
                                     std::size_t lambda, Rng& rng);

/// (1 - c_cov) C + c_1 p_c p_c^T + c_mu sum_i w_i d_i d_i^T, symmetrized.
/// best_d holds the weights.size() best difference vectors in fitness order.
Matrix update_covariance(const Matrix& C, const Vector& p_c, std::span<const Vector> best_d,
                         std::span<const double> weights, double c_1, double c_mu, double c_cov);

/// Elementwise symmetry check, tolerance scaled by max(1, max|C_ij|).
bool is_symmetric(const Matrix& C, double tol = 1e-12);

}  // namespace mfcma
