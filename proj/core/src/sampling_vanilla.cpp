#include "mfcma/sampling_vanilla.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "mfcma/instrumentation.hpp"

namespace mfcma {

double eigenvalue_floor(double largest) noexcept {
  return largest > 0.0 ? 1e-14 * largest : 0.0;
}

bool is_symmetric(const Matrix& C, double tol) {
  if (C.rows() != C.cols()) return false;
  const double scale = std::max(1.0, C.cwiseAbs().maxCoeff());
  return (C - C.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

CovarianceFactor decompose_covariance(const Matrix& C) {
  if (C.rows() != C.cols() || C.rows() == 0) {
    throw std::invalid_argument("decompose_covariance: matrix must be square and non-empty");
  }
  if (!is_symmetric(C)) throw std::invalid_argument("decompose_covariance: matrix is not symmetric");
  instrumentation::note_decomposition();

  Eigen::SelfAdjointEigenSolver<Matrix> solver(C);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("decompose_covariance: eigensolver failed");
  }
  CovarianceFactor factor;
  factor.eigenvalues = solver.eigenvalues();
  const double floor = eigenvalue_floor(factor.eigenvalues.maxCoeff());
  for (Eigen::Index i = 0; i < factor.eigenvalues.size(); ++i) {
    if (factor.eigenvalues[i] < floor) {
      factor.eigenvalues[i] = floor;
      ++factor.clamped;
    }
  }
  factor.L = solver.eigenvectors() * factor.eigenvalues.cwiseSqrt().asDiagonal();
  return factor;
}

Population sample_population_vanilla(const Vector& m, double sigma, const Matrix& L,
                                     std::size_t lambda, Rng& rng) {
  Population pop;
  pop.members.reserve(lambda);
  for (std::size_t i = 0; i < lambda; ++i) {
    Member member;
    member.z = rng.normal_vector(L.cols());
    member.d = L * *member.z;
    member.x = m + sigma * member.d;
    member.index = i;
    pop.members.push_back(std::move(member));
  }
  return pop;
}

Matrix update_covariance(const Matrix& C, const Vector& p_c, std::span<const Vector> best_d,
                         std::span<const double> weights, double c_1, double c_mu, double c_cov) {
  if (best_d.size() < weights.size()) {
    throw std::invalid_argument("update_covariance: fewer difference vectors than weights");
  }
  instrumentation::note_square_matrix();
  Matrix rank_mu = Matrix::Zero(C.rows(), C.cols());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    rank_mu.noalias() += weights[i] * best_d[i] * best_d[i].transpose();
  }
  Matrix next = (1.0 - c_cov) * C;
  next.noalias() += c_1 * p_c * p_c.transpose();
  next += c_mu * rank_mu;
  return 0.5 * (next + next.transpose());
}

}  // namespace mfcma
