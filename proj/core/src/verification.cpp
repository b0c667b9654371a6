#include "mfcma/verification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "mfcma/evaluator.hpp"
#include "mfcma/instrumentation.hpp"
#include "mfcma/sampling_vanilla.hpp"
#include "mfcma/step_size.hpp"
#include "mfcma/strategy.hpp"

namespace mfcma {

namespace {

void require_history(const GenerationHistory& history, std::size_t t) {
  if (history.generations.size() < t) {
    throw std::invalid_argument("history holds " + std::to_string(history.generations.size()) +
                                " generations, " + std::to_string(t) + " required");
  }
  for (std::size_t i = 0; i < t; ++i) {
    if (static_cast<std::size_t>(history.generations[i].p_c.size()) != history.n) {
      throw std::invalid_argument("history record has wrong dimension");
    }
    if (history.generations[i].d.size() < history.weights.size()) {
      throw std::invalid_argument("history record has fewer than mu difference vectors");
    }
  }
}

}  // namespace

Matrix covariance_nonrecursive(const GenerationHistory& history, std::size_t t) {
  require_history(history, t);
  const auto n = static_cast<Eigen::Index>(history.n);
  instrumentation::note_square_matrix();
  const double keep = 1.0 - history.c_cov();
  Matrix C = std::pow(keep, static_cast<double>(t)) * Matrix::Identity(n, n);
  for (std::size_t tau = 1; tau <= t; ++tau) {
    const ArchiveEntry& g = history.generations[tau - 1];
    Matrix term = history.c_1 * g.p_c * g.p_c.transpose();
    for (std::size_t j = 0; j < history.weights.size(); ++j) {
      term.noalias() += (history.c_mu * history.weights[j]) * g.d[j] * g.d[j].transpose();
    }
    C += std::pow(keep, static_cast<double>(t - tau)) * term;
  }
  return C;
}

Matrix covariance_recursive(const GenerationHistory& history, std::size_t t) {
  require_history(history, t);
  const auto n = static_cast<Eigen::Index>(history.n);
  instrumentation::note_square_matrix();
  Matrix C = Matrix::Identity(n, n);
  for (std::size_t tau = 0; tau < t; ++tau) {
    const ArchiveEntry& g = history.generations[tau];
    C = update_covariance(C, g.p_c, g.d, history.weights, history.c_1, history.c_mu,
                          history.c_cov());
  }
  return C;
}

CovarianceAccumulator::CovarianceAccumulator(Eigen::Index n)
    : second_(Matrix::Zero(n, n)), first_(Vector::Zero(n)) {
  instrumentation::note_square_matrix();
}

void CovarianceAccumulator::add(const Vector& s) {
  second_.selfadjointView<Eigen::Lower>().rankUpdate(s);
  first_ += s;
  ++count_;
}

Matrix CovarianceAccumulator::covariance() const {
  if (count_ < 2) throw std::invalid_argument("empirical covariance needs at least 2 samples");
  Matrix full = second_.selfadjointView<Eigen::Lower>();
  return full / static_cast<double>(count_);
}

Vector CovarianceAccumulator::mean() const {
  if (count_ == 0) throw std::invalid_argument("mean of zero samples");
  return first_ / static_cast<double>(count_);
}

Matrix empirical_covariance(std::span<const Vector> samples) {
  if (samples.size() < 2) throw std::invalid_argument("empirical covariance needs at least 2 samples");
  CovarianceAccumulator acc(samples.front().size());
  for (const Vector& s : samples) acc.add(s);
  return acc.covariance();
}

std::vector<CoordinateMoments> coordinate_moments(std::span<const Vector> samples) {
  if (samples.size() < 2) throw std::invalid_argument("moments need at least 2 samples");
  const Eigen::Index n = samples.front().size();
  const double N = static_cast<double>(samples.size());
  std::vector<CoordinateMoments> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    double mean = 0.0;
    for (const Vector& s : samples) mean += s[i];
    mean /= N;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (const Vector& s : samples) {
      const double c = s[i] - mean;
      const double c2 = c * c;
      m2 += c2;
      m3 += c2 * c;
      m4 += c2 * c2;
    }
    m2 /= N;
    m3 /= N;
    m4 /= N;
    auto& m = out[static_cast<std::size_t>(i)];
    m.mean = mean;
    m.variance = m2;
    m.skewness = m3 / std::pow(m2, 1.5);
    m.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return out;
}

double relative_frobenius(const Matrix& a, const Matrix& reference) {
  return (a - reference).norm() / std::max(1e-300, reference.norm());
}

namespace {

EquivalenceReport grade(const CovarianceAccumulator& acc, const Matrix& reference,
                        double tolerance) {
  EquivalenceReport report;
  report.sample_count = acc.count();
  report.tolerance = tolerance;
  report.rel_frobenius = relative_frobenius(acc.covariance(), reference);
  report.mean_max_abs = acc.mean().cwiseAbs().maxCoeff();
  report.mean_bound = 4.0 * std::sqrt(reference.trace() / static_cast<double>(acc.count()));
  report.pass = report.rel_frobenius <= tolerance && report.mean_max_abs <= report.mean_bound;
  return report;
}

}  // namespace

EquivalenceReport theorem1_check(const GenerationHistory& history, std::size_t t,
                                 const StrategyParams& params, std::size_t N, Rng& rng,
                                 bool allow_truncation, double tolerance) {
  require_history(history, t);
  if (params.n != history.n || params.c_1 != history.c_1 || params.c_mu != history.c_mu ||
      params.weights != history.weights) {
    throw std::invalid_argument("theorem1_check: params disagree with the history coefficients");
  }
  if (params.h < t && !allow_truncation) {
    throw std::invalid_argument("theorem1_check: h < t truncates the history; pass allow_truncation");
  }
  const Matrix reference = covariance_nonrecursive(history, t);

  Archive archive(params.h);
  for (std::size_t tau = 0; tau < t; ++tau) {
    const ArchiveEntry& g = history.generations[tau];
    archive.push(ArchiveEntry{
        std::vector<Vector>(g.d.begin(), g.d.begin() + static_cast<std::ptrdiff_t>(params.mu)),
        g.p_c, tau + 1});
  }

  CovarianceAccumulator acc(static_cast<Eigen::Index>(params.n));
  for (std::size_t k = 0; k < N; ++k) acc.add(sample_delta_mf(archive, t + 1, params, rng));
  return grade(acc, reference, tolerance);
}

EquivalenceReport gaussian_null_check(const Matrix& reference, std::size_t N, Rng& rng,
                                      double tolerance) {
  const CovarianceFactor factor = decompose_covariance(reference);
  CovarianceAccumulator acc(reference.rows());
  for (std::size_t k = 0; k < N; ++k) acc.add(factor.L * rng.normal_vector(reference.rows()));
  return grade(acc, reference, tolerance);
}

GenerationHistory record_vanilla_history(const Objective& objective, const StrategyParams& params,
                                         const Vector& m0, double sigma, std::size_t generations,
                                         Rng& rng) {
  GenerationHistory history;
  history.n = params.n;
  history.weights = params.weights;
  history.c_1 = params.c_1;
  history.c_mu = params.c_mu;
  history.generations.reserve(generations);

  Evaluator evaluator(objective.eval);
  StepSizeRule rule(StepSizeKind::constant, params.n);
  SearchState state = initial_state(Variant::vanilla, m0, sigma, params);
  Population pop;
  for (std::size_t g = 0; g < generations; ++g) {
    const Vector p_c_pre = state.p_c;
    state = step(std::move(state), params, evaluator, rule, rng, &pop);
    ArchiveEntry entry;
    entry.gen = g + 1;
    entry.p_c = params.rank_one_uses_updated_path ? state.p_c : p_c_pre;
    for (std::size_t j = 0; j < params.mu; ++j) entry.d.push_back(pop.members[j].d);
    history.generations.push_back(std::move(entry));
  }
  return history;
}

std::vector<double> eigen_spectrum(const Matrix& C) {
  if (!is_symmetric(C)) throw std::invalid_argument("eigen_spectrum: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(C, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigen_spectrum: eigensolver failed");
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double condition_number(std::span<const double> spectrum) {
  if (spectrum.empty()) throw std::invalid_argument("condition_number: empty spectrum");
  const auto [lo, hi] = std::minmax_element(spectrum.begin(), spectrum.end());
  if (!(*hi > 0.0)) throw std::invalid_argument("condition_number: no positive eigenvalue");
  return *hi / std::max(*lo, eigenvalue_floor(*hi));
}

double condition_number(const Matrix& C) { return condition_number(eigen_spectrum(C)); }

}  // namespace mfcma
