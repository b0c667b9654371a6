#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "mfcma/evaluator.hpp"
#include "mfcma/params.hpp"
#include "mfcma/population.hpp"
#include "mfcma/types.hpp"

namespace mfcma {

/// sqrt(n) (1 - 1/(4n) + 1/(21 n^2)), approximating E||N(0, I_n)||.
double expected_normal_norm(std::size_t n);

struct CsaState {
  Vector p_sigma;
  double e_norm = 0.0;

  static CsaState initial(std::size_t n);
};

struct CsaOutcome {
  CsaState state;
  double sigma = 0.0;
};

/// Cumulative step-size adaptation over the z vectors of the mu best
/// members. The path coefficient is sqrt(mu c_sigma (2 - c_sigma)).
/// Throws std::logic_error when the population carries no z vectors, which
/// is always the case for the matrix-free sampler.
CsaOutcome csa_update(const CsaState& state, const Population& sorted,
                      std::span<const double> weights, double sigma, double c_sigma,
                      double d_sigma, std::size_t mu);

/// exp((c_sigma / d_sigma) (path_norm / e_norm - 1))
double csa_factor(double path_norm, double e_norm, double c_sigma, double d_sigma);

struct PpmfState {
  std::vector<Vector> previous_points;  // empty before the first generation
};

struct PpmfOutcome {
  PpmfState state;
  double sigma = 0.0;
  double success_ratio = 0.0;
  bool midpoint_evaluated = false;
};

/// Previous population midpoint fitness rule. Evaluates the unweighted mean
/// of the previous population once, counts current members strictly better
/// than it and rescales sigma. Without a previous population sigma is kept
/// and nothing is evaluated.
PpmfOutcome ppmf_update(const PpmfState& state, const Population& current, double sigma,
                        double d_sigma, double theta, Evaluator& evaluator);

/// exp((p_s - theta) / ((1 - theta) d_sigma))
double ppmf_factor(double success_ratio, double theta, double d_sigma);

constexpr double constant_update(double sigma) noexcept { return sigma; }

enum class StepSizeKind { constant, csa, ppmf };

std::string_view to_string(StepSizeKind kind) noexcept;

/// A step-size rule together with its per-run state.
class StepSizeRule {
 public:
  StepSizeRule(StepSizeKind kind, std::size_t n);

  StepSizeKind kind() const noexcept { return kind_; }

  /// Objective evaluations the next apply() will spend.
  std::size_t extra_evaluations() const noexcept;

  double apply(const Population& sorted, double sigma, const StrategyParams& params,
               Evaluator& evaluator);

  const CsaState* csa_state() const noexcept { return std::get_if<CsaState>(&state_); }
  const PpmfState* ppmf_state() const noexcept { return std::get_if<PpmfState>(&state_); }

 private:
  StepSizeKind kind_;
  std::variant<std::monostate, CsaState, PpmfState> state_;
};

}  // namespace mfcma
