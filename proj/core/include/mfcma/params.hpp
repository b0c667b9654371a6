#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace mfcma {

/// Scalar hyperparameters shared by the matrix-based and matrix-free
/// strategies. c_cov is always c_1 + c_mu.
struct StrategyParams {
  std::size_t n = 0;
  std::size_t lambda = 0;
  std::size_t mu = 0;
  std::vector<double> weights;
  double mu_eff = 0.0;
  double c_c = 0.0;
  double c_1 = 0.0;
  double c_mu = 0.0;
  double c_cov = 0.0;
  double c_sigma = 0.0;
  double d_sigma = 0.0;
  std::size_t h = 0;
  double theta = 0.0;

  // Use p_c^{(t+1)} instead of p_c^{(t)} in the rank-one term and in the
  // archived path.
  bool rank_one_uses_updated_path = false;
  // Cap the isotropic decay exponent of the matrix-free sampler at h.
  bool cap_isotropic_exponent = false;

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

struct ParamOverrides {
  std::optional<std::size_t> lambda;
  std::optional<std::size_t> mu;
  std::optional<std::vector<double>> weights;
  bool log_weights = false;
  std::optional<double> c_c;
  std::optional<double> c_1;
  std::optional<double> c_mu;
  std::optional<double> c_sigma;
  std::optional<double> d_sigma;
  std::optional<std::size_t> h;
  std::optional<double> theta;
  std::optional<bool> rank_one_uses_updated_path;
  std::optional<bool> cap_isotropic_exponent;
};

/// Defaults: lambda = 4n, mu = lambda/2, equal weights, h = round(20 + 1.4n),
/// theta = 0.2, learning rates from the standard CMA-ES formulas evaluated
/// at the (possibly overridden) mu_eff.
StrategyParams derive_params(std::size_t n, const ParamOverrides& overrides = {});

/// 1 / sum(w_i^2); exactly weights.size() when all weights are equal.
double effective_mu(const std::vector<double>& weights);

}  // namespace mfcma
