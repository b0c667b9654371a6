#include "mfcma/step_size.hpp"

#include <cmath>
#include <stdexcept>

namespace mfcma {

double expected_normal_norm(std::size_t n) {
  const double nd = static_cast<double>(n);
  return std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));
}

CsaState CsaState::initial(std::size_t n) {
  return {Vector::Zero(static_cast<Eigen::Index>(n)), expected_normal_norm(n)};
}

double csa_factor(double path_norm, double e_norm, double c_sigma, double d_sigma) {
  return std::exp((c_sigma / d_sigma) * (path_norm / e_norm - 1.0));
}

CsaOutcome csa_update(const CsaState& state, const Population& sorted,
                      std::span<const double> weights, double sigma, double c_sigma,
                      double d_sigma, std::size_t mu) {
  if (!sorted.sorted) throw std::invalid_argument("csa_update: population is not sorted");
  if (weights.size() > sorted.size()) throw std::invalid_argument("csa_update: too many weights");
  Vector delta_z = Vector::Zero(state.p_sigma.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto& z = sorted.members[i].z;
    if (!z) throw std::logic_error("csa_update: population has no source normals (matrix-free sampler)");
    delta_z += weights[i] * *z;
  }
  CsaOutcome out;
  out.state.e_norm = state.e_norm;
  out.state.p_sigma = (1.0 - c_sigma) * state.p_sigma +
                      std::sqrt(static_cast<double>(mu) * c_sigma * (2.0 - c_sigma)) * delta_z;
  out.sigma = sigma * csa_factor(out.state.p_sigma.norm(), state.e_norm, c_sigma, d_sigma);
  return out;
}

double ppmf_factor(double success_ratio, double theta, double d_sigma) {
  return std::exp((success_ratio - theta) / ((1.0 - theta) * d_sigma));
}

PpmfOutcome ppmf_update(const PpmfState& state, const Population& current, double sigma,
                        double d_sigma, double theta, Evaluator& evaluator) {
  PpmfOutcome out;
  out.sigma = sigma;
  out.state.previous_points.reserve(current.size());
  for (const Member& member : current.members) out.state.previous_points.push_back(member.x);
  if (state.previous_points.empty()) return out;

  Vector midpoint = Vector::Zero(state.previous_points.front().size());
  for (const Vector& x : state.previous_points) midpoint += x;
  midpoint /= static_cast<double>(state.previous_points.size());

  const double midpoint_fitness = evaluator(midpoint);
  out.midpoint_evaluated = true;
  std::size_t better = 0;
  for (const Member& member : current.members) {
    if (member.fitness < midpoint_fitness) ++better;
  }
  out.success_ratio = static_cast<double>(better) / static_cast<double>(current.size());
  out.sigma = sigma * ppmf_factor(out.success_ratio, theta, d_sigma);
  return out;
}

std::string_view to_string(StepSizeKind kind) noexcept {
  switch (kind) {
    case StepSizeKind::constant: return "constant";
    case StepSizeKind::csa: return "csa";
    case StepSizeKind::ppmf: return "ppmf";
  }
  return "unknown";
}

StepSizeRule::StepSizeRule(StepSizeKind kind, std::size_t n) : kind_(kind) {
  if (kind == StepSizeKind::csa) state_ = CsaState::initial(n);
  if (kind == StepSizeKind::ppmf) state_ = PpmfState{};
}

std::size_t StepSizeRule::extra_evaluations() const noexcept {
  const auto* ppmf = std::get_if<PpmfState>(&state_);
  return ppmf != nullptr && !ppmf->previous_points.empty() ? 1 : 0;
}

double StepSizeRule::apply(const Population& sorted, double sigma, const StrategyParams& params,
                           Evaluator& evaluator) {
  switch (kind_) {
    case StepSizeKind::constant:
      return constant_update(sigma);
    case StepSizeKind::csa: {
      auto out = csa_update(std::get<CsaState>(state_), sorted, params.weights, sigma,
                            params.c_sigma, params.d_sigma, params.mu);
      state_ = std::move(out.state);
      return out.sigma;
    }
    case StepSizeKind::ppmf: {
      auto out = ppmf_update(std::get<PpmfState>(state_), sorted, sigma, params.d_sigma,
                             params.theta, evaluator);
      state_ = std::move(out.state);
      return out.sigma;
    }
  }
  return sigma;
}

}  // namespace mfcma
