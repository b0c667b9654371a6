#include "mfcma/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mfcma/instrumentation.hpp"
#include "mfcma/sampling_vanilla.hpp"

namespace mfcma {

// ---------------------------------------------------------------------------
// Parameters

double effective_mu(const std::vector<double>& weights) {
  if (weights.empty()) return 0.0;
  if (std::all_of(weights.begin(), weights.end(),
                  [&](double w) { return w == weights.front(); })) {
    return static_cast<double>(weights.size());
  }
  double sum_sq = 0.0;
  for (double w : weights) sum_sq += w * w;
  return 1.0 / sum_sq;
}

void StrategyParams::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("invalid params: " + what); };
  if (n < 2) fail("n must be at least 2");
  if (lambda < 1) fail("lambda must be positive");
  if (mu < 1 || mu > lambda) fail("mu must satisfy 1 <= mu <= lambda");
  if (weights.size() != mu) fail("weights must have mu entries");
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) fail("weights must be non-negative");
    if (i > 0 && weights[i] > weights[i - 1]) fail("weights must be non-increasing");
    sum += weights[i];
  }
  if (std::abs(sum - 1.0) > 1e-12) fail("weights must sum to 1");
  if (!(c_c > 0.0 && c_c <= 1.0)) fail("c_c must lie in (0, 1]");
  if (!(c_1 >= 0.0 && c_1 <= 1.0)) fail("c_1 must lie in [0, 1]");
  if (!(c_mu >= 0.0 && c_mu <= 1.0)) fail("c_mu must lie in [0, 1]");
  if (std::abs(c_cov - (c_1 + c_mu)) > 1e-15) fail("c_cov must equal c_1 + c_mu");
  if (!(c_cov <= 1.0)) fail("c_1 + c_mu must not exceed 1");
  if (!(c_sigma > 0.0 && c_sigma <= 1.0)) fail("c_sigma must lie in (0, 1]");
  if (!(d_sigma > 0.0)) fail("d_sigma must be positive");
  if (h < 1) fail("h must be positive");
  if (!(theta > 0.0 && theta < 1.0)) fail("theta must lie in (0, 1)");
}

StrategyParams derive_params(std::size_t n, const ParamOverrides& o) {
  if (n < 2) throw std::invalid_argument("invalid params: n must be at least 2");
  StrategyParams p;
  p.n = n;
  p.lambda = o.lambda.value_or(4 * n);
  p.mu = o.mu.value_or(p.lambda / 2);
  if (o.weights) {
    p.weights = *o.weights;
    if (!o.mu) p.mu = p.weights.size();
  } else if (o.log_weights) {
    p.weights.resize(p.mu);
    for (std::size_t i = 0; i < p.mu; ++i) {
      p.weights[i] = std::log(static_cast<double>(p.mu) + 0.5) - std::log(static_cast<double>(i + 1));
    }
    const double total = std::accumulate(p.weights.begin(), p.weights.end(), 0.0);
    for (double& w : p.weights) w /= total;
  } else {
    p.weights.assign(p.mu, 1.0 / static_cast<double>(p.mu));
  }
  p.mu_eff = effective_mu(p.weights);

  const double nd = static_cast<double>(n);
  const double me = p.mu_eff;
  p.c_c = o.c_c.value_or((4.0 + me / nd) / (nd + 4.0 + 2.0 * me / nd));
  p.c_1 = o.c_1.value_or(2.0 / ((nd + 1.3) * (nd + 1.3) + me));
  p.c_mu = o.c_mu.value_or(
      std::min(1.0 - p.c_1, 2.0 * (me - 2.0 + 1.0 / me) / ((nd + 2.0) * (nd + 2.0) + me)));
  p.c_cov = p.c_1 + p.c_mu;
  p.c_sigma = o.c_sigma.value_or((me + 2.0) / (nd + me + 5.0));
  p.d_sigma = o.d_sigma.value_or(
      1.0 + 2.0 * std::max(0.0, std::sqrt((me - 1.0) / (nd + 1.0)) - 1.0) + p.c_sigma);
  p.h = o.h.value_or(static_cast<std::size_t>(std::lround(20.0 + 1.4 * nd)));
  p.theta = o.theta.value_or(0.2);
  p.rank_one_uses_updated_path = o.rank_one_uses_updated_path.value_or(false);
  p.cap_isotropic_exponent = o.cap_isotropic_exponent.value_or(false);
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// Population

void Population::sort_by_fitness() {
  std::stable_sort(members.begin(), members.end(),
                   [](const Member& a, const Member& b) { return a.fitness < b.fitness; });
  sorted = true;
}

// ---------------------------------------------------------------------------
// Generation loop

SearchState initial_state(Variant variant, const Vector& m0, double sigma0,
                          const StrategyParams& params) {
  if (static_cast<std::size_t>(m0.size()) != params.n) {
    throw std::invalid_argument("initial mean has wrong dimension");
  }
  if (!(sigma0 > 0.0)) throw std::invalid_argument("sigma0 must be positive");
  const auto n = static_cast<Eigen::Index>(params.n);
  SearchState s{.t = 1,
                .m = m0,
                .sigma = sigma0,
                .p_c = Vector::Zero(n),
                .variant = ArchiveState{Archive(params.h)}};
  if (variant == Variant::vanilla) {
    instrumentation::note_square_matrix();
    s.variant = CovarianceState{Matrix::Identity(n, n)};
  }
  return s;
}

Vector recombine_delta(const Population& sorted, std::span<const double> weights) {
  if (!sorted.sorted) throw std::invalid_argument("recombine_delta: population is not sorted");
  if (weights.size() > sorted.size() || weights.empty()) {
    throw std::invalid_argument("recombine_delta: weight count exceeds population size");
  }
  Vector delta = Vector::Zero(sorted.members.front().d.size());
  for (std::size_t i = 0; i < weights.size(); ++i) delta += weights[i] * sorted.members[i].d;
  return delta;
}

Vector update_mean(const Vector& m, double sigma, const Vector& delta) { return m + sigma * delta; }

Vector update_evolution_path(const Vector& p_c, const Vector& delta, double c_c, double mu_eff) {
  return (1.0 - c_c) * p_c + std::sqrt(mu_eff * c_c * (2.0 - c_c)) * delta;
}

namespace {

std::vector<Vector> best_differences(const Population& sorted, std::size_t mu) {
  std::vector<Vector> d;
  d.reserve(mu);
  for (std::size_t i = 0; i < mu; ++i) d.push_back(sorted.members[i].d);
  return d;
}

}  // namespace

SearchState step(SearchState state, const StrategyParams& params, Evaluator& evaluator,
                 StepSizeRule& rule, Rng& rng, Population* sampled) {
  Population pop;
  if (auto* cov = std::get_if<CovarianceState>(&state.variant)) {
    const CovarianceFactor factor = decompose_covariance(cov->C);
    pop = sample_population_vanilla(state.m, state.sigma, factor.L, params.lambda, rng);
  } else {
    const auto& archive = std::get<ArchiveState>(state.variant).archive;
    pop = sample_population_mf(archive, state.t, state.m, state.sigma, params, rng);
  }

  for (Member& member : pop.members) member.fitness = evaluator(member.x);
  pop.sort_by_fitness();

  const Vector delta = recombine_delta(pop, params.weights);
  const Vector p_c_next = update_evolution_path(state.p_c, delta, params.c_c, params.mu_eff);
  const Vector& rank_one_path = params.rank_one_uses_updated_path ? p_c_next : state.p_c;

  std::vector<Vector> best_d = best_differences(pop, params.mu);
  if (auto* cov = std::get_if<CovarianceState>(&state.variant)) {
    cov->C = update_covariance(cov->C, rank_one_path, best_d, params.weights, params.c_1,
                               params.c_mu, params.c_cov);
  } else {
    auto& archive = std::get<ArchiveState>(state.variant).archive;
    archive.push(ArchiveEntry{std::move(best_d), rank_one_path, state.t});
  }

  state.m = update_mean(state.m, state.sigma, delta);
  state.p_c = p_c_next;

  const double sigma_next = rule.apply(pop, state.sigma, params, evaluator);
  if (!(sigma_next > 0.0) || !std::isfinite(sigma_next)) {
    throw std::runtime_error("step size left (0, inf): " + std::to_string(sigma_next));
  }
  state.sigma = sigma_next;
  ++state.t;

  if (sampled != nullptr) *sampled = std::move(pop);
  return state;
}

}  // namespace mfcma
