#include "mfcma/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "mfcma/evaluator.hpp"
#include "mfcma/rng.hpp"
#include "mfcma/verification.hpp"

namespace mfcma {

namespace {

struct AlgorithmInfo {
  Algorithm algorithm;
  std::string_view name;
  Variant variant;
  StepSizeKind step_size;
};

constexpr AlgorithmInfo kAlgorithms[] = {
    {Algorithm::vanilla_csa, "vanilla-csa", Variant::vanilla, StepSizeKind::csa},
    {Algorithm::vanilla_ppmf, "vanilla-ppmf", Variant::vanilla, StepSizeKind::ppmf},
    {Algorithm::vanilla_constant, "vanilla-constant", Variant::vanilla, StepSizeKind::constant},
    {Algorithm::mf_ppmf, "mf-ppmf", Variant::matrix_free, StepSizeKind::ppmf},
    {Algorithm::mf_constant, "mf-constant", Variant::matrix_free, StepSizeKind::constant},
};

const AlgorithmInfo& info(Algorithm a) noexcept {
  for (const auto& entry : kAlgorithms) {
    if (entry.algorithm == a) return entry;
  }
  return kAlgorithms[0];
}

// Keeps spectrum draws off the optimization stream.
constexpr std::uint64_t kSpectrumStream = 0x5bec7a11ULL;

}  // namespace

std::string_view to_string(Algorithm algorithm) noexcept { return info(algorithm).name; }

Algorithm parse_algorithm(std::string_view text) {
  for (const auto& entry : kAlgorithms) {
    if (entry.name == text) return entry.algorithm;
  }
  throw std::invalid_argument("unknown algorithm: " + std::string(text));
}

Variant variant_of(Algorithm algorithm) noexcept { return info(algorithm).variant; }
StepSizeKind step_size_of(Algorithm algorithm) noexcept { return info(algorithm).step_size; }

std::pair<double, double> RunConfig::box() const {
  if (init_box) return *init_box;
  if (objective == "ellipsoid" || objective == "quadratic") return {-0.2, 0.8};
  return {-100.0, 100.0};
}

RunRecord run_experiment(const RunConfig& config) {
  return run_experiment(config, find_objective(config.objective, config.n));
}

RunRecord run_experiment(const RunConfig& config, const Objective& objective) {
  if (objective.dim != config.n) throw std::invalid_argument("objective dimension differs from n");
  const StrategyParams params = derive_params(config.n, config.overrides);
  const std::size_t budget = config.budget();
  if (budget < params.lambda) {
    throw std::invalid_argument("budget of " + std::to_string(budget) +
                                " evaluations cannot pay for one generation of " +
                                std::to_string(params.lambda));
  }
  const auto [lo, hi] = config.box();
  if (!(lo < hi)) throw std::invalid_argument("initial box is degenerate");
  if (!(config.sigma0 > 0.0)) throw std::invalid_argument("sigma0 must be positive");

  Rng rng(config.seed);
  Rng spectrum_rng(Rng::derive_seed(config.seed, kSpectrumStream));
  const auto n = static_cast<Eigen::Index>(config.n);
  Vector m0(n);
  for (Eigen::Index i = 0; i < n; ++i) m0[i] = rng.uniform(lo, hi);

  SearchState state = initial_state(variant_of(config.algorithm), m0, config.sigma0, params);
  StepSizeRule rule(step_size_of(config.algorithm), config.n);
  Evaluator evaluator(objective.eval);

  RunRecord record;
  record.config = config;
  record.params = params;
  record.optimum_value = objective.optimum_value;

  const TraceOptions& trace = config.trace;
  Population pop;
  while (evaluator.evaluations() + params.lambda + rule.extra_evaluations() <= budget) {
    TraceRow row;
    std::vector<Vector> extra;
    if (trace.record_spectrum) {
      if (const auto* cov = std::get_if<CovarianceState>(&state.variant)) {
        row.spectrum = eigen_spectrum(cov->C);
      } else if (trace.spectrum_sample_count > params.lambda) {
        const auto& archive = std::get<ArchiveState>(state.variant).archive;
        for (std::size_t k = params.lambda; k < trace.spectrum_sample_count; ++k) {
          extra.push_back(sample_delta_mf(archive, state.t, params, spectrum_rng));
        }
      }
    }

    row.t = state.t;
    row.sigma = state.sigma;
    state = step(std::move(state), params, evaluator, rule, rng, &pop);
    row.evals = evaluator.evaluations();
    row.best = evaluator.best_fitness();

    if (trace.record_spectrum && state.matrix_free()) {
      for (const Member& member : pop.members) extra.push_back(member.d);
      row.spectrum = eigen_spectrum(empirical_covariance(extra));
    }
    record.rows.push_back(std::move(row));
  }

  record.best_x = evaluator.best_x();
  record.best_fitness = evaluator.best_fitness();
  record.error = record.best_fitness - objective.optimum_value;
  record.evals = evaluator.evaluations();
  return record;
}

std::vector<RunRecord> repeat_runs(const RunConfig& config, std::size_t repetitions,
                                   std::uint64_t base_seed, std::size_t threads) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  std::vector<RunRecord> records(repetitions);
  std::vector<std::exception_ptr> errors(repetitions);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < repetitions; i = next++) {
      try {
        RunConfig run = config;
        run.seed = Rng::derive_seed(base_seed, i);
        records[i] = run_experiment(run);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  threads = std::clamp<std::size_t>(threads, 1, repetitions);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < repetitions; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error("run " + std::to_string(i) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace mfcma
