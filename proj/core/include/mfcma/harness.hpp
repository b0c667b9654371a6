#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mfcma/objectives.hpp"
#include "mfcma/params.hpp"
#include "mfcma/step_size.hpp"
#include "mfcma/strategy.hpp"
#include "mfcma/types.hpp"

namespace mfcma {

enum class Algorithm { vanilla_csa, vanilla_ppmf, vanilla_constant, mf_ppmf, mf_constant };

std::string_view to_string(Algorithm algorithm) noexcept;
Algorithm parse_algorithm(std::string_view text);
Variant variant_of(Algorithm algorithm) noexcept;
StepSizeKind step_size_of(Algorithm algorithm) noexcept;

struct TraceOptions {
  bool record_sigma = true;
  bool record_spectrum = false;
  // Difference vectors behind each matrix-free spectrum; 0 means the
  // generation's own lambda vectors. Extra vectors come from a separate
  // stream and never touch the optimization.
  std::size_t spectrum_sample_count = 0;
};

struct RunConfig {
  Algorithm algorithm = Algorithm::mf_ppmf;
  std::string objective = "ellipsoid";
  std::size_t n = 10;
  std::uint64_t seed = 1;
  std::size_t max_fes = 0;  // 0 means 10000 n
  // Defaults to [-0.2, 0.8] for the ellipsoid and [-100, 100] otherwise.
  std::optional<std::pair<double, double>> init_box;
  double sigma0 = 1.0;
  ParamOverrides overrides;
  TraceOptions trace;

  std::size_t budget() const noexcept { return max_fes == 0 ? 10000 * n : max_fes; }
  std::pair<double, double> box() const;
};

struct TraceRow {
  std::size_t t = 0;
  std::size_t evals = 0;
  double best = 0.0;
  double sigma = 0.0;
  std::vector<double> spectrum;  // non-increasing; empty unless recorded
};

struct RunRecord {
  RunConfig config;
  StrategyParams params;
  double optimum_value = 0.0;
  std::vector<TraceRow> rows;
  Vector best_x;
  double best_fitness = 0.0;
  double error = 0.0;
  std::size_t evals = 0;
};

/// Runs one seeded experiment until the next generation would exceed the
/// evaluation budget. Throws std::invalid_argument when the budget cannot
/// pay for a single generation.
RunRecord run_experiment(const RunConfig& config);

/// Variant for objectives outside the named suite.
RunRecord run_experiment(const RunConfig& config, const Objective& objective);

/// Run i uses seed Rng::derive_seed(base_seed, i). Results do not depend
/// on the thread count. Errors are rethrown as std::runtime_error carrying
/// the run index.
std::vector<RunRecord> repeat_runs(const RunConfig& config, std::size_t repetitions,
                                   std::uint64_t base_seed, std::size_t threads = 1);

}  // namespace mfcma
