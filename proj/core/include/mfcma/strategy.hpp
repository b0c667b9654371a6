#pragma once

#include <cstddef>
#include <span>
#include <variant>

#include "mfcma/evaluator.hpp"
#include "mfcma/params.hpp"
#include "mfcma/population.hpp"
#include "mfcma/rng.hpp"
#include "mfcma/sampling_matrix_free.hpp"
#include "mfcma/step_size.hpp"
#include "mfcma/types.hpp"

namespace mfcma {

struct CovarianceState {
  Matrix C;
};

struct ArchiveState {
  Archive archive;
};

enum class Variant { vanilla, matrix_free };

struct SearchState {
  std::size_t t = 1;
  Vector m;
  double sigma = 1.0;
  Vector p_c;
  std::variant<CovarianceState, ArchiveState> variant;

  bool matrix_free() const noexcept { return std::holds_alternative<ArchiveState>(variant); }
};

/// t = 1, p_c = 0 and either C = I or an empty archive of capacity h.
SearchState initial_state(Variant variant, const Vector& m0, double sigma0,
                          const StrategyParams& params);

/// sum_{i<=mu} w_i d_i over the best members. Throws std::invalid_argument
/// for an unsorted population or one smaller than the weight vector.
Vector recombine_delta(const Population& sorted, std::span<const double> weights);

Vector update_mean(const Vector& m, double sigma, const Vector& delta);

/// (1 - c_c) p_c + sqrt(mu_eff c_c (2 - c_c)) delta
Vector update_evolution_path(const Vector& p_c, const Vector& delta, double c_c, double mu_eff);

/// One generation: sample, evaluate, sort, recombine, update mean and path,
/// update C or the archive, adapt sigma and advance t. Spends lambda
/// evaluations plus rule.extra_evaluations(). When sampled is non-null it
/// receives the sorted population of this generation.
SearchState step(SearchState state, const StrategyParams& params, Evaluator& evaluator,
                 StepSizeRule& rule, Rng& rng, Population* sampled = nullptr);

}  // namespace mfcma
