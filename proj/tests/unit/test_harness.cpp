#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "mfcma/harness.hpp"
#include "mfcma/instrumentation.hpp"

using namespace mfcma;

namespace {

RunConfig small(Algorithm algorithm, const std::string& objective = "sphere") {
  RunConfig c;
  c.algorithm = algorithm;
  c.objective = objective;
  c.n = 5;
  c.seed = 7;
  c.max_fes = 2000;
  return c;
}

bool same_trajectory(const RunRecord& a, const RunRecord& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    if (a.rows[k].best != b.rows[k].best || a.rows[k].sigma != b.rows[k].sigma ||
        a.rows[k].evals != b.rows[k].evals) {
      return false;
    }
  }
  return a.best_x == b.best_x;
}

}  // namespace

TEST_CASE("algorithm names round-trip") {
  for (auto a : {Algorithm::vanilla_csa, Algorithm::vanilla_ppmf, Algorithm::vanilla_constant,
                 Algorithm::mf_ppmf, Algorithm::mf_constant}) {
    CHECK(parse_algorithm(to_string(a)) == a);
  }
  CHECK(variant_of(Algorithm::mf_ppmf) == Variant::matrix_free);
  CHECK(step_size_of(Algorithm::vanilla_csa) == StepSizeKind::csa);
  CHECK_THROWS_AS(parse_algorithm("mf-csa"), std::invalid_argument);
}

TEST_CASE("default budget and box") {
  RunConfig c;
  c.n = 7;
  CHECK(c.budget() == 70000);
  CHECK(c.box() == std::pair{-0.2, 0.8});
  c.objective = "rastrigin";
  CHECK(c.box() == std::pair{-100.0, 100.0});
}

TEST_CASE("same seed, same run") {
  for (auto a : {Algorithm::vanilla_csa, Algorithm::mf_ppmf}) {
    const auto c = small(a);
    CHECK(same_trajectory(run_experiment(c), run_experiment(c)));
  }
  auto c = small(Algorithm::mf_ppmf);
  const auto first = run_experiment(c);
  c.seed = 8;
  CHECK_FALSE(same_trajectory(first, run_experiment(c)));
}

TEST_CASE("matrix-free constant-sigma run improves on the sphere") {
  auto c = small(Algorithm::mf_constant);
  c.sigma0 = 10.0;
  const auto r = run_experiment(c);
  REQUIRE(!r.rows.empty());
  CHECK(r.rows.back().best < r.rows.front().best);
  CHECK(std::isfinite(r.best_fitness));
  CHECK(r.best_x.size() == 5);
}

TEST_CASE("budget is never exceeded and best never increases") {
  for (auto a : {Algorithm::vanilla_csa, Algorithm::vanilla_ppmf, Algorithm::vanilla_constant,
                 Algorithm::mf_ppmf, Algorithm::mf_constant}) {
    for (std::size_t budget : {20u, 21u, 55u, 999u}) {
      auto c = small(a, "rosenbrock");
      c.max_fes = budget;
      const auto r = run_experiment(c);
      CHECK(r.evals <= budget);
      CHECK(r.evals == r.rows.back().evals);
      for (std::size_t k = 1; k < r.rows.size(); ++k) {
        CHECK(r.rows[k].best <= r.rows[k - 1].best);
        CHECK(r.rows[k].t == r.rows[k - 1].t + 1);
      }
    }
  }
}

TEST_CASE("PPMF costs lambda+1 evaluations after the first generation") {
  const auto r = run_experiment(small(Algorithm::mf_ppmf));
  const std::size_t lambda = r.params.lambda;
  REQUIRE(r.rows.size() > 3);
  CHECK(r.rows[0].evals == lambda);
  for (std::size_t k = 1; k < r.rows.size(); ++k) {
    CHECK(r.rows[k].evals - r.rows[k - 1].evals == lambda + 1);
  }
  const auto csa = run_experiment(small(Algorithm::vanilla_csa));
  for (std::size_t k = 1; k < csa.rows.size(); ++k) {
    CHECK(csa.rows[k].evals - csa.rows[k - 1].evals == lambda);
  }
}

TEST_CASE("a budget below one generation is rejected") {
  auto c = small(Algorithm::mf_ppmf);
  c.max_fes = 19;
  CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
  c.max_fes = 20;
  CHECK(run_experiment(c).rows.size() == 1);
  c.sigma0 = 0.0;
  CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
}

TEST_CASE("repeat_runs is independent of the thread count") {
  const auto c = small(Algorithm::mf_ppmf);
  const auto seq = repeat_runs(c, 5, 11, 1);
  const auto par = repeat_runs(c, 5, 11, 3);
  REQUIRE(seq.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(seq[i].config.seed == Rng::derive_seed(11, i));
    CHECK(same_trajectory(seq[i], par[i]));
  }
  CHECK_FALSE(same_trajectory(seq[0], seq[1]));
}

TEST_CASE("repeat_runs reports the failing run index") {
  auto c = small(Algorithm::mf_ppmf);
  c.max_fes = 3;
  try {
    repeat_runs(c, 2, 1, 2);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).rfind("run 0: ", 0) == 0);
  }
  CHECK_THROWS_AS(repeat_runs(c, 0, 1), std::invalid_argument);
}

TEST_CASE("spectrum rows are non-increasing with n entries") {
  for (auto a : {Algorithm::vanilla_constant, Algorithm::mf_constant}) {
    auto c = small(a, "ellipsoid");
    c.trace.record_spectrum = true;
    c.max_fes = 400;
    const auto r = run_experiment(c);
    for (const auto& row : r.rows) {
      REQUIRE(row.spectrum.size() == 5);
      for (std::size_t i = 1; i < 5; ++i) CHECK(row.spectrum[i] <= row.spectrum[i - 1]);
      CHECK(row.spectrum.back() >= 0.0);
    }
  }
}

TEST_CASE("extra spectrum samples leave the optimization untouched") {
  auto c = small(Algorithm::mf_ppmf, "ellipsoid");
  const auto plain = run_experiment(c);
  c.trace.record_spectrum = true;
  c.trace.spectrum_sample_count = 200;
  const auto traced = run_experiment(c);
  CHECK(same_trajectory(plain, traced));
}

TEST_CASE("matrix-free runs never build or factor an n x n matrix") {
  instrumentation::reset();
  auto c = small(Algorithm::mf_ppmf, "ellipsoid");
  c.n = 40;
  c.max_fes = 40 * 200;
  run_experiment(c);
  const auto counters = instrumentation::snapshot();
  CHECK(counters.decompositions == 0);
  CHECK(counters.square_matrices == 0);

  c.algorithm = Algorithm::vanilla_csa;
  run_experiment(c);
  CHECK(instrumentation::snapshot().decompositions > 0);
}
