#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mfcma/evaluator.hpp"
#include "mfcma/objectives.hpp"
#include "mfcma/strategy.hpp"
#include "test_support.hpp"

using namespace mfcma;
using mfcma::testing::population_of;
using mfcma::testing::vec;

TEST_CASE("recombine_delta examples") {
  const std::vector<double> half{0.5, 0.5};
  CHECK(recombine_delta(population_of({vec({2, 0}), vec({0, 4}), vec({9, 9})}), half) == vec({1, 2}));

  const std::vector<double> first{1.0, 0.0, 0.0};
  CHECK(recombine_delta(population_of({vec({3, 1}), vec({5, 5}), vec({7, 7})}), first) == vec({3, 1}));

  const std::vector<double> equal(4, 0.25);
  const Vector v = vec({0.5, -1.5, 2.0});
  CHECK(recombine_delta(population_of({v, v, v, v, v}), equal).isApprox(v, 1e-15));
}

TEST_CASE("recombine_delta rejects an unsorted population") {
  auto pop = population_of({vec({1, 0}), vec({0, 1})});
  pop.sorted = false;
  const std::vector<double> w{0.5, 0.5};
  CHECK_THROWS_AS(recombine_delta(pop, w), std::invalid_argument);
}

TEST_CASE("update_mean examples") {
  CHECK(update_mean(vec({1, 2}), 3.0, Vector::Zero(2)) == vec({1, 2}));
  CHECK(update_mean(Vector::Zero(2), 1.0, vec({1, 2})) == vec({1, 2}));
  CHECK(update_mean(vec({1, 1}), 0.5, vec({2, -2})) == vec({2, 0}));
}

TEST_CASE("update_evolution_path examples") {
  CHECK(update_evolution_path(Vector::Zero(3), Vector::Zero(3), 0.3, 5.0) == Vector::Zero(3));
  const Vector p = update_evolution_path(Vector::Zero(2), vec({1, 0}), 0.5, 1.0);
  CHECK(p[0] == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
  CHECK(p[1] == 0.0);
  CHECK(update_evolution_path(vec({5, 5}), vec({1, 0}), 1.0, 4.0) == vec({2, 0}));
}

TEST_CASE("population sort is stable and permutes d with x") {
  Population pop;
  const double fit[] = {3.0, 1.0, 3.0, 0.5, 1.0};
  for (std::size_t i = 0; i < 5; ++i) {
    Member m;
    m.d = Vector::Constant(2, static_cast<double>(i));
    m.x = m.d * 2.0;
    m.z = m.d * 3.0;
    m.fitness = fit[i];
    m.index = i;
    pop.members.push_back(m);
  }
  pop.sort_by_fitness();
  const std::size_t expected[] = {3, 1, 4, 0, 2};
  for (std::size_t k = 0; k < 5; ++k) {
    const Member& m = pop.members[k];
    CHECK(m.index == expected[k]);
    CHECK(m.x == m.d * 2.0);
    CHECK(*m.z == m.d * 3.0);
    if (k > 0) CHECK(pop.members[k - 1].fitness <= m.fitness);
  }
}

namespace {

struct Fixture {
  StrategyParams params;
  Evaluator evaluator{quadratic_eval};
  Rng rng{11};

  explicit Fixture(std::size_t n = 5) : params(derive_params(n)) {}

  SearchState start(Variant v, double sigma = 0.3) {
    return initial_state(v, Vector::Constant(static_cast<Eigen::Index>(params.n), 0.4), sigma, params);
  }
};

}  // namespace

TEST_CASE("initial state") {
  Fixture f;
  const auto vanilla = f.start(Variant::vanilla);
  CHECK(vanilla.t == 1);
  CHECK(vanilla.p_c == Vector::Zero(5));
  CHECK(std::get<CovarianceState>(vanilla.variant).C == Matrix::Identity(5, 5));
  const auto mf = f.start(Variant::matrix_free);
  CHECK(mf.matrix_free());
  CHECK(std::get<ArchiveState>(mf.variant).archive.empty());
  CHECK(std::get<ArchiveState>(mf.variant).archive.capacity() == f.params.h);
  CHECK_THROWS_AS(initial_state(Variant::vanilla, Vector::Zero(4), 1.0, f.params), std::invalid_argument);
  CHECK_THROWS_AS(initial_state(Variant::vanilla, Vector::Zero(5), 0.0, f.params), std::invalid_argument);
}

TEST_CASE("step spends lambda evaluations, plus one for PPMF after warm-up") {
  for (Variant v : {Variant::vanilla, Variant::matrix_free}) {
    Fixture f;
    StepSizeRule csa(StepSizeKind::csa, 5);
    StepSizeRule ppmf(StepSizeKind::ppmf, 5);
    auto state = f.start(v);
    if (v == Variant::vanilla) {
      const auto before = f.evaluator.evaluations();
      state = step(state, f.params, f.evaluator, csa, f.rng);
      CHECK(f.evaluator.evaluations() - before == f.params.lambda);
    }
    state = f.start(v);
    auto before = f.evaluator.evaluations();
    CHECK(ppmf.extra_evaluations() == 0);
    state = step(state, f.params, f.evaluator, ppmf, f.rng);
    CHECK(f.evaluator.evaluations() - before == f.params.lambda);
    for (int g = 0; g < 5; ++g) {
      CHECK(ppmf.extra_evaluations() == 1);
      before = f.evaluator.evaluations();
      state = step(state, f.params, f.evaluator, ppmf, f.rng);
      CHECK(f.evaluator.evaluations() - before == f.params.lambda + 1);
    }
  }
}

TEST_CASE("constant rule keeps sigma; t advances by one") {
  for (Variant v : {Variant::vanilla, Variant::matrix_free}) {
    Fixture f;
    StepSizeRule rule(StepSizeKind::constant, 5);
    auto state = f.start(v, 0.37);
    for (std::size_t g = 1; g <= 8; ++g) {
      state = step(state, f.params, f.evaluator, rule, f.rng);
      CHECK(state.sigma == 0.37);
      CHECK(state.t == g + 1);
    }
  }
}

TEST_CASE("every member reconstructs as m + sigma d") {
  for (Variant v : {Variant::vanilla, Variant::matrix_free}) {
    Fixture f;
    StepSizeRule rule(StepSizeKind::ppmf, 5);
    auto state = f.start(v);
    Population pop;
    for (int g = 0; g < 6; ++g) {
      const Vector m = state.m;
      const double sigma = state.sigma;
      state = step(state, f.params, f.evaluator, rule, f.rng, &pop);
      REQUIRE(pop.sorted);
      for (const Member& member : pop.members) CHECK(member.x == m + sigma * member.d);
      CHECK(pop.members.front().z.has_value() == (v == Variant::vanilla));
    }
  }
}

TEST_CASE("archive stores the pre-update evolution path") {
  Fixture f;
  StepSizeRule rule(StepSizeKind::constant, 5);
  auto state = f.start(Variant::matrix_free);
  std::vector<Vector> paths{state.p_c};
  for (int g = 0; g < 4; ++g) {
    state = step(state, f.params, f.evaluator, rule, f.rng);
    paths.push_back(state.p_c);
  }
  const auto& entries = std::get<ArchiveState>(state.variant).archive.entries();
  REQUIRE(entries.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(entries[i].gen == i + 1);
    CHECK(entries[i].p_c == paths[i]);
    CHECK(entries[i].d.size() == f.params.mu);
  }
  CHECK(entries[0].p_c == Vector::Zero(5));
}

TEST_CASE("rank-one override archives the updated path") {
  ParamOverrides o;
  o.rank_one_uses_updated_path = true;
  Fixture f;
  f.params = derive_params(5, o);
  StepSizeRule rule(StepSizeKind::constant, 5);
  auto state = f.start(Variant::matrix_free);
  state = step(state, f.params, f.evaluator, rule, f.rng);
  CHECK(std::get<ArchiveState>(state.variant).archive.entries().back().p_c == state.p_c);
}

TEST_CASE("vanilla covariance after one step matches the explicit update") {
  Fixture f;
  StepSizeRule rule(StepSizeKind::constant, 5);
  auto state = f.start(Variant::vanilla);
  Population pop;
  state = step(state, f.params, f.evaluator, rule, f.rng, &pop);
  // p_c^{(1)} = 0, C^{(1)} = I
  Matrix expected = (1.0 - f.params.c_cov) * Matrix::Identity(5, 5);
  for (std::size_t i = 0; i < f.params.mu; ++i) {
    expected += f.params.c_mu * f.params.weights[i] * pop.members[i].d * pop.members[i].d.transpose();
  }
  CHECK((std::get<CovarianceState>(state.variant).C - expected).norm() < 1e-13);
}

TEST_CASE("determinism: identical seeds give bitwise-identical trajectories") {
  for (Variant v : {Variant::vanilla, Variant::matrix_free}) {
    Fixture a, b;
    StepSizeRule ra(StepSizeKind::ppmf, 5), rb(StepSizeKind::ppmf, 5);
    auto sa = a.start(v), sb = b.start(v);
    for (int g = 0; g < 10; ++g) {
      sa = step(sa, a.params, a.evaluator, ra, a.rng);
      sb = step(sb, b.params, b.evaluator, rb, b.rng);
    }
    CHECK(sa.m == sb.m);
    CHECK(sa.sigma == sb.sigma);
    CHECK(sa.p_c == sb.p_c);
    CHECK(a.evaluator.best_fitness() == b.evaluator.best_fitness());
  }
}

TEST_CASE("property: sigma stays positive and t increases under every rule") {
  for (StepSizeKind kind : {StepSizeKind::constant, StepSizeKind::csa, StepSizeKind::ppmf}) {
    for (Variant v : {Variant::vanilla, Variant::matrix_free}) {
      if (kind == StepSizeKind::csa && v == Variant::matrix_free) continue;
      Fixture f(4);
      StepSizeRule rule(kind, 4);
      auto state = f.start(v, 2.0);
      for (int g = 0; g < 60; ++g) {
        const auto t = state.t;
        state = step(state, f.params, f.evaluator, rule, f.rng);
        CHECK(state.sigma > 0.0);
        CHECK(state.t == t + 1);
      }
    }
  }
}

TEST_CASE("CSA cannot drive the matrix-free sampler") {
  Fixture f;
  StepSizeRule rule(StepSizeKind::csa, 5);
  auto state = f.start(Variant::matrix_free);
  CHECK_THROWS_AS(step(state, f.params, f.evaluator, rule, f.rng), std::logic_error);
}

TEST_CASE("objective failure propagates out of step") {
  Fixture f;
  Evaluator failing([](const Vector&) -> double { throw std::runtime_error("boom"); });
  StepSizeRule rule(StepSizeKind::constant, 5);
  CHECK_THROWS_AS(step(f.start(Variant::vanilla), f.params, failing, rule, f.rng), std::runtime_error);
}
