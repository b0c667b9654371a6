#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mfcma/evaluator.hpp"
#include "mfcma/objectives.hpp"
#include "test_support.hpp"

using namespace mfcma;
using mfcma::testing::vec;

TEST_CASE("quadratic examples") {
  CHECK(quadratic_eval(Vector::Zero(7)) == 0.0);
  CHECK(quadratic_eval(vec({1, 1})) == 1000001.0);
  CHECK(quadratic_eval(vec({1, 1, 1})) == doctest::Approx(1001001.0).epsilon(1e-15));
  CHECK_THROWS_AS(quadratic_eval(vec({1})), std::invalid_argument);
}

TEST_CASE("quadratic coefficients span exactly six decades") {
  for (std::size_t n : {2u, 5u, 30u, 50u}) {
    const auto dim = static_cast<Eigen::Index>(n);
    Vector first = Vector::Zero(dim), last = Vector::Zero(dim);
    first[0] = 1.0;
    last[dim - 1] = 1.0;
    CHECK(quadratic_eval(first) == 1.0);
    CHECK(quadratic_eval(last) == doctest::Approx(1e6).epsilon(1e-14));
    // Hessian is diagonal 2 * coeff, so its condition number is the ratio.
    CHECK(quadratic_eval(last) / quadratic_eval(first) == doctest::Approx(1e6).epsilon(1e-14));
  }
}

TEST_CASE("suite members vanish at their argmin") {
  for (std::size_t n : {2u, 3u, 10u}) {
    for (const Objective& obj : make_suite(n)) {
      CAPTURE(obj.name);
      CHECK(obj.eval(obj.argmin) == 0.0);
      CHECK(obj.optimum_value == 0.0);
      CHECK(obj.dim == n);
    }
  }
  CHECK(sphere_eval(Vector::Zero(4)) == 0.0);
  CHECK(rosenbrock_eval(Vector::Ones(4)) == 0.0);
  CHECK(rastrigin_eval(Vector::Zero(4)) == 0.0);
}

TEST_CASE("property: perturbing one coordinate of the argmin increases the value") {
  for (const Objective& obj : make_suite(6)) {
    CAPTURE(obj.name);
    const double f0 = obj.eval(obj.argmin);
    for (Eigen::Index i = 0; i < 6; ++i) {
      for (double delta : {0.1, -0.1}) {
        Vector x = obj.argmin;
        x[i] += delta;
        CHECK(obj.eval(x) > f0);
      }
    }
  }
}

TEST_CASE("lookup by name") {
  CHECK(find_objective("rastrigin", 4).name == "rastrigin");
  CHECK(find_objective("quadratic", 4).name == "ellipsoid");
  CHECK_THROWS_AS(find_objective("cec17-f1", 4), std::invalid_argument);
  CHECK_THROWS_AS(make_suite(1), std::invalid_argument);
}

TEST_CASE("evaluator counts and tracks the best point") {
  Evaluator ev(sphere_eval);
  ev(vec({3, 0}));
  ev(vec({1, 0}));
  ev(vec({2, 0}));
  CHECK(ev.evaluations() == 3);
  CHECK(ev.best_fitness() == 1.0);
  CHECK(ev.best_x() == vec({1, 0}));

  Evaluator bad([](const Vector&) { return std::nan(""); });
  CHECK_THROWS_AS(bad(vec({0, 0})), std::runtime_error);
}
