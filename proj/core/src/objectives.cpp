#include "mfcma/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mfcma/evaluator.hpp"

namespace mfcma {

namespace {

void require_dim(const Vector& x) {
  if (x.size() < 2) throw std::invalid_argument("objective requires n >= 2");
}

}  // namespace

double quadratic_eval(const Vector& x) {
  require_dim(x);
  const auto n = x.size();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double coeff = std::pow(10.0, 6.0 * static_cast<double>(i) / static_cast<double>(n - 1));
    sum += coeff * x[i] * x[i];
  }
  return sum;
}

double sphere_eval(const Vector& x) { return x.squaredNorm(); }

double rosenbrock_eval(const Vector& x) {
  require_dim(x);
  double sum = 0.0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

double rastrigin_eval(const Vector& x) {
  double sum = 10.0 * static_cast<double>(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i] - 10.0 * std::cos(2.0 * std::numbers::pi * x[i]);
  }
  return sum;
}

std::vector<Objective> make_suite(std::size_t n) {
  if (n < 2) throw std::invalid_argument("make_suite requires n >= 2");
  const auto dim = static_cast<Eigen::Index>(n);
  return {
      Objective{"sphere", n, sphere_eval, 0.0, Vector::Zero(dim), -100.0, 100.0},
      Objective{"ellipsoid", n, quadratic_eval, 0.0, Vector::Zero(dim), -0.2, 0.8},
      Objective{"rosenbrock", n, rosenbrock_eval, 0.0, Vector::Ones(dim), -100.0, 100.0},
      Objective{"rastrigin", n, rastrigin_eval, 0.0, Vector::Zero(dim), -100.0, 100.0},
  };
}

Objective find_objective(std::string_view name, std::size_t n) {
  const std::string_view key = name == "quadratic" ? std::string_view{"ellipsoid"} : name;
  for (Objective& obj : make_suite(n)) {
    if (obj.name == key) return obj;
  }
  throw std::invalid_argument("unknown objective: " + std::string(name));
}

double Evaluator::operator()(const Vector& x) {
  const double f = fn_(x);
  if (std::isnan(f)) throw std::runtime_error("objective returned NaN");
  ++evaluations_;
  if (f < best_fitness_) {
    best_fitness_ = f;
    best_x_ = x;
  }
  return f;
}

}  // namespace mfcma
