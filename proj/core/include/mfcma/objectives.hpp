#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mfcma/types.hpp"

namespace mfcma {

using ObjectiveFn = std::function<double(const Vector&)>;

struct Objective {
  std::string name;
  std::size_t dim = 0;
  ObjectiveFn eval;
  double optimum_value = 0.0;
  Vector argmin;
  // Informational search domain, per coordinate.
  double lower = -100.0;
  double upper = 100.0;
};

/// sum_i 10^{6(i-1)/(n-1)} x_i^2. Condition number of the Hessian is 1e6.
double quadratic_eval(const Vector& x);

double sphere_eval(const Vector& x);
double rosenbrock_eval(const Vector& x);
double rastrigin_eval(const Vector& x);

/// sphere, ellipsoid, rosenbrock, rastrigin; all with optimum value 0.
std::vector<Objective> make_suite(std::size_t n);

/// Looks up a suite member by name ("quadratic" is an alias of
/// "ellipsoid"). Throws std::invalid_argument for unknown names.
Objective find_objective(std::string_view name, std::size_t n);

}  // namespace mfcma
