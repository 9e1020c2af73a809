#pragma once

#include <optional>
#include <vector>

#include "plgd/objective.hpp"
#include "plgd/vector.hpp"

namespace plgd {

// f(x1, x2) = 100 (x2 - x1^2)^2 + (x1 - 1)^2, minimum 0 at (1, 1).
double rosenbrock(const Vector& x);
Vector rosenbrock_grad(const Vector& x);

// f(x) = 1/4 (1 - x1)^2 + sum_{i=1}^{n-1} (x_{i+1} - 2 x_i^2 + 1)^2, n >= 2,
// minimum 0 at (1, ..., 1). The multidimensional Rosenbrock generalization.
double nesterov_skokov(const Vector& x);
Vector nesterov_skokov_grad(const Vector& x);

// Diagonal quadratic f(x) = 1/2 sum_i lambda_i (x_i - s_i)^2 with known
// constants: mu = min lambda, L = max lambda, f* = 0 at the shift.
struct QuadraticSpec {
  std::vector<double> eigenvalues;  // all positive
  std::optional<Vector> shift;      // optimum location; origin when absent

  void validate() const;
  double mu() const;
  double l() const;
};

double quadratic(const QuadraticSpec& spec, const Vector& x);
Vector quadratic_grad(const QuadraticSpec& spec, const Vector& x);

Objective make_rosenbrock();
Objective make_nesterov_skokov(std::size_t n);
Objective make_quadratic(QuadraticSpec spec);

}  // namespace plgd
