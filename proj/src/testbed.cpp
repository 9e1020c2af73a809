#include "plgd/testbed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace plgd {

namespace {

void require_dimension(const Vector& x, std::size_t n, const char* who) {
  if (x.size() != n)
    throw std::invalid_argument(std::string(who) + ": wrong dimension");
}

}  // namespace

double rosenbrock(const Vector& x) {
  require_dimension(x, 2, "rosenbrock");
  const double a = x[1] - x[0] * x[0];
  const double b = x[0] - 1.0;
  return 100.0 * a * a + b * b;
}

Vector rosenbrock_grad(const Vector& x) {
  require_dimension(x, 2, "rosenbrock_grad");
  const double a = x[1] - x[0] * x[0];
  return Vector::unchecked({-400.0 * x[0] * a + 2.0 * (x[0] - 1.0), 200.0 * a});
}

double nesterov_skokov(const Vector& x) {
  if (x.size() < 2)
    throw std::invalid_argument("nesterov_skokov: dimension must be >= 2");
  const double head = 1.0 - x[0];
  double f = 0.25 * head * head;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double bracket = x[i + 1] - 2.0 * x[i] * x[i] + 1.0;
    f += bracket * bracket;
  }
  return f;
}

Vector nesterov_skokov_grad(const Vector& x) {
  if (x.size() < 2)
    throw std::invalid_argument("nesterov_skokov_grad: dimension must be >= 2");
  const std::size_t n = x.size();
  std::vector<double> g(n, 0.0);
  g[0] = -0.5 * (1.0 - x[0]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double bracket = x[i + 1] - 2.0 * x[i] * x[i] + 1.0;
    g[i] += -8.0 * x[i] * bracket;  // x_i enters bracket i via -2 x_i^2
    g[i + 1] += 2.0 * bracket;
  }
  return Vector::unchecked(std::move(g));
}

void QuadraticSpec::validate() const {
  if (eigenvalues.empty())
    throw std::invalid_argument("QuadraticSpec.eigenvalues: must be nonempty");
  for (double e : eigenvalues)
    if (!(e > 0.0) || !std::isfinite(e))
      throw std::invalid_argument("QuadraticSpec.eigenvalues: must be positive and finite");
  if (shift && shift->size() != eigenvalues.size())
    throw std::invalid_argument("QuadraticSpec.shift: dimension mismatch");
}

double QuadraticSpec::mu() const {
  return *std::min_element(eigenvalues.begin(), eigenvalues.end());
}

double QuadraticSpec::l() const {
  return *std::max_element(eigenvalues.begin(), eigenvalues.end());
}

double quadratic(const QuadraticSpec& spec, const Vector& x) {
  require_dimension(x, spec.eigenvalues.size(), "quadratic");
  double f = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - (spec.shift ? (*spec.shift)[i] : 0.0);
    f += 0.5 * spec.eigenvalues[i] * d * d;
  }
  return f;
}

Vector quadratic_grad(const QuadraticSpec& spec, const Vector& x) {
  require_dimension(x, spec.eigenvalues.size(), "quadratic_grad");
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - (spec.shift ? (*spec.shift)[i] : 0.0);
    g[i] = spec.eigenvalues[i] * d;
  }
  return Vector::unchecked(std::move(g));
}

Objective make_rosenbrock() {
  Objective o;
  o.dimension = 2;
  o.value = [](const Vector& x) { return rosenbrock(x); };
  o.exact_gradient = [](const Vector& x) { return rosenbrock_grad(x); };
  o.f_star = 0.0;
  o.name = "rosenbrock";
  return o;
}

Objective make_nesterov_skokov(std::size_t n) {
  if (n < 2)
    throw std::invalid_argument("make_nesterov_skokov: dimension must be >= 2");
  Objective o;
  o.dimension = n;
  o.value = [](const Vector& x) { return nesterov_skokov(x); };
  o.exact_gradient = [](const Vector& x) { return nesterov_skokov_grad(x); };
  o.f_star = 0.0;
  o.name = "nesterov_skokov";
  return o;
}

Objective make_quadratic(QuadraticSpec spec) {
  spec.validate();
  Objective o;
  o.dimension = spec.eigenvalues.size();
  o.f_star = 0.0;
  o.mu_hint = spec.mu();
  o.l_hint = spec.l();
  o.name = "quadratic";
  o.value = [spec](const Vector& x) { return quadratic(spec, x); };
  o.exact_gradient = [spec](const Vector& x) { return quadratic_grad(spec, x); };
  return o;
}

}  // namespace plgd
