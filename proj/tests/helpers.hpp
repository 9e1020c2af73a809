#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "plgd/objective.hpp"
#include "plgd/rng.hpp"
#include "plgd/testbed.hpp"
#include "plgd/trace.hpp"
#include "plgd/vector.hpp"

namespace plgd::testing {

inline Vector random_point(std::size_t n, Xoshiro256& rng, double lo = -2.0,
                           double hi = 2.0) {
  std::vector<double> out(n);
  for (auto& c : out) c = lo + (hi - lo) * rng.next_double();
  return Vector(std::move(out));
}

// Central finite differences with the given step.
inline Vector finite_difference_gradient(const Objective& objective,
                                         const Vector& x, double step = 1e-6) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> plus(x.values().begin(), x.values().end());
    std::vector<double> minus = plus;
    plus[i] += step;
    minus[i] -= step;
    g[i] = (objective.value(Vector(plus)) - objective.value(Vector(minus))) /
           (2.0 * step);
  }
  return Vector::unchecked(std::move(g));
}

inline double relative_gradient_error(const Objective& objective,
                                      const Vector& x, double step = 1e-6) {
  const Vector exact = objective.exact_gradient(x);
  const Vector fd = finite_difference_gradient(objective, x, step);
  const double denom = euclidean_norm(exact);
  if (denom < 1e-8) return distance(fd, exact);
  return distance(fd, exact) / denom;
}

// Random diagonal quadratic with mu in [0.01, 1] and L in [mu, 100 mu];
// eigenvalue extremes pinned so mu and L are exact.
inline QuadraticSpec random_quadratic(Xoshiro256& rng, std::size_t min_dim = 2,
                                      std::size_t max_dim = 8) {
  const std::size_t n =
      min_dim + static_cast<std::size_t>(rng.next_double() *
                                         static_cast<double>(max_dim - min_dim + 1)) %
                    (max_dim - min_dim + 1);
  const double mu = 0.01 + 0.99 * rng.next_double();
  const double l = mu * (1.0 + 99.0 * rng.next_double());
  std::vector<double> eigenvalues(n);
  eigenvalues[0] = mu;
  eigenvalues[n - 1] = l;
  for (std::size_t i = 1; i + 1 < n; ++i)
    eigenvalues[i] = mu + (l - mu) * rng.next_double();
  return QuadraticSpec{std::move(eigenvalues), std::nullopt};
}

// Worst relative violation of the accepted-step decrease inequality
//   f(x_{k+1}) - f(x_k) <= -(1/(2 L_k)) ((1-2a_k)^2/(1-a_k)^2) |g~(x_k)|^2
// over a trace. Nonpositive (up to roundoff) on every accepted step. The
// trace stores quantities recomputed along a different floating-point path
// than the in-loop acceptance test, so callers compare against a tiny
// relative tolerance rather than zero.
inline double max_decrease_violation(const RunTrace& trace) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : trace.records) {
    const double f_prev = trace.f_before(r.k);
    const double one_minus = 1.0 - r.alpha_k;
    const double drop = (1.0 - 2.0 * r.alpha_k) * (1.0 - 2.0 * r.alpha_k) /
                        (one_minus * one_minus) * r.noisy_grad_norm *
                        r.noisy_grad_norm / (2.0 * r.l_k);
    const double violation = (r.f_value - f_prev) + drop;
    const double scale = std::max({1.0, std::fabs(f_prev), drop});
    worst = std::max(worst, violation / scale);
  }
  return worst;
}

// Worst relative violation of the per-step geometric contraction
//   gap_{k+1} <= (1 - (mu / L_k) (1 - 2 a_k)^2) gap_k
// on an objective with known PL constant mu.
inline double max_contraction_violation(const RunTrace& trace, double mu) {
  double worst = -std::numeric_limits<double>::infinity();
  double gap_prev = trace.initial_gap.value();
  for (const auto& r : trace.records) {
    const double xi = (1.0 - 2.0 * r.alpha_k) * (1.0 - 2.0 * r.alpha_k);
    const double bound = (1.0 - mu / r.l_k * xi) * gap_prev;
    const double scale = std::max(1.0, gap_prev);
    worst = std::max(worst, (r.gap.value() - bound) / scale);
    gap_prev = r.gap.value();
  }
  return worst;
}

inline double max_recorded_l(const RunTrace& trace) {
  double worst = 0.0;
  for (const auto& r : trace.records) worst = std::max(worst, r.l_k);
  return worst;
}

inline double max_recorded_alpha(const RunTrace& trace) {
  double worst = 0.0;
  for (const auto& r : trace.records) worst = std::max(worst, r.alpha_k);
  return worst;
}

inline double max_recorded_dist(const RunTrace& trace) {
  double worst = 0.0;
  for (const auto& r : trace.records) worst = std::max(worst, r.dist_from_x0);
  return worst;
}

inline bool f_monotone_nonincreasing(const RunTrace& trace) {
  for (const auto& r : trace.records)
    if (r.f_value > trace.f_before(r.k)) return false;
  return true;
}

}  // namespace plgd::testing
