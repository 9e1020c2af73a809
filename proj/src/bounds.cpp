#include "plgd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace plgd {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

void require_alpha(double alpha, const char* who) {
  if (!(alpha >= 0.0 && alpha < 0.5)) throw std::invalid_argument(who);
}

}  // namespace

void ProblemConstants::validate() const {
  require(l > 0.0, "ProblemConstants.l: must be positive");
  require(mu > 0.0, "ProblemConstants.mu: must be positive");
  require(mu <= l, "ProblemConstants.mu: must not exceed l");
  require_alpha(alpha, "ProblemConstants.alpha: must lie in [0, 0.5)");
  require(alpha_min >= 0.0 && alpha_min <= alpha,
          "ProblemConstants.alpha_min: must lie in [0, alpha]");
  require(l_min > 0.0, "ProblemConstants.l_min: must be positive");
  require(initial_gap >= 0.0, "ProblemConstants.initial_gap: must be >= 0");
}

double rate_modifier(double alpha) {
  require_alpha(alpha, "rate_modifier: alpha must lie in [0, 0.5)");
  const double t = 1.0 - 2.0 * alpha;
  return t * t;
}

double rate_modifier_mismatched(double alpha_assumed, double alpha_true) {
  require_alpha(alpha_assumed, "rate_modifier_mismatched: alpha_assumed must lie in [0, 0.5)");
  require_alpha(alpha_true, "rate_modifier_mismatched: alpha_true must lie in [0, 0.5)");
  const double ratio = (1.0 - alpha_true) / (1.0 - alpha_assumed);
  return rate_modifier(alpha_assumed) * ratio * ratio;
}

double l_max_adaptive_l(double l) {
  require(l > 0.0, "l_max_adaptive_l: l must be positive");
  return 2.0 * l;
}

double l_max_adaptive_l_alpha(double l, double alpha, double alpha_min) {
  require(l > 0.0, "l_max_adaptive_l_alpha: l must be positive");
  require_alpha(alpha, "l_max_adaptive_l_alpha: alpha must lie in [0, 0.5)");
  require(alpha_min >= 0.0 && alpha_min <= alpha,
          "l_max_adaptive_l_alpha: alpha_min must lie in [0, alpha]");
  return 2.0 * l * std::max(1.0, (0.5 - alpha_min) / (0.5 - alpha));
}

double alpha_max_adaptive(double alpha, double l, double l_min) {
  require_alpha(alpha, "alpha_max_adaptive: alpha must lie in [0, 0.5)");
  require(l_min > 0.0, "alpha_max_adaptive: l_min must be positive");
  require(l >= l_min, "alpha_max_adaptive: l must be >= l_min");
  return 0.5 - 0.5 * (0.5 - alpha) * std::min(1.0, l_min / l);
}

std::size_t iteration_bound(double l_max, double mu, double xi, double epsilon,
                            double initial_gap) {
  require(l_max > 0.0, "iteration_bound: l_max must be positive");
  require(mu > 0.0, "iteration_bound: mu must be positive");
  require(xi > 0.0, "iteration_bound: xi must be positive");
  require(epsilon > 0.0, "iteration_bound: epsilon must be positive");
  require(initial_gap >= 0.0, "iteration_bound: initial_gap must be >= 0");
  const double log_arg = mu * initial_gap / epsilon;
  if (log_arg <= 1.0) return 1;  // already within target; one check suffices
  const double n = std::ceil(l_max / (mu * xi) * std::log(log_arg));
  return static_cast<std::size_t>(n);
}

double trajectory_radius(double l_max, double mu, double xi, double l_min,
                         double initial_gap) {
  require(l_max > 0.0, "trajectory_radius: l_max must be positive");
  require(mu > 0.0, "trajectory_radius: mu must be positive");
  require(xi > 0.0, "trajectory_radius: xi must be positive");
  require(l_min > 0.0, "trajectory_radius: l_min must be positive");
  require(initial_gap >= 0.0, "trajectory_radius: initial_gap must be >= 0");
  return 2.0 * l_max / (mu * xi) * std::sqrt(2.0 * initial_gap / l_min);
}

double inner_repeat_bound(std::size_t n, double l, double l_min, double alpha,
                          double alpha_min) {
  require(n > 0, "inner_repeat_bound: n must be >= 1");
  require(l > 0.0, "inner_repeat_bound: l must be positive");
  require(l_min > 0.0, "inner_repeat_bound: l_min must be positive");
  require_alpha(alpha, "inner_repeat_bound: alpha must lie in [0, 0.5)");
  require(alpha_min >= 0.0 && alpha_min <= alpha,
          "inner_repeat_bound: alpha_min must lie in [0, alpha]");
  const double worst = std::max(l / l_min, (0.5 - alpha_min) / (0.5 - alpha));
  return 2.0 * static_cast<double>(n) + std::log2(2.0 * worst);
}

double constant_rate_factor(double l, double mu, double alpha) {
  require(l > 0.0, "constant_rate_factor: l must be positive");
  require(mu > 0.0 && mu <= l, "constant_rate_factor: mu must lie in (0, l]");
  require(alpha >= 0.0 && alpha < 1.0, "constant_rate_factor: alpha must lie in [0, 1)");
  const double num = (1.0 - alpha) * (1.0 - alpha);
  const double den = (1.0 + alpha) * (1.0 + alpha);
  return 1.0 - mu / l * num / den;
}

TheoryBounds compute_bounds(const ProblemConstants& c, double epsilon) {
  c.validate();
  require(epsilon > 0.0, "compute_bounds: epsilon must be positive");
  TheoryBounds b;
  b.xi = rate_modifier(c.alpha);
  b.alpha_max = alpha_max_adaptive(c.alpha, c.l, c.l_min);
  b.xi_max = rate_modifier(b.alpha_max);
  b.l_max_adaptive_l = l_max_adaptive_l(c.l);
  b.l_max_adaptive_l_alpha = l_max_adaptive_l_alpha(c.l, c.alpha, c.alpha_min);
  b.iterations_adaptive_l =
      iteration_bound(b.l_max_adaptive_l, c.mu, b.xi, epsilon, c.initial_gap);
  b.iterations_adaptive_l_alpha = iteration_bound(
      b.l_max_adaptive_l_alpha, c.mu, b.xi_max, epsilon, c.initial_gap);
  b.traj_radius_adaptive_l =
      trajectory_radius(b.l_max_adaptive_l, c.mu, b.xi, c.l_min, c.initial_gap);
  b.traj_radius_adaptive_l_alpha = trajectory_radius(
      b.l_max_adaptive_l_alpha, c.mu, b.xi_max, c.l_min, c.initial_gap);
  b.rate_factor = 1.0 - c.mu / b.l_max_adaptive_l * b.xi;
  return b;
}

}  // namespace plgd
