#pragma once

#include <cstddef>

namespace plgd {

// Known problem constants for the bound calculators: smoothness L, PL
// constant mu, relative error level alpha, accuracy floor alpha_min, solver
// floor l_min, and the initial gap f(x0) - f*.
struct ProblemConstants {
  double l = 1.0;
  double mu = 1.0;
  double alpha = 0.0;
  double alpha_min = 0.0;
  double l_min = 1.0;
  double initial_gap = 0.0;

  void validate() const;
};

struct TheoryBounds {
  double xi = 1.0;      // rate modifier at the assumed error level
  double xi_max = 1.0;  // rate modifier at the worst adapted error level
  double l_max_adaptive_l = 0.0;
  double l_max_adaptive_l_alpha = 0.0;
  double alpha_max = 0.0;
  std::size_t iterations_adaptive_l = 0;
  std::size_t iterations_adaptive_l_alpha = 0;
  double traj_radius_adaptive_l = 0.0;
  double traj_radius_adaptive_l_alpha = 0.0;
  double rate_factor = 0.0;  // 1 - (mu / l_max_adaptive_l) xi, in (0, 1)
};

// (1 - 2 alpha)^2: the factor by which relative error of level alpha degrades
// the geometric contraction. Equals 1 for exact gradients.
double rate_modifier(double alpha);

// Rate modifier when the solver assumes alpha_assumed but the oracle delivers
// level alpha_true and cannot be steered:
// (1 - 2 alpha_assumed)^2 ((1 - alpha_true) / (1 - alpha_assumed))^2.
double rate_modifier_mismatched(double alpha_assumed, double alpha_true);

// Largest smoothness estimate the adaptive-L solver can accept when started
// at l_0 <= l: 2 L.
double l_max_adaptive_l(double l);

// Same for the jointly adaptive solver: 2 L max{1, (0.5-alpha_min)/(0.5-alpha)}.
double l_max_adaptive_l_alpha(double l, double alpha, double alpha_min);

// Largest error level the jointly adaptive solver can assume:
// 0.5 - ((0.5 - alpha)/2) min{1, l_min / l}. Always in [alpha, 0.5).
double alpha_max_adaptive(double alpha, double l, double l_min);

// ceil((l_max / (mu xi)) log(mu initial_gap / epsilon)): iterations that
// guarantee a gap of at most epsilon / mu. Natural logarithm. Returns 1 when
// the target is already met (log argument <= 1).
std::size_t iteration_bound(double l_max, double mu, double xi, double epsilon,
                            double initial_gap);

// (2 l_max / (mu xi)) sqrt(2 initial_gap / l_min): radius of the ball around
// x0 that contains every iterate.
double trajectory_radius(double l_max, double mu, double xi, double l_min,
                         double initial_gap);

// 2N + log2(2 max{l / l_min, (0.5 - alpha_min)/(0.5 - alpha)}): cap on total
// acceptance-test executions over an n-iteration jointly adaptive run.
double inner_repeat_bound(std::size_t n, double l, double l_min, double alpha,
                          double alpha_min);

// Per-iteration contraction factor of the constant-step baseline:
// 1 - (mu / l) (1 - alpha)^2 / (1 + alpha)^2, for alpha in [0, 1).
double constant_rate_factor(double l, double mu, double alpha);

TheoryBounds compute_bounds(const ProblemConstants& constants, double epsilon);

}  // namespace plgd
