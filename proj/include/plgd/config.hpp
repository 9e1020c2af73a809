#pragma once

#include <cstdint>
#include <stdexcept>

namespace plgd {

// Relative slack added to the acceptance test when SolverConfig::descent_slack
// is set. Off by default: the acceptance inequality already carries a
// quadratic margin, and slack changes the algorithm.
inline constexpr double kDescentRelativeSlack = 1e-12;

struct SolverConfig {
  double l_min = 1e-3;       // > 0, and >= mu when the PL constant is known
  double l_0 = 1.0;          // >= l_min
  double alpha = 0.0;        // assumed error level, [0, 0.5); constant-step also accepts [0.5, 1)
  double alpha_min = 0.0;    // accuracy floor, [0, 0.5)
  double alpha_0 = 0.0;      // initial error level, [alpha_min, 0.5)
  double epsilon = 1e-12;    // stopping tolerance; target gap is epsilon / mu
  std::size_t max_iterations = 1000;
  std::size_t max_inner_repeats = 60;  // L can double 60 times from l_min before any realistic L is passed
  std::uint64_t seed = 0;              // seeds the gradient oracle
  bool descent_slack = false;
};

namespace detail {

inline void validate_common(const SolverConfig& c) {
  if (!(c.l_min > 0.0))
    throw std::invalid_argument("SolverConfig.l_min: must be positive");
  if (!(c.l_0 >= c.l_min))
    throw std::invalid_argument("SolverConfig.l_0: must be >= l_min");
  if (!(c.epsilon > 0.0))
    throw std::invalid_argument("SolverConfig.epsilon: must be positive");
  if (c.max_iterations == 0)
    throw std::invalid_argument("SolverConfig.max_iterations: must be >= 1");
  if (c.max_inner_repeats == 0)
    throw std::invalid_argument("SolverConfig.max_inner_repeats: must be >= 1");
}

}  // namespace detail

}  // namespace plgd
