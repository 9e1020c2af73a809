#pragma once

#include <stdexcept>
#include <string>

#include "plgd/config.hpp"
#include "plgd/objective.hpp"
#include "plgd/oracle.hpp"
#include "plgd/trace.hpp"

namespace plgd {

enum class SolverKind { ConstantStep, AdaptiveL, AdaptiveLAlpha };

const char* to_string(SolverKind kind);
SolverKind solver_kind_from_string(const std::string& name);

// Adaptive loop state. beta = 0.5 - alpha is the doubled/halved quantity in
// the jointly adaptive solver, so alpha can approach but never reach 0.5.
struct AdaptiveState {
  double l_k = 0.0;
  double beta_k = 0.5;   // in (0, 0.5]
  double alpha_k = 0.0;  // always 0.5 - beta_k
};

// Step size for the adaptive solvers: (1/L) (1 - 2 alpha) / (1 - alpha).
// Degenerates to zero as alpha -> 0.5, where no decrease can be guaranteed;
// alpha must be strictly below 0.5.
double step_size(double l, double alpha);

// Step size for the non-adaptive baseline: (1/L) (1 - alpha) / (1 + alpha)^2,
// valid for alpha in [0, 1).
double constant_step_size(double l, double alpha);

// Fires iff |noisy grad|^2 <= 2 epsilon (1 - alpha)^2, which certifies a gap
// of at most epsilon / mu under the PL condition.
bool stopping_rule(double noisy_grad_norm, double epsilon, double alpha_current);

// Thrown when an iterate leaves the representable range (constant-step runs
// with an overlarge step). Carries the trace accumulated so far.
class divergence_error : public std::runtime_error {
 public:
  divergence_error(const std::string& what, RunTrace partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const RunTrace& partial_trace() const { return partial_; }

 private:
  RunTrace partial_;
};

// Fixed-step descent x <- x - h g with h = constant_step_size(l, alpha). No
// adaptation, no acceptance test. The oracle's true error level must not
// exceed the assumed alpha for the guarantees to apply.
RunTrace run_constant_step(const Objective& objective, NoisyOracle& oracle,
                           const Vector& x0, double l, double alpha,
                           const SolverConfig& config);

// Adaptive-L descent with known error level config.alpha: each iteration
// halves the smoothness estimate (clamped at l_min), takes the trial step,
// and doubles the estimate until the acceptance test passes.
RunTrace run_adaptive_l(const Objective& objective, NoisyOracle& oracle,
                        const Vector& x0, const SolverConfig& config);

// Jointly adaptive descent over (L, alpha) via beta = 0.5 - alpha. With
// request_accuracy (the default) the oracle must be accuracy-on-request and
// is re-queried at the current alpha on every retry; without it the solver
// runs the same loop against a fixed-error oracle, reusing one sample per
// outer iteration.
RunTrace run_adaptive_l_alpha(const Objective& objective, NoisyOracle& oracle,
                              const Vector& x0, const SolverConfig& config,
                              bool request_accuracy = true);

// Sum of acceptance-test failures over the whole run. Acceptance-test
// executions = records + this total.
std::size_t inner_repeat_total(const RunTrace& trace);

}  // namespace plgd
