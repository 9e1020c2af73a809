#include "plgd/solvers.hpp"

#include <cassert>
#include <cmath>
#include <utility>
#include <vector>

#include "plgd/descent_test.hpp"

namespace plgd {

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::ConstantStep: return "constant_step";
    case SolverKind::AdaptiveL: return "adaptive_l";
    case SolverKind::AdaptiveLAlpha: return "adaptive_l_alpha";
  }
  return "unknown";
}

SolverKind solver_kind_from_string(const std::string& name) {
  if (name == "constant_step") return SolverKind::ConstantStep;
  if (name == "adaptive_l") return SolverKind::AdaptiveL;
  if (name == "adaptive_l_alpha") return SolverKind::AdaptiveLAlpha;
  throw std::invalid_argument("unknown solver kind: " + name);
}

double step_size(double l, double alpha) {
  if (!(l > 0.0))
    throw std::invalid_argument("step_size: L must be positive");
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw std::invalid_argument("step_size: alpha must lie in [0, 0.5)");
  return (1.0 / l) * (1.0 - 2.0 * alpha) / (1.0 - alpha);
}

double constant_step_size(double l, double alpha) {
  if (!(l > 0.0))
    throw std::invalid_argument("constant_step_size: L must be positive");
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("constant_step_size: alpha must lie in [0, 1)");
  return (1.0 / l) * (1.0 - alpha) / ((1.0 + alpha) * (1.0 + alpha));
}

bool stopping_rule(double noisy_grad_norm, double epsilon, double alpha_current) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("stopping_rule: epsilon must be positive");
  if (!(alpha_current >= 0.0 && alpha_current < 1.0))
    throw std::invalid_argument("stopping_rule: alpha must lie in [0, 1)");
  const double one_minus = 1.0 - alpha_current;
  return noisy_grad_norm * noisy_grad_norm <= 2.0 * epsilon * one_minus * one_minus;
}

std::size_t inner_repeat_total(const RunTrace& trace) {
  std::size_t total = 0;
  for (const auto& r : trace.records) total += r.inner_repeats;
  return total;
}

namespace {

Vector take_step(const Vector& x, double h, const Vector& g) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] - h * g[i];
  return Vector::unchecked(std::move(out));
}

Vector displacement_of(const Vector& next, const Vector& curr) {
  std::vector<double> out(curr.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = next[i] - curr[i];
  return Vector::unchecked(std::move(out));
}

double initial_value_checked(const Objective& objective, const Vector& x0) {
  if (x0.size() != objective.dimension)
    throw std::invalid_argument("solver: x0 dimension mismatch");
  const double f0 = objective.value(x0);
  if (!std::isfinite(f0))
    throw std::invalid_argument("solver: objective is not finite at x0");
  return f0;
}

void validate_l_min_against_mu(const SolverConfig& config, const Objective& objective) {
  if (objective.mu_hint && config.l_min < *objective.mu_hint)
    throw std::invalid_argument("SolverConfig.l_min: must be >= mu when the PL constant is known");
}

RunTrace make_trace(const Objective& objective, const Vector& x0, double f0) {
  RunTrace trace;
  trace.initial_point = x0;
  trace.initial_f = f0;
  if (objective.f_star) trace.initial_gap = f0 - *objective.f_star;
  trace.final_point = x0;
  return trace;
}

std::optional<double> gap_of(const Objective& objective, double f) {
  if (objective.f_star) return f - *objective.f_star;
  return std::nullopt;
}

}  // namespace

RunTrace run_constant_step(const Objective& objective, NoisyOracle& oracle,
                           const Vector& x0, double l, double alpha,
                           const SolverConfig& config) {
  detail::validate_common(config);
  validate_l_min_against_mu(config, objective);
  const double h = constant_step_size(l, alpha);

  double f_curr = initial_value_checked(objective, x0);
  Vector x = x0;
  RunTrace trace = make_trace(objective, x0, f_curr);

  for (std::size_t k = 0; k < config.max_iterations; ++k) {
    const auto q = oracle.query(x);
    const double gnorm = euclidean_norm(q.gradient);
    Vector next = take_step(x, h, q.gradient);
    const double f_next = objective.value(next);
    if (!std::isfinite(f_next) || !next.all_finite()) {
      trace.final_point = std::move(x);
      throw divergence_error("constant-step run diverged at iteration " + std::to_string(k),
                             std::move(trace));
    }
    x = std::move(next);
    f_curr = f_next;
    trace.append({k, f_curr, gap_of(objective, f_curr), q.exact_norm, gnorm, l,
                  alpha, h, 0, distance(x, x0)});
    if (stopping_rule(gnorm, config.epsilon, alpha)) {
      trace.termination = Termination::StoppingRuleFired;
      trace.final_point = std::move(x);
      return trace;
    }
  }
  trace.termination = Termination::BudgetExhausted;
  trace.final_point = std::move(x);
  return trace;
}

RunTrace run_adaptive_l(const Objective& objective, NoisyOracle& oracle,
                        const Vector& x0, const SolverConfig& config) {
  detail::validate_common(config);
  validate_l_min_against_mu(config, objective);
  if (!(config.alpha >= 0.0 && config.alpha < 0.5))
    throw std::invalid_argument("SolverConfig.alpha: must lie in [0, 0.5)");
  const double alpha = config.alpha;
  const double slack = config.descent_slack ? kDescentRelativeSlack : 0.0;

  double f_curr = initial_value_checked(objective, x0);
  Vector x = x0;
  RunTrace trace = make_trace(objective, x0, f_curr);

  double l_prev = config.l_0;
  for (std::size_t k = 0; k < config.max_iterations; ++k) {
    double l = std::max(l_prev / 2.0, config.l_min);
    // One noisy gradient per outer iteration; retries change only L.
    const auto q = oracle.query(x);
    const double gnorm = euclidean_norm(q.gradient);

    std::size_t repeats = 0;
    double h = 0.0;
    Vector next;
    double f_next = 0.0;
    for (;;) {
      h = step_size(l, alpha);
      next = take_step(x, h, q.gradient);
      f_next = objective.value(next);
      if (descent_test(f_next, f_curr, q.gradient, displacement_of(next, x), l,
                       alpha, slack))
        break;
      if (++repeats > config.max_inner_repeats) {
        trace.termination = Termination::InnerCapExceeded;
        trace.final_point = std::move(x);
        return trace;
      }
      l *= 2.0;
    }

    if (!next.all_finite()) {
      trace.final_point = std::move(x);
      throw divergence_error("adaptive-L run produced a non-finite iterate at iteration " +
                                 std::to_string(k),
                             std::move(trace));
    }
    x = std::move(next);
    f_curr = f_next;
    trace.append({k, f_curr, gap_of(objective, f_curr), q.exact_norm, gnorm, l,
                  alpha, h, repeats, distance(x, x0)});
    l_prev = l;
    if (stopping_rule(gnorm, config.epsilon, alpha)) {
      trace.termination = Termination::StoppingRuleFired;
      trace.final_point = std::move(x);
      return trace;
    }
  }
  trace.termination = Termination::BudgetExhausted;
  trace.final_point = std::move(x);
  return trace;
}

RunTrace run_adaptive_l_alpha(const Objective& objective, NoisyOracle& oracle,
                              const Vector& x0, const SolverConfig& config,
                              bool request_accuracy) {
  detail::validate_common(config);
  validate_l_min_against_mu(config, objective);
  if (!(config.alpha_min >= 0.0 && config.alpha_min < 0.5))
    throw std::invalid_argument("SolverConfig.alpha_min: must lie in [0, 0.5)");
  if (!(config.alpha_0 >= config.alpha_min && config.alpha_0 < 0.5))
    throw std::invalid_argument("SolverConfig.alpha_0: must lie in [alpha_min, 0.5)");
  if (request_accuracy && oracle.mode().kind != OracleModeKind::OnRequest)
    throw std::invalid_argument(
        "run_adaptive_l_alpha: accuracy requests need an accuracy-on-request oracle");
  const double slack = config.descent_slack ? kDescentRelativeSlack : 0.0;

  double f_curr = initial_value_checked(objective, x0);
  Vector x = x0;
  RunTrace trace = make_trace(objective, x0, f_curr);

  const double beta_max = 0.5 - config.alpha_min;
  AdaptiveState state{config.l_0, 0.5 - config.alpha_0, config.alpha_0};

  for (std::size_t k = 0; k < config.max_iterations; ++k) {
    double l = std::max(state.l_k / 2.0, config.l_min);
    double beta = std::min(2.0 * state.beta_k, beta_max);
    // At the ceiling the level is the floor by definition; recovering it as
    // 0.5 - beta_max would land an ulp away and upset the floor clamp.
    double alpha = beta == beta_max ? config.alpha_min : 0.5 - beta;

    std::optional<NoisyOracle::Query> q;
    if (!request_accuracy) q = oracle.query(x);  // one sample per outer iteration

    std::size_t repeats = 0;
    double h = 0.0;
    Vector next;
    double f_next = 0.0;
    for (;;) {
      assert(alpha < 0.5);  // beta stays strictly positive
      if (request_accuracy) q = oracle.query(x, alpha);
      h = step_size(l, alpha);
      next = take_step(x, h, q->gradient);
      f_next = objective.value(next);
      if (descent_test(f_next, f_curr, q->gradient, displacement_of(next, x), l,
                       alpha, slack))
        break;
      if (++repeats > config.max_inner_repeats) {
        trace.termination = Termination::InnerCapExceeded;
        trace.final_point = std::move(x);
        return trace;
      }
      l *= 2.0;
      beta *= 0.5;
      alpha = 0.5 - beta;
    }

    if (!next.all_finite()) {
      trace.final_point = std::move(x);
      throw divergence_error(
          "adaptive-L-alpha run produced a non-finite iterate at iteration " +
              std::to_string(k),
          std::move(trace));
    }
    x = std::move(next);
    f_curr = f_next;
    const double gnorm = euclidean_norm(q->gradient);
    trace.append({k, f_curr, gap_of(objective, f_curr), q->exact_norm, gnorm, l,
                  alpha, h, repeats, distance(x, x0)});
    state = {l, beta, alpha};
    // Stopping check with the accepted error level of this iteration, using
    // the gradient already in hand.
    if (stopping_rule(gnorm, config.epsilon, alpha)) {
      trace.termination = Termination::StoppingRuleFired;
      trace.final_point = std::move(x);
      return trace;
    }
  }
  trace.termination = Termination::BudgetExhausted;
  trace.final_point = std::move(x);
  return trace;
}

}  // namespace plgd
