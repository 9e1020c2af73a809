#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "plgd/vector.hpp"

namespace plgd {

enum class Termination { StoppingRuleFired, BudgetExhausted, InnerCapExceeded };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::StoppingRuleFired: return "stopping_rule";
    case Termination::BudgetExhausted: return "budget";
    case Termination::InnerCapExceeded: return "inner_cap";
  }
  return "unknown";
}

// One completed outer iteration. f_value and dist_from_x0 describe the point
// the iteration produced; the gradient norms describe the point the oracle
// was queried at (the iterate the step was taken from); l_k / alpha_k /
// step_size are the values the step was accepted with.
struct IterationRecord {
  std::size_t k = 0;
  double f_value = 0.0;
  std::optional<double> gap;      // f_value - f_star, only when f_star is known
  double exact_grad_norm = 0.0;
  double noisy_grad_norm = 0.0;
  double l_k = 0.0;
  double alpha_k = 0.0;
  double step_size = 0.0;
  std::size_t inner_repeats = 0;  // acceptance-test failures in this iteration
  double dist_from_x0 = 0.0;
};

struct RunTrace {
  Vector initial_point;
  double initial_f = 0.0;
  std::optional<double> initial_gap;
  std::vector<IterationRecord> records;
  Vector final_point;
  Termination termination = Termination::BudgetExhausted;

  void append(IterationRecord record) {
    if (record.k != records.size())
      throw std::logic_error("RunTrace: iteration records must be appended in order");
    records.push_back(std::move(record));
  }

  // f at the iterate the step of iteration k was taken from.
  double f_before(std::size_t k) const {
    return k == 0 ? initial_f : records[k - 1].f_value;
  }
};

inline RunTrace& record_iteration(RunTrace& trace, IterationRecord record) {
  trace.append(std::move(record));
  return trace;
}

}  // namespace plgd
