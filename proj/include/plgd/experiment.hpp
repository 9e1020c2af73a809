#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plgd/bounds.hpp"
#include "plgd/solvers.hpp"
#include "plgd/testbed.hpp"
#include "plgd/trace.hpp"

namespace plgd {

class config_error : public std::runtime_error {
 public:
  config_error(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class io_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FunctionSpec {
  enum class Kind { Rosenbrock, NesterovSkokov, Quadratic };
  Kind kind = Kind::Rosenbrock;
  std::size_t n = 100;     // NesterovSkokov dimension
  QuadraticSpec quadratic;

  std::size_t dimension() const;
  Objective make() const;
};

// Start point: either explicit components, or a fill value with an optional
// override for the first component (covers the all-zeros and
// (-1, 1, ..., 1) presets without spelling out 100 numbers).
struct StartSpec {
  std::optional<std::vector<double>> components;
  double fill = 0.0;
  std::optional<double> first;

  Vector make(std::size_t dimension) const;
};

struct ExperimentConfig {
  FunctionSpec function;
  SolverKind solver = SolverKind::AdaptiveLAlpha;
  StartSpec x0;
  std::vector<double> alphas;        // oracle error levels to sweep
  std::vector<std::uint64_t> seeds;  // one run per (alpha, seed)
  double l_min = 0.01;
  double l_0 = 1.0;
  double alpha = 0.0;       // assumed level for adaptive_l / constant_step
  double alpha_min = 0.0;   // adaptive_l_alpha
  double alpha_0 = 0.0;     // adaptive_l_alpha
  double epsilon = 1e-300;  // effectively disarms the stopping rule: budget-only runs
  std::size_t iterations = 1000;
  std::size_t max_inner_repeats = 60;
  std::filesystem::path out_dir;

  void validate() const;
  SolverConfig solver_config(std::uint64_t seed) const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& config);

struct CellResult {
  double alpha = 0.0;
  std::uint64_t seed = 0;
  double final_f = 0.0;
  std::optional<double> final_gap;
  Termination termination = Termination::BudgetExhausted;
  bool diverged = false;
};

struct ExperimentResult {
  std::vector<CellResult> cells;
  std::vector<std::pair<double, double>> median_final_f;  // per alpha, config order
  bool any_abnormal = false;  // divergence or inner-cap in some cell
};

// One (alpha, seed) cell: builds the objective, a fixed-error oracle at the
// given level, and dispatches on config.solver. The jointly adaptive solver
// runs in its fixed-oracle variant, matching how the sweeps are defined.
RunTrace run_single_cell(const ExperimentConfig& config, double alpha,
                         std::uint64_t seed);

// Full (alpha x seed) grid. Writes one trace CSV per cell, a summary CSV and
// a meta.json into config.out_dir. Identical configs give byte-identical
// outputs.
ExperimentResult run_experiment(const ExperimentConfig& config);

double median(std::vector<double> values);

// Shortest round-trip decimal representation.
std::string format_double(double value);

void write_trace_csv(std::ostream& out, const RunTrace& trace);
std::string trace_file_name(double alpha, std::uint64_t seed);

// Theory report for known constants.
void print_bounds(const ProblemConstants& constants, double epsilon,
                  std::ostream& out);

// Degraded report when mu/L are unknown (non-quadratic objectives): prints
// what alpha alone determines and marks the rest unavailable.
void print_bounds_partial(double alpha, double alpha_min,
                          std::optional<double> initial_gap, std::ostream& out);

}  // namespace plgd
