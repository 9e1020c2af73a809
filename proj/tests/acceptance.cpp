// End-to-end verification suite. Each check pins down one guarantee of the
// library: analytic-gradient correctness, the noise-model certificates, the
// per-step decrease and soundness guarantees of the adaptive solvers on
// quadratics with known constants, the reference experiment tables, and
// bit-level determinism of the sweep harness. One pass/fail line is printed
// per check; most carry a wall-clock budget that is part of the check.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "plgd/bounds.hpp"
#include "plgd/experiment.hpp"
#include "plgd/oracle.hpp"
#include "plgd/solvers.hpp"
#include "plgd/testbed.hpp"

using namespace plgd;
using namespace plgd::testing;
namespace fs = std::filesystem;

#ifndef PLGD_PRESETS_DIR
#define PLGD_PRESETS_DIR "presets"
#endif
#ifndef PLGD_CLI_PATH
#define PLGD_CLI_PATH ""
#endif

namespace {

struct Checker {
  int failures = 0;
  std::ostringstream detail;

  void require(bool ok, const std::string& message) {
    if (!ok) {
      ++failures;
      if (failures <= 8) detail << "      " << message << '\n';
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;  // 0 = no budget
  std::function<void(Checker&)> body;
};

ExperimentConfig preset(const std::string& name, const fs::path& out_root) {
  ExperimentConfig c = load_config(fs::path(PLGD_PRESETS_DIR) / (name + ".json"));
  c.out_dir = out_root / name;
  return c;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "plgd_acceptance";
  fs::create_directories(dir);
  return dir;
}

double rel_tol(double scale) { return 1e-10 * std::max(1.0, scale); }

// ---------------------------------------------------------------------------
// 1. analytic gradients vs central finite differences
// ---------------------------------------------------------------------------
void check_gradients(Checker& check) {
  Xoshiro256 rng(101);
  const Objective functions[] = {make_rosenbrock(), make_nesterov_skokov(100),
                                 make_quadratic(random_quadratic(rng, 5, 10))};
  for (const auto& obj : functions) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vector x = random_point(obj.dimension, rng);
      worst = std::max(worst, relative_gradient_error(obj, x));
    }
    check.require(worst <= 1e-5, obj.name + ": worst finite-difference error " +
                                     format_double(worst));
  }
}

// ---------------------------------------------------------------------------
// 2. noise model: exact certificate, tightness, mean-norm law
// ---------------------------------------------------------------------------
void check_noise_model(Checker& check) {
  const Objective obj = make_rosenbrock();
  const double alpha = 0.3;
  NoisyOracle oracle(obj, OracleMode::fixed_relative(alpha), 202);
  Xoshiro256 rng(203);
  double max_ratio = 0.0;
  int certificate_violations = 0;
  for (int i = 0; i < 100000; ++i) {
    const Vector x = random_point(2, rng);
    const Vector exact = obj.exact_gradient(x);
    const double exact_norm = euclidean_norm(exact);
    const Vector noisy = noisy_gradient(oracle, x);
    const double err = distance(noisy, exact);
    if (err > alpha * exact_norm) ++certificate_violations;
    if (exact_norm > 0.0) max_ratio = std::max(max_ratio, err / exact_norm);
  }
  check.require(certificate_violations == 0,
                "certificate violations: " + std::to_string(certificate_violations));
  check.require(max_ratio >= 0.29,
                "max error ratio " + format_double(max_ratio) + " < 0.29");

  for (std::size_t n : {std::size_t{2}, std::size_t{100}}) {
    Xoshiro256 ball_rng(300 + n);
    double sum = 0.0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i)
      sum += euclidean_norm(sample_ball(n, 1.0, ball_rng));
    const double want = static_cast<double>(n) / static_cast<double>(n + 1);
    const double got = sum / trials;
    check.require(std::fabs(got - want) < 0.01,
                  "mean ball norm in dimension " + std::to_string(n) + ": " +
                      format_double(got) + " vs " + format_double(want));
  }
}

// ---------------------------------------------------------------------------
// 3. accepted-step decrease across the full preset suite, both adaptive solvers
// ---------------------------------------------------------------------------
void check_accepted_decrease(Checker& check) {
  const fs::path out = scratch_dir() / "decrease";
  const char* names[] = {"rosenbrock_t1", "rosenbrock_t2", "ns_t3",
                         "ns_t4",         "ns_t5",         "ns_t6"};
  for (const char* name : names) {
    ExperimentConfig config = preset(name, out);
    for (double alpha : config.alphas) {
      for (std::uint64_t seed : config.seeds) {
        // jointly adaptive solver, as configured
        RunTrace trace = run_single_cell(config, alpha, seed);
        double violation = max_decrease_violation(trace);
        check.require(violation <= 1e-12,
                      std::string(name) + " joint solver alpha=" +
                          format_double(alpha) + " seed=" + std::to_string(seed) +
                          " violation=" + format_double(violation));

        // adaptive-L solver with a clamped assumed level; termination kind is
        // unconstrained here (understated levels may hit the retry cap)
        ExperimentConfig fixed = config;
        fixed.solver = SolverKind::AdaptiveL;
        fixed.alpha = std::min(alpha, 0.49);
        trace = run_single_cell(fixed, alpha, seed);
        violation = max_decrease_violation(trace);
        check.require(violation <= 1e-12,
                      std::string(name) + " adaptive-L alpha=" +
                          format_double(alpha) + " seed=" + std::to_string(seed) +
                          " violation=" + format_double(violation));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 4/5. soundness batteries on random quadratics with known constants
// ---------------------------------------------------------------------------
struct BatteryCase {
  QuadraticSpec spec;
  Vector x0;
  double alpha;
  std::uint64_t seed;
};

std::vector<BatteryCase> soundness_battery() {
  std::vector<BatteryCase> cases;
  Xoshiro256 rng(404);
  const double alphas[] = {0.0, 0.1, 0.25, 0.4};
  for (int i = 0; i < 100; ++i) {
    const QuadraticSpec spec = random_quadratic(rng, 2, 8);
    const Vector x0 = random_point(spec.eigenvalues.size(), rng);
    cases.push_back({spec, x0, alphas[i % 4], 500 + static_cast<std::uint64_t>(i)});
  }
  return cases;
}

void check_adaptive_l_soundness(Checker& check) {
  for (const auto& battery_case : soundness_battery()) {
    const QuadraticSpec& spec = battery_case.spec;
    const Objective obj = make_quadratic(spec);
    const double mu = spec.mu();
    const double l = spec.l();
    const double xi = rate_modifier(battery_case.alpha);
    const double gap0 = obj.value(battery_case.x0);
    if (gap0 == 0.0) continue;

    SolverConfig config;
    config.l_min = mu;
    config.l_0 = mu;  // <= L, as the a-priori ceiling 2L assumes
    config.alpha = battery_case.alpha;
    config.epsilon = mu * gap0 * 1e-5;
    config.max_iterations =
        iteration_bound(l_max_adaptive_l(l), mu, xi, config.epsilon, gap0);

    NoisyOracle oracle(obj, OracleMode::fixed_relative(battery_case.alpha),
                       battery_case.seed);
    const RunTrace trace = run_adaptive_l(obj, oracle, battery_case.x0, config);

    check.require(trace.termination != Termination::InnerCapExceeded,
                  "unexpected retry-cap exit");
    const double target = config.epsilon / mu;
    check.require(trace.records.back().gap.value() <= target + rel_tol(target),
                  "final gap above epsilon/mu");

    // gap must cross the target within the iteration bound computed from the
    // largest accepted estimate
    const double l_obs = max_recorded_l(trace);
    check.require(l_obs <= 2.0 * l + rel_tol(l), "accepted estimate above 2L");
    const std::size_t n_obs =
        iteration_bound(l_obs, mu, xi, config.epsilon, gap0);
    if (trace.records.size() >= n_obs) {
      const double gap_at_bound = trace.records[n_obs - 1].gap.value();
      check.require(gap_at_bound <= target + rel_tol(target),
                    "gap not within target by the observed iteration bound");
    }

    const double radius =
        trajectory_radius(l_obs, mu, xi, config.l_min, gap0);
    check.require(max_recorded_dist(trace) <= radius + rel_tol(radius),
                  "iterate left the trajectory ball");
  }
}

void check_adaptive_l_alpha_soundness(Checker& check,
                                      std::vector<RunTrace>* traces_out) {
  for (const auto& battery_case : soundness_battery()) {
    const QuadraticSpec& spec = battery_case.spec;
    const Objective obj = make_quadratic(spec);
    const double mu = spec.mu();
    const double l = spec.l();
    const double alpha = battery_case.alpha;
    const double gap0 = obj.value(battery_case.x0);
    if (gap0 == 0.0) continue;

    SolverConfig config;
    config.l_min = mu;
    config.l_0 = mu;
    config.alpha_min = alpha;  // floor equals the working level: a-priori
    config.alpha_0 = alpha;    // ceilings 2L and alpha_max apply
    config.epsilon = mu * gap0 * 1e-5;
    config.max_iterations = 1000000;

    NoisyOracle oracle(obj, OracleMode::on_request(alpha), battery_case.seed);
    const RunTrace trace =
        run_adaptive_l_alpha(obj, oracle, battery_case.x0, config);

    check.require(trace.termination == Termination::StoppingRuleFired,
                  "stopping rule did not fire");
    const double target = config.epsilon / mu;
    check.require(trace.records.back().gap.value() <= target + rel_tol(target),
                  "final gap above epsilon/mu");

    const double l_obs = max_recorded_l(trace);
    const double alpha_obs = max_recorded_alpha(trace);
    const double l_cap = l_max_adaptive_l_alpha(l, alpha, alpha);
    const double alpha_cap = alpha_max_adaptive(alpha, l, config.l_min);
    check.require(l_obs <= l_cap + rel_tol(l_cap),
                  "accepted estimate above the adapted ceiling");
    check.require(alpha_obs <= alpha_cap + rel_tol(1.0),
                  "accepted level above the adapted ceiling");

    const double xi_obs = rate_modifier(alpha_obs);
    const std::size_t n_obs =
        iteration_bound(l_obs, mu, xi_obs, config.epsilon, gap0);
    if (trace.records.size() >= n_obs) {
      const double gap_at_bound = trace.records[n_obs - 1].gap.value();
      check.require(gap_at_bound <= target + rel_tol(target),
                    "gap not within target by the observed iteration bound");
    }

    const double radius =
        trajectory_radius(l_obs, mu, xi_obs, config.l_min, gap0);
    check.require(max_recorded_dist(trace) <= radius + rel_tol(radius),
                  "iterate left the trajectory ball");

    if (traces_out) traces_out->push_back(trace);
  }
}

// ---------------------------------------------------------------------------
// 6. retry-count bound over the joint-solver battery
// ---------------------------------------------------------------------------
void check_inner_repeat_bound(Checker& check) {
  std::vector<RunTrace> traces;
  Checker scratch;  // soundness itself is criterion 5's business
  check_adaptive_l_alpha_soundness(scratch, &traces);
  std::size_t i = 0;
  for (const auto& battery_case : soundness_battery()) {
    const Objective obj = make_quadratic(battery_case.spec);
    if (obj.value(battery_case.x0) == 0.0) continue;
    const RunTrace& trace = traces[i++];
    const std::size_t executions =
        trace.records.size() + inner_repeat_total(trace);
    const double bound =
        inner_repeat_bound(trace.records.size(), battery_case.spec.l(),
                           battery_case.spec.mu(),  // l_min used in the battery
                           battery_case.alpha, battery_case.alpha);
    check.require(static_cast<double>(executions) <= bound,
                  "acceptance-test executions " + std::to_string(executions) +
                      " above the bound " + format_double(bound));
  }
}

// ---------------------------------------------------------------------------
// 7-10. reference experiment tables
// ---------------------------------------------------------------------------
std::vector<std::pair<double, double>> run_preset_medians(const std::string& name) {
  const ExperimentConfig config = preset(name, scratch_dir() / "tables");
  return run_experiment(config).median_final_f;
}

void check_table_1000(Checker& check) {
  // 1000-iteration 2-d valley run: medians within a factor 3 of the
  // reference row per level
  const double reference[] = {0.0074, 0.0075, 0.0060, 0.0021, 0.0018, 0.0017};
  const auto medians = run_preset_medians("rosenbrock_t1");
  check.require(medians.size() == 6, "expected 6 sweep levels");
  for (std::size_t i = 0; i < medians.size(); ++i) {
    const auto [alpha, med] = medians[i];
    const bool ok = med >= reference[i] / 3.0 && med <= reference[i] * 3.0;
    check.require(ok, "alpha=" + format_double(alpha) + ": median " +
                          format_double(med) + " outside [" +
                          format_double(reference[i] / 3.0) + ", " +
                          format_double(reference[i] * 3.0) + "]");
  }
}

void check_table_10000(Checker& check) {
  // 10000 iterations reach machine-precision minima for every level
  const auto medians = run_preset_medians("rosenbrock_t2");
  check.require(medians.size() == 6, "expected 6 sweep levels");
  for (const auto& [alpha, med] : medians)
    check.require(med <= 1e-10, "alpha=" + format_double(alpha) + ": median " +
                                    format_double(med) + " > 1e-10");
}

void check_tables_plateau(Checker& check) {
  // from the zero start the 100-d chain settles on the 0.058 local plateau
  // by iteration 50 for every level up to 0.5
  const auto at_50 = run_preset_medians("ns_t4");
  check.require(at_50.size() == 6, "expected 6 sweep levels");
  for (const auto& [alpha, med] : at_50) {
    if (alpha > 0.5) continue;
    check.require(std::fabs(med - 0.058) <= 0.005,
                  "alpha=" + format_double(alpha) + ": median " +
                      format_double(med) + " not within 0.058 +- 0.005");
  }

  // at iteration 10 the value still grows with the noise level
  const auto at_10 = run_preset_medians("ns_t3");
  check.require(at_10.size() == 6, "expected 6 sweep levels");
  check.require(at_10.back().second > at_10.front().second,
                "median at level 1 not above median at level 0.001");
}

void check_tables_basins(Checker& check) {
  // from the flipped start with a small initial estimate, tiny noise reaches
  // the global minimum while levels >= 0.1 fall into the 0.98 basin
  const auto medians = run_preset_medians("ns_t6");
  check.require(medians.size() == 6, "expected 6 sweep levels");
  for (const auto& [alpha, med] : medians) {
    if (alpha == 0.001) {
      check.require(med <= 1e-8, "alpha=0.001: median " + format_double(med) +
                                     " > 1e-8");
    } else if (alpha >= 0.1) {
      check.require(std::fabs(med - 0.98) <= 0.05,
                    "alpha=" + format_double(alpha) + ": median " +
                        format_double(med) + " not within 0.98 +- 0.05");
    }
  }
}

// ---------------------------------------------------------------------------
// 11. constant-step geometric envelope
// ---------------------------------------------------------------------------
void check_constant_step_envelope(Checker& check) {
  Xoshiro256 rng(1111);
  for (int trial = 0; trial < 50; ++trial) {
    const QuadraticSpec spec = random_quadratic(rng, 2, 8);
    const Objective obj = make_quadratic(spec);
    const Vector x0 = random_point(obj.dimension, rng);
    for (double alpha : {0.0, 0.2}) {
      SolverConfig config;
      config.l_min = spec.mu();
      config.l_0 = spec.l();
      config.max_iterations = 200;
      config.epsilon = 1e-300;
      NoisyOracle oracle(obj, OracleMode::fixed_relative(alpha),
                         2222 + static_cast<std::uint64_t>(trial));
      const RunTrace trace =
          run_constant_step(obj, oracle, x0, spec.l(), alpha, config);
      const double factor = constant_rate_factor(spec.l(), spec.mu(), alpha);
      double envelope = trace.initial_gap.value();
      for (const auto& r : trace.records) {
        envelope *= factor;
        if (r.gap.value() > envelope + rel_tol(envelope)) {
          check.require(false,
                        "gap above the geometric envelope at iteration " +
                            std::to_string(r.k));
          break;
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 12. byte-identical sweeps through the command-line tool
// ---------------------------------------------------------------------------
void check_sweep_determinism(Checker& check) {
  const std::string cli = PLGD_CLI_PATH;
  if (cli.empty()) {
    check.require(false, "command-line tool path not configured");
    return;
  }
  const fs::path root = scratch_dir() / "determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path config_path = root / "config.json";
  {
    std::ofstream config(config_path);
    config << R"({
      "function": "rosenbrock",
      "solver": "adaptive_l_alpha",
      "x0": [0.0, 0.0],
      "alphas": [0.01, 0.3, 1.0],
      "seeds": [1, 2, 3],
      "l_min": 0.01, "l_0": 1.0,
      "alpha_min": 0.001, "alpha_0": 0.01,
      "iterations": 300,
      "out_dir": "unused"
    })";
  }

  auto sweep_into = [&](const std::string& sub) {
    const std::string cmd = cli + " sweep " + config_path.string() +
                            " --out-dir " + (root / sub).string() + " > " +
                            (root / (sub + ".log")).string();
    return std::system(cmd.c_str());
  };
  check.require(sweep_into("a") == 0, "first sweep exited nonzero");
  check.require(sweep_into("b") == 0, "second sweep exited nonzero");

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    const fs::path other = root / "b" / entry.path().filename();
    if (!fs::exists(other)) {
      check.require(false, "missing counterpart for " + entry.path().filename().string());
      continue;
    }
    if (entry.path().filename() == "meta.json") continue;  // echoes out_dir
    if (slurp(entry.path()) != slurp(other))
      check.require(false, "byte mismatch in " + entry.path().filename().string());
    ++compared;
  }
  check.require(compared == 10, "expected 9 traces + summary, compared " +
                                    std::to_string(compared));
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "analytic gradients match finite differences", 1.0, check_gradients},
      {2, "relative-error certificates and ball law", 10.0, check_noise_model},
      {3, "accepted-step decrease across the preset suite", 0.0, check_accepted_decrease},
      {4, "adaptive-L soundness on random quadratics", 30.0, check_adaptive_l_soundness},
      {5, "joint-adaptation soundness on random quadratics", 30.0,
       [](Checker& c) { check_adaptive_l_alpha_soundness(c, nullptr); }},
      {6, "acceptance-test execution bound", 0.0, check_inner_repeat_bound},
      {7, "1000-iteration valley medians near the reference row", 60.0, check_table_1000},
      {8, "10000-iteration valley medians at machine precision", 300.0, check_table_10000},
      {9, "100-d chain plateau and noise ordering", 30.0, check_tables_plateau},
      {10, "100-d chain basin separation by noise level", 30.0, check_tables_basins},
      {11, "constant-step geometric envelope", 10.0, check_constant_step_envelope},
      {12, "byte-identical sweep outputs", 0.0, check_sweep_determinism},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failed = 0;
  for (const auto& criterion : criteria) {
    if (only != 0 && criterion.id != only) continue;
    Checker check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    bool ok = check.failures == 0;
    std::string timing = " (" + format_double(elapsed) + "s";
    if (criterion.budget_seconds > 0.0) {
      timing += " < " + format_double(criterion.budget_seconds) + "s";
      if (elapsed >= criterion.budget_seconds) ok = false;
    }
    timing += ")";

    std::cout << (ok ? "[PASS] " : "[FAIL] ") << (criterion.id < 10 ? "0" : "")
              << criterion.id << " " << criterion.name << timing << '\n';
    if (!ok) {
      std::cout << check.detail.str();
      if (check.failures > 8)
        std::cout << "      ... " << (check.failures - 8) << " more\n";
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}
