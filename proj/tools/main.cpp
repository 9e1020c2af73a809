#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plgd/experiment.hpp"

namespace fs = std::filesystem;
using namespace plgd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitAbnormalRun = 3;

struct Overrides {
  std::optional<std::size_t> seed_count;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> iterations;
  std::optional<std::string> solver;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
};

void apply_overrides(ExperimentConfig& config, const Overrides& o) {
  if (o.seed_count) {
    config.seeds.resize(*o.seed_count);
    for (std::size_t i = 0; i < config.seeds.size(); ++i) config.seeds[i] = i + 1;
  }
  if (o.out_dir) config.out_dir = *o.out_dir;
  if (o.iterations) config.iterations = *o.iterations;
  if (o.solver) config.solver = solver_kind_from_string(*o.solver);
  if (o.epsilon) config.epsilon = *o.epsilon;
  config.validate();
}

fs::path resolve_preset(const std::string& name, const std::string& presets_dir) {
  if (fs::exists(name)) return name;
  const fs::path candidate = fs::path(presets_dir) / (name + ".json");
  if (fs::exists(candidate)) return candidate;
  throw io_error("preset not found: " + name + " (looked in " + presets_dir + ")");
}

int do_run(const ExperimentConfig& config, const Overrides& o) {
  const double alpha = o.alpha.value_or(config.alphas.front());
  const std::uint64_t seed = o.seed.value_or(config.seeds.front());
  RunTrace trace;
  bool diverged = false;
  try {
    trace = run_single_cell(config, alpha, seed);
  } catch (const divergence_error& e) {
    trace = e.partial_trace();
    diverged = true;
  }
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw io_error("cannot create output directory: " + config.out_dir.string());
  const fs::path out = config.out_dir / trace_file_name(alpha, seed);
  {
    std::ofstream file(out, std::ios::binary);
    if (!file) throw io_error("cannot open for writing: " + out.string());
    write_trace_csv(file, trace);
  }
  const double final_f =
      trace.records.empty() ? trace.initial_f : trace.records.back().f_value;
  std::cout << "alpha=" << format_double(alpha) << " seed=" << seed
            << " iterations=" << trace.records.size()
            << " final_f=" << format_double(final_f) << " termination="
            << (diverged ? "diverged" : to_string(trace.termination))
            << "\ntrace: " << out.string() << '\n';
  if (diverged || trace.termination == Termination::InnerCapExceeded)
    return kExitAbnormalRun;
  return kExitOk;
}

int do_sweep(const ExperimentConfig& config, bool print_table) {
  const ExperimentResult result = run_experiment(config);
  if (print_table) {
    std::cout << "median final f over " << config.seeds.size() << " seeds ("
              << config.iterations << " iterations, solver "
              << to_string(config.solver) << ")\n";
    std::cout << "alpha    :";
    for (const auto& [alpha, med] : result.median_final_f)
      std::cout << ' ' << format_double(alpha);
    std::cout << "\nmedian f :";
    for (const auto& [alpha, med] : result.median_final_f)
      std::cout << ' ' << format_double(med);
    std::cout << '\n';
  } else {
    for (const auto& [alpha, med] : result.median_final_f)
      std::cout << "alpha=" << format_double(alpha)
                << " median_final_f=" << format_double(med) << '\n';
  }
  std::cout << "outputs: " << config.out_dir.string() << '\n';
  return result.any_abnormal ? kExitAbnormalRun : kExitOk;
}

int do_bounds(const ExperimentConfig& config, std::optional<double> epsilon_flag) {
  const double epsilon = epsilon_flag.value_or(config.epsilon);
  const Objective objective = config.function.make();
  const Vector x0 = config.x0.make(objective.dimension);
  std::optional<double> gap;
  if (objective.f_star) gap = objective.value(x0) - *objective.f_star;

  for (double alpha : config.alphas) {
    std::cout << "--- oracle error level alpha = " << format_double(alpha) << " ---\n";
    const bool adaptive_alpha = config.solver == SolverKind::AdaptiveLAlpha;
    const double alpha_min = adaptive_alpha ? config.alpha_min : alpha;
    if (config.function.kind == FunctionSpec::Kind::Quadratic && alpha < 0.5) {
      ProblemConstants c;
      c.l = config.function.quadratic.l();
      c.mu = config.function.quadratic.mu();
      c.alpha = alpha;
      c.alpha_min = std::min(alpha_min, alpha);
      c.l_min = config.l_min;
      c.initial_gap = gap.value_or(0.0);
      print_bounds(c, epsilon, std::cout);
    } else if (config.function.kind == FunctionSpec::Kind::Quadratic) {
      std::cout << "  no convergence guarantee for alpha >= 0.5\n";
    } else {
      print_bounds_partial(alpha, alpha_min, gap, std::cout);
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradient descent with relative gradient error: experiment harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  std::string presets_dir = "presets";
  Overrides overrides;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out-dir", overrides.out_dir, "override the output directory");
    cmd->add_option("--iterations", overrides.iterations, "override the iteration budget");
    cmd->add_option("--solver", overrides.solver,
                    "override the solver (constant_step|adaptive_l|adaptive_l_alpha)");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run a single (alpha, seed) cell");
  run_cmd->add_option("config", config_path, "experiment config (JSON)")->required();
  run_cmd->add_option("--alpha", overrides.alpha, "oracle error level (default: first of the sweep)");
  run_cmd->add_option("--seed", overrides.seed, "seed (default: first of the list)");
  add_common(run_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run the full (alpha x seed) grid");
  sweep_cmd->add_option("config", config_path, "experiment config (JSON)")->required();
  sweep_cmd->add_option("--seed-count", overrides.seed_count, "use seeds 1..N instead of the config list");
  add_common(sweep_cmd);

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "print theoretical bounds for a config");
  bounds_cmd->add_option("config", config_path, "experiment config (JSON)")->required();
  bounds_cmd->add_option("--epsilon", overrides.epsilon, "stopping tolerance for the iteration bounds");

  CLI::App* table_cmd = app.add_subcommand("table", "run a named preset and print the median table");
  table_cmd->add_option("preset", preset_name, "preset name or path")->required();
  table_cmd->add_option("--presets-dir", presets_dir, "directory holding preset configs");
  table_cmd->add_option("--seed-count", overrides.seed_count, "use seeds 1..N instead of the config list");
  add_common(table_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig config;
    if (table_cmd->parsed()) {
      config = load_config(resolve_preset(preset_name, presets_dir));
    } else {
      config = load_config(config_path);
    }
    apply_overrides(config, overrides);

    if (run_cmd->parsed()) return do_run(config, overrides);
    if (sweep_cmd->parsed()) return do_sweep(config, /*print_table=*/false);
    if (bounds_cmd->parsed()) return do_bounds(config, overrides.epsilon);
    if (table_cmd->parsed()) return do_sweep(config, /*print_table=*/true);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
