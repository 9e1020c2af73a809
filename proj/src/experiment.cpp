#include "plgd/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace plgd {

using nlohmann::json;

std::string format_double(double value) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

double median(std::vector<double> values) {
  if (values.empty())
    throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::size_t FunctionSpec::dimension() const {
  switch (kind) {
    case Kind::Rosenbrock: return 2;
    case Kind::NesterovSkokov: return n;
    case Kind::Quadratic: return quadratic.eigenvalues.size();
  }
  return 0;
}

Objective FunctionSpec::make() const {
  switch (kind) {
    case Kind::Rosenbrock: return make_rosenbrock();
    case Kind::NesterovSkokov: return make_nesterov_skokov(n);
    case Kind::Quadratic: return make_quadratic(quadratic);
  }
  throw std::logic_error("FunctionSpec: unreachable");
}

Vector StartSpec::make(std::size_t dimension) const {
  if (components) {
    if (components->size() != dimension)
      throw config_error("x0", "dimension mismatch with the objective");
    return Vector(*components);
  }
  std::vector<double> out(dimension, fill);
  if (first) out[0] = *first;
  return Vector(std::move(out));
}

void ExperimentConfig::validate() const {
  if (alphas.empty()) throw config_error("alphas", "must be nonempty");
  for (double a : alphas)
    if (!(a >= 0.0) || !std::isfinite(a))
      throw config_error("alphas", "levels must be finite and >= 0");
  if (seeds.empty()) throw config_error("seeds", "must be nonempty");
  if (!(l_min > 0.0)) throw config_error("l_min", "must be positive");
  if (!(l_0 >= l_min)) throw config_error("l_0", "must be >= l_min");
  if (!(epsilon > 0.0)) throw config_error("epsilon", "must be positive");
  if (iterations == 0) throw config_error("iterations", "must be >= 1");
  if (max_inner_repeats == 0) throw config_error("max_inner_repeats", "must be >= 1");
  switch (solver) {
    case SolverKind::AdaptiveLAlpha:
      if (!(alpha_min >= 0.0 && alpha_min < 0.5))
        throw config_error("alpha_min", "must lie in [0, 0.5)");
      if (!(alpha_0 >= alpha_min && alpha_0 < 0.5))
        throw config_error("alpha_0", "must lie in [alpha_min, 0.5)");
      break;
    case SolverKind::AdaptiveL:
      if (!(alpha >= 0.0 && alpha < 0.5))
        throw config_error("alpha", "must lie in [0, 0.5)");
      break;
    case SolverKind::ConstantStep:
      if (!(alpha >= 0.0 && alpha < 1.0))
        throw config_error("alpha", "must lie in [0, 1)");
      break;
  }
  if (function.kind == FunctionSpec::Kind::Quadratic) function.quadratic.validate();
}

SolverConfig ExperimentConfig::solver_config(std::uint64_t seed) const {
  SolverConfig c;
  c.l_min = l_min;
  c.l_0 = l_0;
  c.alpha = alpha;
  c.alpha_min = alpha_min;
  c.alpha_0 = alpha_0;
  c.epsilon = epsilon;
  c.max_iterations = iterations;
  c.max_inner_repeats = max_inner_repeats;
  c.seed = seed;
  return c;
}

namespace {

FunctionSpec parse_function(const json& j) {
  FunctionSpec f;
  std::string name;
  if (j.is_string()) {
    name = j.get<std::string>();
  } else if (j.is_object()) {
    if (!j.contains("name")) throw config_error("function.name", "missing");
    name = j.at("name").get<std::string>();
  } else {
    throw config_error("function", "must be a string or an object");
  }
  if (name == "rosenbrock") {
    f.kind = FunctionSpec::Kind::Rosenbrock;
  } else if (name == "nesterov_skokov") {
    f.kind = FunctionSpec::Kind::NesterovSkokov;
    if (j.is_object() && j.contains("n")) f.n = j.at("n").get<std::size_t>();
    if (f.n < 2) throw config_error("function.n", "must be >= 2");
  } else if (name == "quadratic") {
    f.kind = FunctionSpec::Kind::Quadratic;
    if (!j.is_object() || !j.contains("eigenvalues"))
      throw config_error("function.eigenvalues", "missing");
    f.quadratic.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    if (j.contains("shift"))
      f.quadratic.shift = Vector(j.at("shift").get<std::vector<double>>());
    f.quadratic.validate();
  } else {
    throw config_error("function", "unknown function: " + name);
  }
  return f;
}

StartSpec parse_x0(const json& j) {
  StartSpec s;
  if (j.is_array()) {
    s.components = j.get<std::vector<double>>();
  } else if (j.is_object()) {
    if (!j.contains("fill")) throw config_error("x0.fill", "missing");
    s.fill = j.at("fill").get<double>();
    if (j.contains("first")) s.first = j.at("first").get<double>();
  } else {
    throw config_error("x0", "must be an array or a {fill, first} object");
  }
  return s;
}

json function_to_json(const FunctionSpec& f) {
  switch (f.kind) {
    case FunctionSpec::Kind::Rosenbrock: return json{{"name", "rosenbrock"}};
    case FunctionSpec::Kind::NesterovSkokov:
      return json{{"name", "nesterov_skokov"}, {"n", f.n}};
    case FunctionSpec::Kind::Quadratic: {
      json j{{"name", "quadratic"}, {"eigenvalues", f.quadratic.eigenvalues}};
      if (f.quadratic.shift) {
        std::vector<double> shift(f.quadratic.shift->values().begin(),
                                  f.quadratic.shift->values().end());
        j["shift"] = shift;
      }
      return j;
    }
  }
  return {};
}

json x0_to_json(const StartSpec& s) {
  if (s.components) return json(*s.components);
  json j{{"fill", s.fill}};
  if (s.first) j["first"] = *s.first;
  return j;
}

std::vector<std::uint64_t> default_seeds() {
  std::vector<std::uint64_t> seeds(11);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i + 1;
  return seeds;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw config_error("<json>", e.what());
  }
  ExperimentConfig c;
  try {
    if (!j.contains("function")) throw config_error("function", "missing");
    c.function = parse_function(j.at("function"));
    if (!j.contains("solver")) throw config_error("solver", "missing");
    c.solver = solver_kind_from_string(j.at("solver").get<std::string>());
    if (!j.contains("x0")) throw config_error("x0", "missing");
    c.x0 = parse_x0(j.at("x0"));
    if (!j.contains("alphas")) throw config_error("alphas", "missing");
    c.alphas = j.at("alphas").get<std::vector<double>>();
    c.seeds = j.contains("seeds") ? j.at("seeds").get<std::vector<std::uint64_t>>()
                                  : default_seeds();
    if (!j.contains("l_min")) throw config_error("l_min", "missing");
    c.l_min = j.at("l_min").get<double>();
    if (!j.contains("l_0")) throw config_error("l_0", "missing");
    c.l_0 = j.at("l_0").get<double>();
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    if (j.contains("alpha_min")) c.alpha_min = j.at("alpha_min").get<double>();
    if (j.contains("alpha_0")) c.alpha_0 = j.at("alpha_0").get<double>();
    if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
    if (!j.contains("iterations")) throw config_error("iterations", "missing");
    c.iterations = j.at("iterations").get<std::size_t>();
    if (j.contains("max_inner_repeats"))
      c.max_inner_repeats = j.at("max_inner_repeats").get<std::size_t>();
    if (!j.contains("out_dir")) throw config_error("out_dir", "missing");
    c.out_dir = j.at("out_dir").get<std::string>();
  } catch (const json::exception& e) {
    throw config_error("<json>", e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["function"] = function_to_json(c.function);
  j["solver"] = to_string(c.solver);
  j["x0"] = x0_to_json(c.x0);
  j["alphas"] = c.alphas;
  j["seeds"] = c.seeds;
  j["l_min"] = c.l_min;
  j["l_0"] = c.l_0;
  j["alpha"] = c.alpha;
  j["alpha_min"] = c.alpha_min;
  j["alpha_0"] = c.alpha_0;
  j["epsilon"] = c.epsilon;
  j["iterations"] = c.iterations;
  j["max_inner_repeats"] = c.max_inner_repeats;
  j["out_dir"] = c.out_dir.generic_string();
  return j.dump(2);
}

RunTrace run_single_cell(const ExperimentConfig& config, double alpha,
                         std::uint64_t seed) {
  const Objective objective = config.function.make();
  const Vector x0 = config.x0.make(objective.dimension);
  const SolverConfig sc = config.solver_config(seed);
  NoisyOracle oracle(objective, OracleMode::fixed_relative(alpha), seed);
  switch (config.solver) {
    case SolverKind::ConstantStep:
      return run_constant_step(objective, oracle, x0, config.l_0, config.alpha, sc);
    case SolverKind::AdaptiveL:
      return run_adaptive_l(objective, oracle, x0, sc);
    case SolverKind::AdaptiveLAlpha:
      return run_adaptive_l_alpha(objective, oracle, x0, sc,
                                  /*request_accuracy=*/false);
  }
  throw std::logic_error("run_single_cell: unreachable");
}

std::string trace_file_name(double alpha, std::uint64_t seed) {
  return "trace_a" + format_double(alpha) + "_s" + std::to_string(seed) + ".csv";
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << "k,f,gap,exact_grad_norm,noisy_grad_norm,L_k,alpha_k,step_size,"
         "inner_repeats,dist_from_x0\n";
  for (const auto& r : trace.records) {
    out << r.k << ',' << format_double(r.f_value) << ',';
    if (r.gap) out << format_double(*r.gap);
    out << ',' << format_double(r.exact_grad_norm) << ','
        << format_double(r.noisy_grad_norm) << ',' << format_double(r.l_k)
        << ',' << format_double(r.alpha_k) << ',' << format_double(r.step_size)
        << ',' << r.inner_repeats << ',' << format_double(r.dist_from_x0)
        << '\n';
  }
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  out << contents;
  if (!out) throw io_error("write failed: " + path.string());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) throw io_error("cannot create output directory: " + config.out_dir.string());

  ExperimentResult result;
  std::ostringstream summary;
  summary << "alpha,seed,final_f,final_gap,termination\n";

  for (double alpha : config.alphas) {
    std::vector<double> finals;
    for (std::uint64_t seed : config.seeds) {
      CellResult cell;
      cell.alpha = alpha;
      cell.seed = seed;
      RunTrace trace;
      try {
        trace = run_single_cell(config, alpha, seed);
        cell.termination = trace.termination;
        if (trace.termination == Termination::InnerCapExceeded)
          result.any_abnormal = true;
      } catch (const divergence_error& e) {
        trace = e.partial_trace();
        cell.diverged = true;
        result.any_abnormal = true;
      }
      if (!trace.records.empty()) {
        cell.final_f = trace.records.back().f_value;
        cell.final_gap = trace.records.back().gap;
      } else {
        cell.final_f = trace.initial_f;
        cell.final_gap = trace.initial_gap;
      }
      if (!cell.diverged) finals.push_back(cell.final_f);

      std::ostringstream body;
      write_trace_csv(body, trace);
      write_file(config.out_dir / trace_file_name(alpha, seed), body.str());

      summary << format_double(alpha) << ',' << seed << ','
              << format_double(cell.final_f) << ',';
      if (cell.final_gap) summary << format_double(*cell.final_gap);
      summary << ',' << (cell.diverged ? "diverged" : to_string(cell.termination))
              << '\n';
      result.cells.push_back(std::move(cell));
    }
    if (!finals.empty()) {
      const double med = median(std::move(finals));
      result.median_final_f.emplace_back(alpha, med);
      summary << format_double(alpha) << ",median," << format_double(med) << ",,\n";
    }
  }

  write_file(config.out_dir / "summary.csv", summary.str());

  json meta;
  meta["generator"] = NoisyOracle::generator_name();
  meta["config"] = json::parse(config_to_json(config));
  write_file(config.out_dir / "meta.json", meta.dump(2) + "\n");

  return result;
}

namespace {

void print_line(std::ostream& out, const char* label, const std::string& value) {
  out << "  " << label << value << '\n';
}

}  // namespace

void print_bounds(const ProblemConstants& c, double epsilon, std::ostream& out) {
  const TheoryBounds b = compute_bounds(c, epsilon);
  out << "problem constants: L=" << format_double(c.l) << " mu=" << format_double(c.mu)
      << " alpha=" << format_double(c.alpha) << " alpha_min=" << format_double(c.alpha_min)
      << " L_min=" << format_double(c.l_min)
      << " initial_gap=" << format_double(c.initial_gap)
      << " epsilon=" << format_double(epsilon) << '\n';
  print_line(out, "rate modifier xi                 = ", format_double(b.xi));
  print_line(out, "rate modifier xi_max             = ", format_double(b.xi_max));
  print_line(out, "L_max (adaptive L)               = ", format_double(b.l_max_adaptive_l));
  print_line(out, "L_max (adaptive L, alpha)        = ", format_double(b.l_max_adaptive_l_alpha));
  print_line(out, "alpha_max                        = ", format_double(b.alpha_max));
  print_line(out, "iteration bound (adaptive L)     = ", std::to_string(b.iterations_adaptive_l));
  print_line(out, "iteration bound (adaptive L, a)  = ", std::to_string(b.iterations_adaptive_l_alpha));
  print_line(out, "trajectory radius (adaptive L)   = ", format_double(b.traj_radius_adaptive_l));
  print_line(out, "trajectory radius (adaptive L,a) = ", format_double(b.traj_radius_adaptive_l_alpha));
  print_line(out, "rate factor (adaptive L)         = ", format_double(b.rate_factor));
  print_line(out, "rate factor (constant step)      = ",
             format_double(constant_rate_factor(c.l, c.mu, c.alpha)));
}

void print_bounds_partial(double alpha, double alpha_min,
                          std::optional<double> initial_gap, std::ostream& out) {
  out << "problem constants: mu unknown, L unknown (no PL constant available)\n";
  print_line(out, "alpha                            = ", format_double(alpha));
  print_line(out, "alpha_min                        = ", format_double(alpha_min));
  if (initial_gap)
    print_line(out, "initial gap                      = ", format_double(*initial_gap));
  if (alpha >= 0.0 && alpha < 0.5) {
    print_line(out, "rate modifier xi                 = ", format_double(rate_modifier(alpha)));
  } else {
    print_line(out, "rate modifier xi                 = ", "unavailable (alpha >= 0.5, no guarantee)");
  }
  print_line(out, "L_max / alpha_max                = ", "mu unknown");
  print_line(out, "iteration bound                  = ", "mu unknown");
  print_line(out, "trajectory radius                = ", "mu unknown");
}

}  // namespace plgd
