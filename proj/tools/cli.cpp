#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qsurrogate/errors.hpp"
#include "qsurrogate/experiments.hpp"
#include "qsurrogate/kernel.hpp"
#include "qsurrogate/oracle.hpp"
#include "qsurrogate/serialization.hpp"
#include "qsurrogate/simulator.hpp"
#include "qsurrogate/taylor.hpp"

namespace qsur::cli {

namespace {

using nlohmann::json;

struct CircuitSource {
  std::string circuit_file;
  std::string observable_file;
  std::size_t bench_n = 8;
  std::size_t bench_d = 2;
  bool bench_given = false;
};

struct Problem {
  ParametrizedCircuit circuit;
  Observable observable;
  std::string description;
};

struct RunConfig {
  CircuitSource source;
  std::string method;
  int order = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string output;
  std::string surrogate_file;
  std::string scaling = "ktilde";
  bool no_cache = false;
  // evaluation
  std::string theta;
  std::string curve;
  double t_min = -1.0;
  double t_max = 1.0;
  std::size_t t_count = 201;
  bool bound = false;
  bool enrich_center = false;
  // l2-error
  std::vector<std::string> methods;
  std::vector<int> orders;
  std::vector<double> ks;
  std::size_t n_f = 300000;
  std::size_t n_diff = 100000;
  double sem_threshold = 0.021;
};

void add_source_options(CLI::App* app, CircuitSource& s) {
  app->add_option("--circuit", s.circuit_file, "Circuit text file");
  auto* n = app->add_option("--bench-n", s.bench_n, "Benchmark circuit qubit count (default 8)");
  auto* d = app->add_option("--bench-d", s.bench_d, "Benchmark circuit layer count (default 2)");
  n->excludes("--circuit");
  d->excludes("--circuit");
  app->add_option("--observable", s.observable_file, "Observable file ('<coeff> <word>' per line); default Z...Z");
}

bool source_given(const CLI::App* app) {
  return app->count("--circuit") + app->count("--bench-n") + app->count("--bench-d") > 0;
}

Problem load_problem(const CircuitSource& s) {
  if (s.circuit_file.empty()) {
    auto circuit = build_benchmark_circuit(s.bench_n, s.bench_d);
    Observable obs = s.observable_file.empty() ? Observable::all_z(s.bench_n)
                                               : parse_observable(read_text_file(s.observable_file));
    return {std::move(circuit), std::move(obs),
            "benchmark n=" + std::to_string(s.bench_n) + " d=" + std::to_string(s.bench_d)};
  }
  auto circuit = parse_circuit(read_text_file(s.circuit_file));
  Observable obs = s.observable_file.empty() ? Observable::all_z(circuit.num_qubits())
                                             : parse_observable(read_text_file(s.observable_file));
  return {std::move(circuit), std::move(obs), s.circuit_file};
}

CacheMode cache_mode(const RunConfig& c) {
  if (c.no_cache) return CacheMode::Disabled;
  return c.threads > 1 ? CacheMode::Concurrent : CacheMode::Exclusive;
}

struct BuildResult {
  Surrogate surrogate;
  json stats;
  std::vector<std::string> warnings;
};

BuildResult build(const Problem& p, const std::string& method, int order, const RunConfig& c, bool enrich = false) {
  if (order < 0) throw ValidationError("order L must be nonnegative");
  GridOracle oracle(p.circuit, p.observable, cache_mode(c));
  const auto m = p.circuit.num_params();
  const auto start = std::chrono::steady_clock::now();
  BuildResult r{TaylorSurrogate{}, json::object(), {}};
  json stats = {{"method", method}, {"m", m}, {"L", order}, {"circuit", p.description}};
  if (method == "taylor") {
    r.surrogate = build_taylor(oracle, order, BuildOptions{c.threads});
    stats["query_bound"] = sample_count_bound_taylor(m, order);
    stats["query_bound_applies"] = static_cast<std::size_t>(order) <= m;
  } else if (method == "kernel") {
    KernelBuildOptions opts{c.threads, scaling_from_name(c.scaling), SolvePolicy::Strict};
    GramSolveReport report;
    if (enrich) {
      if (static_cast<std::size_t>(order) > m) throw ValidationError("kernel order must satisfy L <= m");
      GridPoint center(m);
      for (std::size_t j = 0; j < m; ++j) center.set(j, 1);
      const auto base = grid_nodes(m, order);
      auto nodes = enrich_nodes_second_center(base, center);
      std::vector<double> values(nodes.size());
      for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = oracle(nodes[i]);
      opts.policy = SolvePolicy::LeastSquares;
      r.surrogate = fit_kernel_surrogate(m, order, std::move(nodes), values, opts, &report);
      stats["enriched_center"] = "pi/2";
    } else {
      r.surrogate = build_kernel_surrogate(oracle, order, opts, &report);
    }
    stats["query_bound"] = sample_count_bound_kernel(m, order);
    stats["query_bound_applies"] = true;
    stats["nodes"] = std::get<KernelSurrogate>(r.surrogate).nodes().size();
    stats["solver"] = {{"method", report.method}, {"min_pivot", report.min_pivot},
                       {"residual_inf", report.residual_inf}};
    r.warnings = report.warnings;
  } else {
    throw ValidationError("unknown method '" + method + "' (expected taylor or kernel)");
  }
  const auto cs = oracle.cache().stats();
  stats["distinct_queries"] = cs.distinct;
  stats["cache_hits"] = cs.hits;
  stats["cache_misses"] = cs.misses;
  stats["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  stats["warnings"] = r.warnings;
  r.stats = std::move(stats);
  return r;
}

std::vector<double> parse_theta(const std::string& text) {
  std::vector<double> theta;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      theta.push_back(std::stod(tok, &used));
      if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError("bad theta component '" + tok + "'");
    }
  }
  return theta;
}

void emit_csv(const RunConfig& c, const std::string& csv, std::ostream& out) {
  if (c.output.empty() || c.output == "-") {
    out << csv;
  } else {
    write_text_file(c.output, csv);
  }
}

void report_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

RealFunction surrogate_function(const Surrogate& s) {
  return [&s](std::span<const double> x) { return eval_surrogate(s, x); };
}

RealFunction bound_function(const Surrogate& s) {
  const auto* t = std::get_if<TaylorSurrogate>(&s);
  if (!t) throw ValidationError("--bound is only available for Taylor surrogates");
  return [norm = t->obs_one_norm(), order = t->order()](std::span<const double> x) {
    return taylor_error_bound(norm, order, x);
  };
}

int cmd_build(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto problem = load_problem(c.source);
  auto r = build(problem, c.method, c.order, c);
  save_surrogate(c.output, r.surrogate);
  report_warnings(r.warnings, err);
  r.stats["output"] = c.output;
  out << r.stats.dump(2) << '\n';
  return kOk;
}

int cmd_cache_stats(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto problem = load_problem(c.source);
  auto r = build(problem, c.method, c.order, c);
  report_warnings(r.warnings, err);
  out << r.stats.dump(2) << '\n';
  return kOk;
}

int cmd_eval(const RunConfig& c, bool with_f, std::ostream& out) {
  const auto s = load_surrogate(c.surrogate_file);
  std::optional<Problem> problem;
  if (with_f) problem = load_problem(c.source);
  const auto m = num_params(s);
  if (problem && problem->circuit.num_params() != m)
    throw ValidationError("surrogate has m = " + std::to_string(m) + " but the circuit has " +
                          std::to_string(problem->circuit.num_params()) + " parameters");
  const RealFunction bound = c.bound ? bound_function(s) : nullptr;
  std::ostringstream csv;
  if (!c.theta.empty()) {
    const auto theta = parse_theta(c.theta);
    const double ft = eval_surrogate(s, theta);
    ScanRow row;
    row.f_tilde = ft;
    csv << "t,f,f_tilde,abs_diff,bound\n,";
    if (problem) {
      row.f = f_eval(problem->circuit, problem->observable, theta);
      csv << format_g17(row.f);
    }
    csv << ',' << format_g17(ft) << ',';
    if (problem) csv << format_g17(std::abs(row.f - ft));
    csv << ',';
    if (bound) csv << format_g17(bound(theta));
    csv << '\n';
  } else {
    if (c.curve.empty()) throw ValidationError("eval needs --theta or --curve");
    if (!problem) throw ValidationError("curve evaluation needs --circuit or --bench-n/--bench-d for f");
    const auto spec = make_curve(parse_curve_id(c.curve), m);
    const auto grid = linspace(c.t_min, c.t_max, c.t_count);
    const RealFunction f = [&](std::span<const double> x) {
      return f_eval(problem->circuit, problem->observable, x);
    };
    const auto rows = scan_curve(f, surrogate_function(s), spec, grid, bound);
    write_scan_csv(csv, rows);
  }
  emit_csv(c, csv.str(), out);
  return kOk;
}

int cmd_scan(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto problem = load_problem(c.source);
  Surrogate s;
  if (!c.surrogate_file.empty()) {
    s = load_surrogate(c.surrogate_file);
  } else {
    if (c.method.empty()) throw ValidationError("scan-curve needs --surrogate or --method/--order");
    if (c.enrich_center && c.method != "kernel") throw ValidationError("--enrich-center applies to kernel only");
    auto r = build(problem, c.method, c.order, c, c.enrich_center);
    report_warnings(r.warnings, err);
    s = std::move(r.surrogate);
  }
  const auto m = problem.circuit.num_params();
  if (num_params(s) != m) throw ValidationError("surrogate and circuit disagree on m");
  const auto spec = make_curve(parse_curve_id(c.curve), m);
  const auto grid = linspace(c.t_min, c.t_max, c.t_count);
  const RealFunction f = [&](std::span<const double> x) { return f_eval(problem.circuit, problem.observable, x); };
  const auto rows = scan_curve(f, surrogate_function(s), spec, grid, c.bound ? bound_function(s) : nullptr);
  std::ostringstream csv;
  write_scan_csv(csv, rows);
  emit_csv(c, csv.str(), out);
  return kOk;
}

int cmd_l2(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto problem = load_problem(c.source);
  const auto m = problem.circuit.num_params();
  const RealFunction f = [&](std::span<const double> x) { return f_eval(problem.circuit, problem.observable, x); };
  std::vector<MCRow> rows;
  json summary = json::array();
  for (const auto& method : c.methods) {
    for (int order : c.orders) {
      auto r = build(problem, method, order, c);
      report_warnings(r.warnings, err);
      const auto ft = surrogate_function(r.surrogate);
      for (double k : c.ks) {
        MCOptions opts{c.n_f, c.n_diff, c.seed, c.threads, c.sem_threshold};
        const auto res = mc_relative_l2(f, ft, m, k, opts);
        if (res.sem_flagged)
          err << "warning: relative SEM above " << c.sem_threshold << " for " << method << " L=" << order
              << " k=" << k << '\n';
        rows.push_back({method, order, k, res});
        summary.push_back({{"method", method}, {"L", order}, {"k", k}, {"ratio", res.ratio},
                           {"norm_f", res.norm_f}, {"sem_flagged", res.sem_flagged}});
      }
    }
  }
  std::ostringstream csv;
  write_mc_csv(csv, rows);
  if (c.output.empty() || c.output == "-") {
    out << csv.str();
  } else {
    write_text_file(c.output, csv.str());
    out << summary.dump(2) << '\n';
  }
  return kOk;
}

int cmd_bench_circuit(const RunConfig& c, std::ostream& out) {
  const auto circuit = build_benchmark_circuit(c.source.bench_n, c.source.bench_d);
  emit_csv(c, format_circuit(circuit), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical surrogates of parametrized quantum circuits"};
  app.require_subcommand(1);
  RunConfig c;

  auto* build_cmd = app.add_subcommand("build-surrogate", "Build a Taylor or kernel surrogate and save it as JSON");
  add_source_options(build_cmd, c.source);
  build_cmd->add_option("--method", c.method, "taylor or kernel")->required()->check(CLI::IsMember({"taylor", "kernel"}));
  build_cmd->add_option("--order,-L", c.order, "Order L")->required();
  build_cmd->add_option("--output,-o", c.output, "Surrogate JSON path")->required();
  build_cmd->add_option("--scaling", c.scaling, "Kernel scaling: ktilde or k")->check(CLI::IsMember({"ktilde", "k"}));
  build_cmd->add_flag("--no-cache", c.no_cache, "Query f for every shift point without memoization");
  build_cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  build_cmd->add_option("--seed", c.seed, "Random seed (unused by deterministic builds)");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a saved surrogate at a point or along a curve");
  add_source_options(eval_cmd, c.source);
  eval_cmd->add_option("--surrogate", c.surrogate_file, "Surrogate JSON")->required();
  auto* theta_opt = eval_cmd->add_option("--theta", c.theta, "Comma-separated point");
  eval_cmd->add_option("--curve", c.curve, "Curve g1..g5")->excludes(theta_opt);
  eval_cmd->add_option("--t-min", c.t_min);
  eval_cmd->add_option("--t-max", c.t_max);
  eval_cmd->add_option("--t-count", c.t_count);
  eval_cmd->add_flag("--bound", c.bound, "Add the Taylor remainder bound column");
  eval_cmd->add_option("--output,-o", c.output, "CSV path (default stdout)");

  auto* scan_cmd = app.add_subcommand("scan-curve", "Compare f and a surrogate along a curve");
  add_source_options(scan_cmd, c.source);
  scan_cmd->add_option("--surrogate", c.surrogate_file, "Surrogate JSON (otherwise built in memory)");
  scan_cmd->add_option("--method", c.method)->check(CLI::IsMember({"taylor", "kernel"}));
  scan_cmd->add_option("--order,-L", c.order);
  scan_cmd->add_option("--scaling", c.scaling)->check(CLI::IsMember({"ktilde", "k"}));
  scan_cmd->add_option("--curve", c.curve, "Curve g1..g5")->required();
  scan_cmd->add_option("--t-min", c.t_min);
  scan_cmd->add_option("--t-max", c.t_max);
  scan_cmd->add_option("--t-count", c.t_count);
  scan_cmd->add_flag("--bound", c.bound, "Add the Taylor remainder bound column");
  scan_cmd->add_flag("--enrich-center", c.enrich_center, "Add kernel nodes around (pi/2, ..., pi/2)");
  scan_cmd->add_option("--threads", c.threads)->check(CLI::PositiveNumber);
  scan_cmd->add_option("--output,-o", c.output, "CSV path (default stdout)");

  auto* l2_cmd = app.add_subcommand("l2-error", "Monte Carlo relative L2 error table");
  add_source_options(l2_cmd, c.source);
  l2_cmd->add_option("--method", c.methods, "taylor and/or kernel")->required()->delimiter(',')
      ->check(CLI::IsMember({"taylor", "kernel"}));
  l2_cmd->add_option("--order,-L", c.orders, "Orders, comma separated")->required()->delimiter(',');
  l2_cmd->add_option("--k", c.ks, "Domain parameters k, comma separated")->delimiter(',')->default_str("1,2,4,8");
  l2_cmd->add_option("--n-f", c.n_f, "Samples for ||f||")->check(CLI::PositiveNumber);
  l2_cmd->add_option("--n-diff", c.n_diff, "Samples for ||f - f~||")->check(CLI::PositiveNumber);
  l2_cmd->add_option("--sem-threshold", c.sem_threshold);
  l2_cmd->add_option("--seed", c.seed);
  l2_cmd->add_option("--threads", c.threads)->check(CLI::PositiveNumber);
  l2_cmd->add_option("--output,-o", c.output, "CSV path (default stdout)");

  auto* bench_cmd = app.add_subcommand("bench-circuit", "Print the benchmark circuit in text form");
  bench_cmd->add_option("--n", c.source.bench_n)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--d", c.source.bench_d)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--output,-o", c.output);

  auto* stats_cmd = app.add_subcommand("cache-stats", "Report grid-oracle query counts of a build");
  add_source_options(stats_cmd, c.source);
  stats_cmd->add_option("--method", c.method)->required()->check(CLI::IsMember({"taylor", "kernel"}));
  stats_cmd->add_option("--order,-L", c.order)->required();
  stats_cmd->add_flag("--no-cache", c.no_cache);
  stats_cmd->add_option("--threads", c.threads)->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  if (c.ks.empty()) c.ks = {1.0, 2.0, 4.0, 8.0};

  try {
    if (*build_cmd) return cmd_build(c, out, err);
    if (*eval_cmd) return cmd_eval(c, source_given(eval_cmd), out);
    if (*scan_cmd) return cmd_scan(c, out, err);
    if (*l2_cmd) return cmd_l2(c, out, err);
    if (*bench_cmd) return cmd_bench_circuit(c, out);
    if (*stats_cmd) return cmd_cache_stats(c, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kValidation;
}

}  // namespace qsur::cli
