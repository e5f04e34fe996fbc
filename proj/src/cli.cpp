#include "spbmaxsat/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "spbmaxsat/analysis.hpp"
#include "spbmaxsat/oracle.hpp"

namespace spbmaxsat {

namespace {

constexpr double kDefaultTimeLimit = 60.0;

struct SolverFlags {
  double time_limit = kDefaultTimeLimit;
  std::uint64_t max_flips = 0;
  std::uint64_t seed = 1;
  std::uint32_t k = 0;
  double h_inc = 0.0;
  double delta = 0.0;
  std::string mode = "spb";
  std::string preset = "auto";
  std::string init = "decimation";
  double decay_threshold = 1e7;
  double decay_factor = 0.5;

  CLI::Option* time_opt = nullptr;
  CLI::Option* flips_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* h_inc_opt = nullptr;
  CLI::Option* delta_opt = nullptr;

  void attach(CLI::App& app) {
    time_opt = app.add_option("--time-limit", time_limit, "Wall-clock cutoff in seconds (default 60)");
    flips_opt = app.add_option("--max-flips", max_flips, "Flip cutoff; overrides --time-limit");
    app.add_option("--seed", seed, "Random seed");
    k_opt = app.add_option("--k", k, "BMS sample count (preset: 53 PMS / 97 WPMS)");
    h_inc_opt = app.add_option("--h-inc", h_inc, "Hard clause weight increment (preset: 1 / 28)");
    delta_opt = app.add_option("--delta", delta, "SPB weight increase proportion (preset: 1.00072 / 1.001)");
    app.add_option("--mode", mode, "Weighting mode")
        ->check(CLI::IsMember({"spb", "constant", "all-adaptive"}));
    app.add_option("--preset", preset, "Parameter preset")->check(CLI::IsMember({"auto", "pms", "wpms"}));
    app.add_option("--init", init, "Initial assignment")->check(CLI::IsMember({"decimation", "random"}));
    app.add_option("--decay-threshold", decay_threshold, "Weight level that triggers decay");
    app.add_option("--decay-factor", decay_factor, "Multiplier applied by decay");
  }

  SolverConfig to_config() const {
    SolverConfig cfg;
    if (flips_opt->count()) cfg.max_flips = max_flips;
    if (!flips_opt->count() || time_opt->count()) cfg.cutoff_seconds = time_limit;
    cfg.seed = seed;
    if (k_opt->count()) cfg.k = k;
    if (h_inc_opt->count()) cfg.h_inc = h_inc;
    if (delta_opt->count()) cfg.delta = delta;
    cfg.mode = parse_weighting_mode(mode);
    cfg.preset = parse_preset(preset);
    cfg.init = parse_init_mode(init);
    cfg.decay_threshold = decay_threshold;
    cfg.decay_factor = decay_factor;
    cfg.validate();
    return cfg;
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

int cmd_solve(const std::string& path, const SolverFlags& flags, std::ostream& out, std::ostream& err) {
  SolverConfig cfg;
  try {
    cfg = flags.to_config();
  } catch (const std::invalid_argument& e) {
    err << "c error: " << e.what() << '\n';
    return 2;
  }
  Formula f;
  try {
    f = parse_wcnf_file(path);
  } catch (const std::exception& e) {
    err << "c error: " << path << ": " << e.what() << '\n';
    return 1;
  }
  const ResolvedConfig r = resolve_config(cfg, f);
  err << "c instance " << path << ": " << f.num_vars() << " vars, " << f.num_hard() << " hard, " << f.num_soft()
      << " soft, total soft weight " << f.total_soft_weight() << '\n';
  err << "c preset " << to_string(r.preset) << " k=" << r.k << " h_inc=" << r.weighting.h_inc
      << " delta=" << r.weighting.delta << " mode=" << to_string(r.weighting.mode) << " seed=" << cfg.seed << '\n';

  const SolveResult res = solve(f, cfg, [&](const Improvement& imp) {
    out << "o " << imp.cost << '\n';
    out.flush();
    err << "c improvement step=" << imp.step << " time=" << imp.seconds << '\n';
  });

  const double rate = res.seconds > 0 ? static_cast<double>(res.flips) / res.seconds : 0.0;
  err << "c terminated by " << to_string(res.termination) << " after " << res.flips << " flips, "
      << res.weighting_events << " weighting events, " << res.seconds << " s (" << static_cast<std::uint64_t>(rate)
      << " flips/s)\n";
  if (res.best_assignment) {
    out << "s SATISFIABLE\n";
    out << "v " << res.best_assignment->to_bitstring() << '\n';
  } else {
    out << "s UNKNOWN\n";
  }
  out.flush();
  return 0;
}

int cmd_oracle(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const Formula f = parse_wcnf_file(path);
    const OracleResult res = brute_force_opt(f);
    if (res.witness) {
      out << "o " << res.optimum.value() << '\n';
      out << "v " << res.witness->to_bitstring() << '\n';
    } else {
      out << "s UNSATISFIABLE\n";
    }
  } catch (const std::exception& e) {
    err << "c error: " << path << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int cmd_dynamics(double delta, std::uint64_t steps, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
  std::vector<DynamicsRow> rows;
  try {
    rows = weight_dynamics(delta, steps);
  } catch (const std::invalid_argument& e) {
    err << "c error: " << e.what() << '\n';
    return 2;
  }
  if (out_path.empty()) {
    write_dynamics_csv(out, rows);
    return 0;
  }
  std::ofstream file(out_path);
  if (!file) {
    err << "c error: cannot write '" << out_path << "'\n";
    return 1;
  }
  write_dynamics_csv(file, rows);
  return 0;
}

}  // namespace

std::vector<LabeledConfig> parse_config_list(const std::string& spec) {
  std::vector<LabeledConfig> configs;
  for (const std::string& raw : split(spec, ';')) {
    const std::string entry = trim(raw);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos || trim(entry.substr(0, eq)).empty()) {
      throw std::invalid_argument("config entry '" + entry + "' must look like name=flags");
    }
    LabeledConfig lc;
    lc.label = trim(entry.substr(0, eq));
    std::vector<std::string> tokens;
    std::istringstream ts(entry.substr(eq + 1));
    for (std::string t; ts >> t;) tokens.push_back(t);
    std::reverse(tokens.begin(), tokens.end());  // CLI11 consumes from the back

    CLI::App app{"config " + lc.label};
    SolverFlags flags;
    flags.attach(app);
    try {
      app.parse(tokens);
    } catch (const CLI::ParseError& e) {
      throw std::invalid_argument("config '" + lc.label + "': " + e.what());
    }
    lc.config = flags.to_config();
    configs.push_back(std::move(lc));
  }
  return configs;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted partial MaxSAT local search with an adaptively weighted SPB constraint",
               "spb-maxsat"};
  app.require_subcommand(1);

  std::string solve_file;
  SolverFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "Run the local search on a WCNF instance");
  solve_cmd->add_option("file", solve_file, "WCNF instance")->required();
  solve_flags.attach(*solve_cmd);

  std::string oracle_file;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum by enumeration (at most 24 variables)");
  oracle_cmd->add_option("file", oracle_file, "WCNF instance")->required();

  std::string bench_dir;
  double bench_time = kDefaultTimeLimit;
  unsigned bench_jobs = 1;
  std::string bench_bkc;
  std::vector<std::string> bench_configs;
  std::string bench_out = ".";
  auto* bench_cmd = app.add_subcommand("bench", "Run configurations over a directory of instances");
  bench_cmd->add_option("--dir", bench_dir, "Directory searched recursively for *.wcnf")->required();
  bench_cmd->add_option("--time-limit", bench_time, "Seconds per run for configs without --max-flips");
  bench_cmd->add_option("--jobs", bench_jobs, "Parallel workers");
  bench_cmd->add_option("--bkc", bench_bkc, "File of '<instance> <best known cost>' lines");
  bench_cmd->add_option("--config", bench_configs, "name=flags;... (repeatable)");
  bench_cmd->add_option("--out", bench_out, "Directory for runs.jsonl and report.json");

  double dyn_delta = 1.001;
  std::uint64_t dyn_steps = 10000;
  std::string dyn_out;
  auto* dyn_cmd = app.add_subcommand("dynamics", "Tabulate R_inc and I_inc of repeated SPB weight increments");
  dyn_cmd->add_option("--delta", dyn_delta, "Increase proportion");
  dyn_cmd->add_option("--steps", dyn_steps, "Number of increments");
  dyn_cmd->add_option("--out", dyn_out, "CSV output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (*solve_cmd) return cmd_solve(solve_file, solve_flags, out, err);
  if (*oracle_cmd) return cmd_oracle(oracle_file, out, err);
  if (*dyn_cmd) return cmd_dynamics(dyn_delta, dyn_steps, dyn_out, out, err);

  BenchmarkOptions opts;
  opts.dir = bench_dir;
  opts.time_limit = bench_time;
  opts.jobs = bench_jobs;
  if (!bench_bkc.empty()) opts.bkc_file = bench_bkc;
  opts.output_dir = bench_out;
  try {
    for (const auto& spec : bench_configs) {
      for (auto& lc : parse_config_list(spec)) opts.configs.push_back(std::move(lc));
    }
  } catch (const std::invalid_argument& e) {
    err << "c error: " << e.what() << '\n';
    return 2;
  }
  if (opts.configs.empty()) {
    SolverConfig def;
    def.cutoff_seconds = bench_time;
    opts.configs.push_back({"spb-maxsat", def});
  }
  for (std::size_t i = 0; i < opts.configs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (opts.configs[i].label == opts.configs[j].label) {
        err << "c error: duplicate config label '" << opts.configs[i].label << "'\n";
        return 2;
      }
    }
  }
  try {
    const BenchmarkOutcome outcome = run_benchmark(opts, &err);
    out << format_report(outcome.report);
  } catch (const std::exception& e) {
    err << "c error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace spbmaxsat
