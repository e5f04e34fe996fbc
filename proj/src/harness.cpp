#include "spbmaxsat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace spbmaxsat {

namespace fs = std::filesystem;
using nlohmann::json;

double mse_score(Weight bkc, std::optional<Cost> found, bool* clipped) {
  if (clipped) *clipped = false;
  if (!found || found->is_infinite()) return 0.0;
  const double score = (static_cast<double>(bkc) + 1.0) / (static_cast<double>(found->value()) + 1.0);
  if (score > 1.0) {
    if (clipped) *clipped = true;
    return 1.0;
  }
  return score;
}

std::vector<std::size_t> compute_wins(const std::vector<std::vector<std::optional<Cost>>>& costs) {
  std::size_t num_solvers = 0;
  for (const auto& row : costs) num_solvers = std::max(num_solvers, row.size());
  std::vector<std::size_t> wins(num_solvers, 0);
  for (const auto& row : costs) {
    Cost best = Cost::infinite();
    for (const auto& c : row) {
      if (c && *c < best) best = *c;
    }
    if (best.is_infinite()) continue;
    for (std::size_t s = 0; s < row.size(); ++s) {
      if (row[s] && *row[s] == best) ++wins[s];
    }
  }
  return wins;
}

namespace {

std::optional<Weight> lookup_bkc(const BkcMap& bkc, const std::string& instance) {
  if (auto it = bkc.find(instance); it != bkc.end()) return it->second;
  if (auto it = bkc.find(fs::path(instance).filename().string()); it != bkc.end()) return it->second;
  return std::nullopt;
}

}  // namespace

BenchmarkReport aggregate(const std::vector<RunRecord>& records, const std::vector<std::string>& solvers,
                          const BkcMap* bkc, std::ostream* warnings) {
  BenchmarkReport report;
  report.solvers = solvers;
  std::map<std::string, std::size_t> solver_index;
  for (std::size_t s = 0; s < solvers.size(); ++s) solver_index[solvers[s]] = s;

  // benchmark -> instance -> per-solver cost
  std::map<std::string, std::map<std::string, std::vector<std::optional<Cost>>>> costs;
  std::map<std::string, std::map<std::string, std::vector<double>>> times;
  std::set<std::string> skipped_seen;
  for (const auto& r : records) {
    if (r.skipped) {
      if (skipped_seen.insert(r.instance).second) report.skipped.emplace_back(r.instance, r.error);
      continue;
    }
    auto it = solver_index.find(r.solver);
    if (it == solver_index.end()) continue;
    auto& row = costs[r.benchmark][r.instance];
    auto& trow = times[r.benchmark][r.instance];
    row.resize(solvers.size(), Cost::infinite());
    trow.resize(solvers.size(), 0.0);
    row[it->second] = r.best_cost ? Cost{*r.best_cost} : Cost::infinite();
    trow[it->second] = r.time_to_best;
  }

  for (const auto& [bench, instances] : costs) {
    BenchmarkRow row;
    row.benchmark = bench;
    row.instances = instances.size();
    std::vector<std::vector<std::optional<Cost>>> matrix;
    std::vector<double> score_sum(solvers.size(), 0.0);
    std::vector<double> time_sum(solvers.size(), 0.0);
    std::vector<std::size_t> feasible(solvers.size(), 0);
    for (const auto& [inst, per_solver] : instances) {
      matrix.push_back(per_solver);
      std::optional<Weight> ref = bkc ? lookup_bkc(*bkc, inst) : std::nullopt;
      if (!ref) {
        Cost best = Cost::infinite();
        for (const auto& c : per_solver) {
          if (c && *c < best) best = *c;
        }
        if (best.is_finite()) ref = best.value();
      }
      for (std::size_t s = 0; s < solvers.size(); ++s) {
        const auto& c = per_solver[s];
        if (c && c->is_finite()) {
          ++feasible[s];
          time_sum[s] += times.at(bench).at(inst)[s];
        }
        if (!ref) continue;  // nobody feasible, no BKC: every score is 0
        bool clipped = false;
        score_sum[s] += mse_score(*ref, c, &clipped);
        if (clipped && warnings) {
          *warnings << "c warning: " << solvers[s] << " beat the BKC on " << inst << "\n";
        }
      }
    }
    const auto wins = compute_wins(matrix);
    for (std::size_t s = 0; s < solvers.size(); ++s) {
      SolverSummary sum;
      sum.label = solvers[s];
      sum.wins = s < wins.size() ? wins[s] : 0;
      sum.score = row.instances ? score_sum[s] / static_cast<double>(row.instances) : 0.0;
      sum.feasible = feasible[s];
      if (feasible[s]) sum.mean_time = time_sum[s] / static_cast<double>(feasible[s]);
      row.solvers.push_back(sum);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

BkcMap read_bkc_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open BKC file '" + path.string() + "'");
  BkcMap map;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name) || name[0] == '#' || name == "c") continue;
    Weight cost = 0;
    if (!(ls >> cost)) {
      throw std::runtime_error("BKC file line " + std::to_string(lineno) + ": expected '<instance> <cost>'");
    }
    map[name] = cost;
  }
  return map;
}

json to_json(const RunRecord& r) {
  json trace = json::array();
  for (const auto& imp : r.trace) trace.push_back({imp.step, imp.seconds, imp.cost});
  json j = {{"instance", r.instance}, {"benchmark", r.benchmark}, {"solver", r.solver},
            {"config", r.config},     {"time_to_best", r.time_to_best}, {"flips", r.flips},
            {"trace", trace},         {"skipped", r.skipped},           {"error", r.error}};
  j["best_cost"] = r.best_cost ? json(*r.best_cost) : json(nullptr);
  return j;
}

RunRecord run_record_from_json(const json& j) {
  RunRecord r;
  r.instance = j.at("instance").get<std::string>();
  r.benchmark = j.at("benchmark").get<std::string>();
  r.solver = j.at("solver").get<std::string>();
  r.config = j.at("config");
  if (!j.at("best_cost").is_null()) r.best_cost = j.at("best_cost").get<Weight>();
  r.time_to_best = j.at("time_to_best").get<double>();
  r.flips = j.at("flips").get<std::uint64_t>();
  for (const auto& t : j.at("trace")) {
    r.trace.push_back({t.at(0).get<std::uint64_t>(), t.at(1).get<double>(), t.at(2).get<Weight>()});
  }
  r.skipped = j.at("skipped").get<bool>();
  r.error = j.at("error").get<std::string>();
  return r;
}

json to_json(const BenchmarkReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json solvers = json::array();
    for (const auto& s : row.solvers) {
      solvers.push_back({{"label", s.label},
                         {"wins", s.wins},
                         {"score", s.score},
                         {"feasible", s.feasible},
                         {"mean_time", s.mean_time ? json(*s.mean_time) : json(nullptr)}});
    }
    rows.push_back({{"benchmark", row.benchmark}, {"instances", row.instances}, {"solvers", solvers}});
  }
  json skipped = json::array();
  for (const auto& [inst, why] : r.skipped) skipped.push_back({{"instance", inst}, {"reason", why}});
  return {{"solvers", r.solvers}, {"benchmarks", rows}, {"skipped", skipped}};
}

json config_snapshot(const SolverConfig& cfg, const Formula* f) {
  auto opt = [](const auto& o) { return o ? json(*o) : json(nullptr); };
  json j = {{"k", opt(cfg.k)},
            {"h_inc", opt(cfg.h_inc)},
            {"delta", opt(cfg.delta)},
            {"mode", std::string(to_string(cfg.mode))},
            {"decay_threshold", cfg.decay_threshold},
            {"decay_factor", cfg.decay_factor},
            {"time_limit", opt(cfg.cutoff_seconds)},
            {"max_flips", opt(cfg.max_flips)},
            {"seed", cfg.seed},
            {"preset", std::string(to_string(cfg.preset))},
            {"init", std::string(to_string(cfg.init))}};
  if (f) {
    const ResolvedConfig r = resolve_config(cfg, *f);
    j["resolved"] = {{"preset", std::string(to_string(r.preset))},
                     {"k", r.k},
                     {"h_inc", r.weighting.h_inc},
                     {"delta", r.weighting.delta}};
  }
  return j;
}

void write_runs_jsonl(std::ostream& out, const std::vector<RunRecord>& records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::vector<RunRecord> read_runs_jsonl(std::istream& in) {
  std::vector<RunRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(run_record_from_json(json::parse(line)));
  }
  return records;
}

std::string format_report(const BenchmarkReport& r) {
  std::ostringstream out;
  std::size_t bench_w = 9;
  for (const auto& row : r.rows) bench_w = std::max(bench_w, row.benchmark.size());
  std::size_t label_w = 6;
  for (const auto& s : r.solvers) label_w = std::max(label_w, s.size());

  out << std::left << std::setw(static_cast<int>(bench_w)) << "benchmark" << "  " << std::right
      << std::setw(6) << "#inst" << "  " << std::left << std::setw(static_cast<int>(label_w)) << "solver"
      << std::right << "  " << std::setw(5) << "#win" << "  " << std::setw(8) << "#score" << "  "
      << std::setw(9) << "time(s)" << "  " << std::setw(8) << "#feas" << '\n';
  for (const auto& row : r.rows) {
    bool first = true;
    for (const auto& s : row.solvers) {
      out << std::left << std::setw(static_cast<int>(bench_w)) << (first ? row.benchmark : "") << "  "
          << std::right << std::setw(6) << (first ? std::to_string(row.instances) : "") << "  " << std::left
          << std::setw(static_cast<int>(label_w)) << s.label << std::right << "  " << std::setw(5) << s.wins
          << "  " << std::setw(8) << std::fixed << std::setprecision(4) << s.score << "  " << std::setw(9);
      if (s.mean_time) {
        out << std::setprecision(2) << *s.mean_time;
      } else {
        out << "-";
      }
      out << "  " << std::setw(8) << s.feasible << '\n';
      first = false;
    }
  }
  for (const auto& [inst, why] : r.skipped) out << "skipped " << inst << ": " << why << '\n';
  return out.str();
}

std::vector<fs::path> find_instances(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: '" + dir.string() + "'");
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wcnf") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<RunRecord> run_instance(const BenchmarkOptions& opts, const fs::path& path) {
  std::vector<RunRecord> out;
  const fs::path rel = fs::relative(path, opts.dir);
  const std::string bench = rel.has_parent_path() ? rel.parent_path().generic_string()
                                                  : fs::absolute(opts.dir).lexically_normal().filename().string();
  auto base = [&](const LabeledConfig& lc) {
    RunRecord r;
    r.instance = rel.generic_string();
    r.benchmark = bench.empty() ? "." : bench;
    r.solver = lc.label;
    return r;
  };

  std::optional<Formula> formula;
  std::string parse_error;
  try {
    formula = parse_wcnf_file(path.string());
  } catch (const std::exception& e) {
    parse_error = e.what();
  }

  for (const auto& lc : opts.configs) {
    RunRecord r = base(lc);
    SolverConfig cfg = lc.config;
    if (!cfg.max_flips) cfg.cutoff_seconds = opts.time_limit;
    r.config = config_snapshot(cfg, formula ? &*formula : nullptr);
    if (!formula) {
      r.skipped = true;
      r.error = parse_error;
      out.push_back(std::move(r));
      continue;
    }
    try {
      const SolveResult res = solve(*formula, cfg);
      if (res.best_cost.is_finite()) r.best_cost = res.best_cost.value();
      if (!res.trace.empty()) r.time_to_best = res.trace.back().seconds;
      r.flips = res.flips;
      r.trace = res.trace;
    } catch (const std::exception& e) {
      r.error = std::string("solver failure: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

BenchmarkOutcome run_benchmark(const BenchmarkOptions& opts, std::ostream* warnings) {
  const auto instances = find_instances(opts.dir);
  std::vector<std::vector<RunRecord>> per_instance(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) per_instance[i] = run_instance(opts, instances[i]);
  };
  const unsigned jobs = std::max(1u, opts.jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs && j < instances.size(); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  BenchmarkOutcome outcome;
  for (auto& recs : per_instance) {
    for (auto& r : recs) outcome.records.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  for (const auto& lc : opts.configs) labels.push_back(lc.label);
  std::optional<BkcMap> bkc;
  if (opts.bkc_file) bkc = read_bkc_file(*opts.bkc_file);
  outcome.report = aggregate(outcome.records, labels, bkc ? &*bkc : nullptr, warnings);

  if (opts.output_dir) {
    fs::create_directories(*opts.output_dir);
    std::ofstream runs(*opts.output_dir / "runs.jsonl");
    write_runs_jsonl(runs, outcome.records);
    std::ofstream rep(*opts.output_dir / "report.json");
    rep << to_json(outcome.report).dump(2) << '\n';
  }
  return outcome;
}

}  // namespace spbmaxsat
