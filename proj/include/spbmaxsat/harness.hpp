#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "spbmaxsat/search.hpp"

namespace spbmaxsat {

struct LabeledConfig {
  std::string label;
  SolverConfig config;
};

// One (instance, solver) execution.
struct RunRecord {
  std::string instance;   // path relative to the benchmark root
  std::string benchmark;  // group name: the instance's parent directory
  std::string solver;
  nlohmann::json config;  // snapshot of the resolved configuration
  std::optional<Weight> best_cost;
  double time_to_best = 0.0;
  std::uint64_t flips = 0;
  std::vector<Improvement> trace;
  bool skipped = false;  // instance unreadable; excluded from scoring
  std::string error;     // reason for a skip or a crash

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct SolverSummary {
  std::string label;
  std::size_t wins = 0;
  double score = 0.0;  // mean MSE score over the group's instances
  std::optional<double> mean_time;  // over instances with a feasible result
  std::size_t feasible = 0;

  friend bool operator==(const SolverSummary&, const SolverSummary&) = default;
};

struct BenchmarkRow {
  std::string benchmark;
  std::size_t instances = 0;
  std::vector<SolverSummary> solvers;

  friend bool operator==(const BenchmarkRow&, const BenchmarkRow&) = default;
};

struct BenchmarkReport {
  std::vector<std::string> solvers;
  std::vector<BenchmarkRow> rows;
  std::vector<std::pair<std::string, std::string>> skipped;  // (instance, reason)

  friend bool operator==(const BenchmarkReport&, const BenchmarkReport&) = default;
};

// Instance name -> best known cost.
using BkcMap = std::map<std::string, Weight>;

// MaxSAT Evaluation score: 0 without a feasible result, otherwise
// (bkc + 1) / (found + 1) clipped to 1. `clipped` reports a found cost
// below bkc.
double mse_score(Weight bkc, std::optional<Cost> found, bool* clipped = nullptr);

// costs[i][s]: result of solver s on instance i. Every solver reaching the
// minimum finite cost of an instance gets a win; ties win together.
std::vector<std::size_t> compute_wins(const std::vector<std::vector<std::optional<Cost>>>& costs);

// Builds the report from run records. BKC per instance comes from `bkc`
// (looked up by relative path, then by file name) or else from the best
// cost among the records.
BenchmarkReport aggregate(const std::vector<RunRecord>& records, const std::vector<std::string>& solvers,
                          const BkcMap* bkc = nullptr, std::ostream* warnings = nullptr);

// Lines "<instance> <cost>"; '#' or 'c' starts a comment line.
BkcMap read_bkc_file(const std::filesystem::path& path);

nlohmann::json to_json(const RunRecord& r);
RunRecord run_record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BenchmarkReport& r);
nlohmann::json config_snapshot(const SolverConfig& cfg, const Formula* f = nullptr);

void write_runs_jsonl(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_runs_jsonl(std::istream& in);

// Aligned text table, one block per benchmark group.
std::string format_report(const BenchmarkReport& r);

struct BenchmarkOptions {
  std::filesystem::path dir;
  std::vector<LabeledConfig> configs;
  double time_limit = 60.0;  // applied to configs without a flip limit
  unsigned jobs = 1;
  std::optional<std::filesystem::path> bkc_file;
  std::optional<std::filesystem::path> output_dir;  // runs.jsonl + report.json
};

struct BenchmarkOutcome {
  BenchmarkReport report;
  std::vector<RunRecord> records;  // instance-major, config order within
};

// All *.wcnf files below `dir`, sorted by relative path.
std::vector<std::filesystem::path> find_instances(const std::filesystem::path& dir);

// Runs every configuration once on every instance, instances spread over
// `jobs` workers. Parse failures become skipped records; exceptions from
// a solve become records without a feasible result.
BenchmarkOutcome run_benchmark(const BenchmarkOptions& opts, std::ostream* warnings = nullptr);

}  // namespace spbmaxsat
