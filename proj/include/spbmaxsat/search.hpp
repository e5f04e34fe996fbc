#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "spbmaxsat/core.hpp"
#include "spbmaxsat/init.hpp"
#include "spbmaxsat/rng.hpp"
#include "spbmaxsat/weighting.hpp"

namespace spbmaxsat {

enum class Preset { auto_detect, pms, wpms };

std::string_view to_string(Preset preset);
Preset parse_preset(std::string_view name);

struct PresetParams {
  std::uint32_t k;
  double h_inc;
  double delta;
};

// Tuned settings for unweighted (PMS) and weighted (WPMS) instances.
inline constexpr PresetParams kPmsParams{53, 1.0, 1.00072};
inline constexpr PresetParams kWpmsParams{97, 28.0, 1.001};

struct SolverConfig {
  // Unset fields take the preset's value.
  std::optional<std::uint32_t> k;
  std::optional<double> h_inc;
  std::optional<double> delta;
  WeightingMode mode = WeightingMode::spb;
  double decay_threshold = 1e7;
  double decay_factor = 0.5;
  // When max_flips is set it alone decides termination, which keeps runs
  // reproducible; otherwise cutoff_seconds must be set.
  std::optional<double> cutoff_seconds;
  std::optional<std::uint64_t> max_flips;
  std::uint64_t seed = 1;
  Preset preset = Preset::auto_detect;
  InitMode init = InitMode::decimation;

  void validate() const;
};

// SolverConfig with the preset applied to a concrete formula.
struct ResolvedConfig {
  Preset preset = Preset::wpms;  // pms or wpms
  std::uint32_t k = 1;
  WeightingConfig weighting;
};

ResolvedConfig resolve_config(const SolverConfig& cfg, const Formula& f);

struct Improvement {
  std::uint64_t step = 0;
  double seconds = 0.0;
  Weight cost = 0;

  friend bool operator==(const Improvement&, const Improvement&) = default;
};

enum class Termination { time, flips, optimum, infeasible_instance };
std::string_view to_string(Termination t);

struct SolveResult {
  std::optional<Assignment> best_assignment;
  Cost best_cost = Cost::infinite();
  std::vector<Improvement> trace;
  std::uint64_t flips = 0;
  std::uint64_t weighting_events = 0;
  Termination termination = Termination::flips;
  double seconds = 0.0;
};

// Best-from-multiple-selections: k uniform draws (with replacement) from
// the positive-score variables, keep the best. Ties prefer the older flip,
// then the lower index. Precondition: positive set non-empty.
Var bms_pick(const SearchState& state, std::uint32_t k, Rng& rng);

// Escape move at a local optimum: a random falsified hard clause if any,
// otherwise a random falsified soft clause; returns its best-scoring
// variable. nullopt when nothing is falsified.
std::optional<Var> pick_from_falsified(const SearchState& state, Rng& rng);

// The main loop, one flip at a time.
class LocalSearch {
 public:
  enum class StepKind { greedy, escape, optimal };

  LocalSearch(const Formula& f, const SolverConfig& cfg);

  // One loop iteration: a greedy BMS flip when some score is positive,
  // otherwise SPB-Weighting followed by an escape flip. Returns `optimal`
  // without flipping when the current assignment falsifies nothing.
  StepKind step();

  // Runs until the cutoff. `on_improvement` fires for every new best.
  SolveResult run(const std::function<void(const Improvement&)>& on_improvement = {});

  const SearchState& state() const { return state_; }
  const ResolvedConfig& resolved() const { return resolved_; }
  Cost best_cost() const { return best_cost_; }
  const std::optional<Assignment>& best_assignment() const { return best_; }
  const std::vector<Improvement>& trace() const { return trace_; }
  std::uint64_t weighting_events() const { return weighting_events_; }
  // Score of the variable flipped by the last greedy step.
  double last_greedy_score() const { return last_greedy_score_; }

 private:
  double elapsed() const;
  void record_if_better();

  const Formula& formula_;
  SolverConfig cfg_;
  ResolvedConfig resolved_;
  Rng rng_;
  std::chrono::steady_clock::time_point start_;
  SearchState state_;
  std::optional<Assignment> best_;
  Cost best_cost_ = Cost::infinite();
  std::vector<Improvement> trace_;
  std::uint64_t weighting_events_ = 0;
  double last_greedy_score_ = 0.0;
  const std::function<void(const Improvement&)>* on_improvement_ = nullptr;
};

SolveResult solve(const Formula& f, const SolverConfig& cfg,
                  const std::function<void(const Improvement&)>& on_improvement = {});

}  // namespace spbmaxsat
