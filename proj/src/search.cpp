#include "spbmaxsat/search.hpp"

#include <stdexcept>
#include <string>

namespace spbmaxsat {

std::string_view to_string(Preset preset) {
  switch (preset) {
    case Preset::auto_detect: return "auto";
    case Preset::pms: return "pms";
    case Preset::wpms: return "wpms";
  }
  return "unknown";
}

Preset parse_preset(std::string_view name) {
  if (name == "auto") return Preset::auto_detect;
  if (name == "pms") return Preset::pms;
  if (name == "wpms") return Preset::wpms;
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::time: return "time";
    case Termination::flips: return "flips";
    case Termination::optimum: return "optimum";
    case Termination::infeasible_instance: return "infeasible-instance";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (!cutoff_seconds && !max_flips) throw std::invalid_argument("a time limit or a flip limit is required");
  if (cutoff_seconds && !(*cutoff_seconds > 0)) throw std::invalid_argument("time limit must be positive");
  if (k && *k < 1) throw std::invalid_argument("k must be >= 1");
  WeightingConfig probe{h_inc.value_or(1.0), delta.value_or(1.0), mode, decay_threshold, decay_factor};
  probe.validate();
}

ResolvedConfig resolve_config(const SolverConfig& cfg, const Formula& f) {
  ResolvedConfig r;
  r.preset = cfg.preset;
  if (r.preset == Preset::auto_detect) r.preset = f.is_partial_unweighted() ? Preset::pms : Preset::wpms;
  const PresetParams& p = r.preset == Preset::pms ? kPmsParams : kWpmsParams;
  r.k = cfg.k.value_or(p.k);
  r.weighting.h_inc = cfg.h_inc.value_or(p.h_inc);
  r.weighting.delta = cfg.delta.value_or(p.delta);
  r.weighting.mode = cfg.mode;
  r.weighting.decay_threshold = cfg.decay_threshold;
  r.weighting.decay_factor = cfg.decay_factor;
  return r;
}

namespace {

// Strictly preferable candidate: higher score, then older flip, then lower index.
bool prefer(const SearchState& s, Var a, double score_a, Var b, double score_b) {
  if (score_a != score_b) return score_a > score_b;
  const auto stamp_a = s.assignment().flip_stamp(a);
  const auto stamp_b = s.assignment().flip_stamp(b);
  if (stamp_a != stamp_b) return stamp_a < stamp_b;
  return a < b;
}

}  // namespace

Var bms_pick(const SearchState& state, std::uint32_t k, Rng& rng) {
  const IndexedSet& candidates = state.positive_vars();
  if (candidates.empty()) throw std::logic_error("bms_pick needs a variable with positive score");
  Var best = candidates[rng.below(candidates.size())];
  double best_score = state.score(best);
  for (std::uint32_t i = 1; i < k; ++i) {
    const Var v = candidates[rng.below(candidates.size())];
    const double s = state.score(v);
    if (prefer(state, v, s, best, best_score)) {
      best = v;
      best_score = s;
    }
  }
  return best;
}

std::optional<Var> pick_from_falsified(const SearchState& state, Rng& rng) {
  const IndexedSet& pool = state.falsified_hard().empty() ? state.falsified_soft() : state.falsified_hard();
  if (pool.empty()) return std::nullopt;
  const ClauseId c = pool[rng.below(pool.size())];
  const auto lits = state.formula().literals(c);
  Var best = lits[0].var;
  double best_score = state.score(best);
  for (std::size_t i = 1; i < lits.size(); ++i) {
    const Var v = lits[i].var;
    const double s = state.score(v);
    if (prefer(state, v, s, best, best_score)) {
      best = v;
      best_score = s;
    }
  }
  return best;
}

LocalSearch::LocalSearch(const Formula& f, const SolverConfig& cfg)
    : formula_(f),
      cfg_(cfg),
      resolved_(resolve_config(cfg, f)),
      rng_(cfg.seed),
      start_(std::chrono::steady_clock::now()),
      state_(f, initial_assignment(f, cfg.init, rng_)) {
  cfg_.validate();
  resolved_.weighting.validate();
  record_if_better();  // A* <- A
}

double LocalSearch::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void LocalSearch::record_if_better() {
  if (!state_.feasible()) return;
  const Cost current{state_.current_obj()};
  if (!(current < best_cost_)) return;
  best_ = state_.assignment();
  best_cost_ = current;
  trace_.push_back({state_.step(), elapsed(), current.value()});
  SpbConstraint spb = state_.spb();
  update_spb_bound(spb, current.value());
  state_.set_spb_bound(spb.bound);
  if (on_improvement_ && *on_improvement_) (*on_improvement_)(trace_.back());
}

LocalSearch::StepKind LocalSearch::step() {
  Var v = 0;
  StepKind kind = StepKind::greedy;
  if (!state_.positive_vars().empty()) {
    v = bms_pick(state_, resolved_.k, rng_);
    last_greedy_score_ = state_.score(v);
  } else {
    if (state_.falsified_hard().empty() && state_.falsified_soft().empty()) {
      record_if_better();
      return StepKind::optimal;
    }
    spb_weighting(state_, resolved_.weighting);
    ++weighting_events_;
    v = *pick_from_falsified(state_, rng_);
    kind = StepKind::escape;
  }
  state_.flip(v);
  record_if_better();
  return kind;
}

SolveResult LocalSearch::run(const std::function<void(const Improvement&)>& on_improvement) {
  if (on_improvement) {
    for (const auto& imp : trace_) on_improvement(imp);
  }
  on_improvement_ = &on_improvement;

  SolveResult result;
  constexpr std::uint64_t kTimeCheckInterval = 1024;
  std::uint64_t flips = 0;
  for (;;) {
    if (formula_.trivially_infeasible()) {
      result.termination = Termination::infeasible_instance;
      break;
    }
    if (best_cost_ == Cost{formula_.constant_soft_weight()}) {
      result.termination = Termination::optimum;
      break;
    }
    if (cfg_.max_flips) {
      if (flips >= *cfg_.max_flips) {
        result.termination = Termination::flips;
        break;
      }
    } else if (flips % kTimeCheckInterval == 0 && elapsed() >= *cfg_.cutoff_seconds) {
      result.termination = Termination::time;
      break;
    }
    if (step() == StepKind::optimal) continue;
    ++flips;
  }
  on_improvement_ = nullptr;

  result.best_assignment = best_;
  result.best_cost = best_cost_;
  result.trace = trace_;
  result.flips = flips;
  result.weighting_events = weighting_events_;
  result.seconds = elapsed();
  return result;
}

SolveResult solve(const Formula& f, const SolverConfig& cfg,
                  const std::function<void(const Improvement&)>& on_improvement) {
  LocalSearch search(f, cfg);
  return search.run(on_improvement);
}

}  // namespace spbmaxsat
