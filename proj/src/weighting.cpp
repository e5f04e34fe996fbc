#include "spbmaxsat/weighting.hpp"

#include <stdexcept>

namespace spbmaxsat {

std::string_view to_string(WeightingMode mode) {
  switch (mode) {
    case WeightingMode::spb: return "spb";
    case WeightingMode::constant: return "constant";
    case WeightingMode::all_adaptive: return "all-adaptive";
  }
  return "unknown";
}

WeightingMode parse_weighting_mode(std::string_view name) {
  if (name == "spb") return WeightingMode::spb;
  if (name == "constant") return WeightingMode::constant;
  if (name == "all-adaptive" || name == "all_adaptive") return WeightingMode::all_adaptive;
  throw std::invalid_argument("unknown weighting mode '" + std::string(name) + "'");
}

void WeightingConfig::validate() const {
  if (!(h_inc > 0)) throw std::invalid_argument("h_inc must be positive");
  if (!(delta >= 1)) throw std::invalid_argument("delta must be >= 1");
  if (!(decay_threshold > 1)) throw std::invalid_argument("decay threshold must be > 1");
  if (!(decay_factor > 0 && decay_factor < 1)) throw std::invalid_argument("decay factor must lie in (0, 1)");
}

WeightingOutcome spb_weighting(SearchState& state, const WeightingConfig& cfg) {
  WeightingOutcome out;
  const auto hard = state.falsified_hard().items();
  for (ClauseId c : hard) {
    const double w = state.hard_weight(c);
    const double updated =
        cfg.mode == WeightingMode::all_adaptive ? cfg.delta * (w + cfg.h_inc) : w + cfg.h_inc;
    state.add_hard_weight(c, updated - w);
  }
  out.hard_bumped = hard.size();

  if (spb_is_falsified(state.spb(), state.current_obj())) {
    state.set_spb_weight(cfg.spb_delta() * (state.spb().weight + 1.0));
    out.spb_bumped = true;
  }
  out.decayed = decay_weights(state, cfg);
  return out;
}

bool decay_weights(SearchState& state, const WeightingConfig& cfg) {
  if (state.spb().weight <= cfg.decay_threshold && state.max_hard_weight() <= cfg.decay_threshold) {
    return false;
  }
  state.rescale_weights(cfg.decay_factor, 1.0);
  return true;
}

void update_spb_bound(SpbConstraint& spb, Weight new_cost) {
  if (!(Cost{new_cost} < spb.bound)) {
    throw std::logic_error("SPB bound update requires a strictly better cost (" + std::to_string(new_cost) +
                           " vs " + spb.bound.to_string() + ")");
  }
  spb.bound = Cost{new_cost};
}

}  // namespace spbmaxsat
