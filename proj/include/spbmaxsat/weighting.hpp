#pragma once

#include <string>
#include <string_view>

#include "spbmaxsat/core.hpp"
#include "spbmaxsat/spb.hpp"

namespace spbmaxsat {

enum class WeightingMode {
  spb,           // hard: +h_inc, SPB: delta * (w + 1)
  constant,      // as spb with delta forced to 1
  all_adaptive,  // hard clauses also updated as delta * (w + h_inc)
};

std::string_view to_string(WeightingMode mode);
// Accepts "spb", "constant", "all-adaptive" (also "all_adaptive").
WeightingMode parse_weighting_mode(std::string_view name);

struct WeightingConfig {
  double h_inc = 1.0;
  double delta = 1.0;
  WeightingMode mode = WeightingMode::spb;
  double decay_threshold = 1e7;
  double decay_factor = 0.5;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
  double spb_delta() const { return mode == WeightingMode::constant ? 1.0 : delta; }
};

struct WeightingOutcome {
  std::size_t hard_bumped = 0;
  bool spb_bumped = false;
  bool decayed = false;
};

// One SPB-Weighting event at a local optimum: bump every falsified hard
// clause, bump w(SPB) if obj >= cost(A*), then decay if a weight crossed
// the threshold.
WeightingOutcome spb_weighting(SearchState& state, const WeightingConfig& cfg);

// Multiplies every dynamic weight by the decay factor (floored at 1) when
// w(SPB) or the largest hard weight exceeds the threshold. Returns whether
// it fired.
bool decay_weights(SearchState& state, const WeightingConfig& cfg);

// Records a strictly better cost as the new SPB bound; the weight is kept.
// Throws std::logic_error unless new_cost < spb.bound.
void update_spb_bound(SpbConstraint& spb, Weight new_cost);

}  // namespace spbmaxsat
