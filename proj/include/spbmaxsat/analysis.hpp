#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

namespace spbmaxsat {

// One increment of w(SPB) under w' = delta * (w + 1), with the average hard
// weight assumed to grow by 1 per increment.
struct DynamicsRow {
  std::uint64_t step = 0;  // increment number n, from 1
  double w_spb = 0.0;      // w(SPB) before the n-th increment
  double r_inc = 0.0;      // (w' - w) / w
  double i_inc = 0.0;      // (w' - w) / (w + average hard weight before the increment)
};

// Starts from w(SPB) = 1 and average hard weight 1. Requires delta >= 1 and
// steps >= 1 (std::invalid_argument otherwise).
std::vector<DynamicsRow> weight_dynamics(double delta, std::uint64_t steps);

// CSV with header "step,w_spb,r_inc,i_inc"; doubles at round-trip precision.
void write_dynamics_csv(std::ostream& out, const std::vector<DynamicsRow>& rows);

}  // namespace spbmaxsat
