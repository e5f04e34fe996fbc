#pragma once

#include "spbmaxsat/types.hpp"

namespace spbmaxsat {

// The soft-conflict pseudo-Boolean constraint obj(A) < cost(A*), carried as
// one weighted element of the clause weighting system.
struct SpbConstraint {
  Cost bound = Cost::infinite();  // cost of the best solution found so far
  double weight = 1.0;            // w(SPB)

  friend bool operator==(const SpbConstraint&, const SpbConstraint&) = default;
};

// True iff obj >= bound; never true while no feasible solution is known.
inline bool spb_is_falsified(const SpbConstraint& spb, Weight current_obj) {
  return spb.bound.is_finite() && current_obj >= spb.bound.value();
}

}  // namespace spbmaxsat
