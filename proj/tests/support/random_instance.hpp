#pragma once

#include <cstdint>

#include "spbmaxsat/formula.hpp"
#include "spbmaxsat/rng.hpp"

namespace spbmaxsat::testing {

struct RandomInstanceSpec {
  std::size_t min_vars = 8;
  std::size_t max_vars = 18;
  std::size_t min_clauses = 10;
  std::size_t max_clauses = 60;
  double min_hard_fraction = 0.3;
  double max_hard_fraction = 0.7;
  Weight min_weight = 1;
  Weight max_weight = 10;
  std::size_t max_clause_len = 4;
  // Every hard clause is satisfied by a hidden planted assignment.
  bool satisfiable_hard = true;
};

// Random WPMS instance; the highest-numbered variable always occurs, so
// old- and new-format encodings declare the same variable count.
Formula random_instance(Rng& rng, const RandomInstanceSpec& spec = {});

Assignment random_assignment(Rng& rng, std::size_t num_vars);

}  // namespace spbmaxsat::testing
