#pragma once

#include <optional>
#include <stdexcept>

#include "spbmaxsat/formula.hpp"

namespace spbmaxsat {

inline constexpr std::size_t kOracleMaxVars = 24;

class OracleLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OracleResult {
  Cost optimum = Cost::infinite();
  // Lowest-index minimizing assignment (x1 is bit 0), absent when infeasible.
  std::optional<Assignment> witness;
};

// Exhaustive enumeration of all 2^n assignments. Throws OracleLimitError
// above kOracleMaxVars variables.
OracleResult brute_force_opt(const Formula& f);

}  // namespace spbmaxsat
