#pragma once

#include <string_view>

#include "spbmaxsat/formula.hpp"
#include "spbmaxsat/rng.hpp"

namespace spbmaxsat {

enum class InitMode { decimation, random };

std::string_view to_string(InitMode mode);
InitMode parse_init_mode(std::string_view name);

// Unit-propagation decimation. Repeatedly:
//   1. satisfy the oldest pending hard unit clause,
//   2. else satisfy a uniformly chosen soft unit clause,
//   3. else give a uniformly chosen free variable a random value.
// Conflicting hard units keep whichever was assigned first.
Assignment decimation_init(const Formula& f, Rng& rng);

// Every variable independently uniform.
Assignment random_init(const Formula& f, Rng& rng);

Assignment initial_assignment(const Formula& f, InitMode mode, Rng& rng);

}  // namespace spbmaxsat
