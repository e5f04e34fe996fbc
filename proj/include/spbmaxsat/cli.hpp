#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "spbmaxsat/harness.hpp"

namespace spbmaxsat {

// Entry point of the spb-maxsat tool. `args` excludes the program name.
// Protocol lines ("o ", "s ", "v ") go to `out`, diagnostics to `err`.
// Returns 0 on success, 1 on input/runtime errors, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "name=<solver flags>;name=<solver flags>..." as accepted by
// `bench --config`. Throws std::invalid_argument on malformed entries.
std::vector<LabeledConfig> parse_config_list(const std::string& spec);

}  // namespace spbmaxsat
