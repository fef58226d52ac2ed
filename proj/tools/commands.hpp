#pragma once

#include <ostream>
#include <string>

#include "scenario.hpp"

namespace ringsim::cli {

inline constexpr const char* tool_version = "ringsim 1.0.0";

struct RunOptions {
    std::string config_path;  // empty = defaults
    std::string out_override; // overrides [output] csv when non-empty
    bool plot = false;
    long seed = 0;            // reserved
    bool verbose = false;
};

// Exit-code contract: 0 success, 2 configuration error, 3 physics-domain
// error (above threshold / model breakdown / divergent linear formula),
// 4 numerical failure (root finding, calibration, window search).
int run_command(Command command, const RunOptions& opt, std::ostream& out, std::ostream& err);

// Exception-to-exit-code mapping used by run_command (exposed for tests).
int exit_code_for_current_exception();

// Output-directory override: relative paths are placed under $RINGSIM_OUT_DIR
// when it is set.
std::string resolve_output_path(const std::string& path);

}  // namespace ringsim::cli
