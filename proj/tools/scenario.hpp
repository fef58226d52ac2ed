#pragma once

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "ringsim/cavity.hpp"
#include "ringsim/medium.hpp"

namespace ringsim::cli {

enum class Command { Spectrum, ShiftScan, CadScan, Calibrate };

// Every physical input resolved to internal units, plus the record of what
// was read and what was defaulted (written verbatim to the metadata sidecar).
struct Scenario {
    Command command;

    CavityConfig cavity;
    MediumSpec medium;

    // spectrum block
    double spectrum_half_window = 0.0;  // rad/s
    int spectrum_samples = 0;
    double lock_offset = 0.0;           // empty-cavity shift applied to the cavity (rad/s)
    bool overlay_vacuum = true;

    // scan blocks (shift-scan and cad-scan share the grid shape)
    std::vector<double> grid;           // rad/s, symmetric, ascending
    double cad_target_ng = 0.0;

    // calibrate block
    double calib_width = 0.0;           // rad/s
    double calib_ng = 0.0;
    double calib_gamma_opt = 0.0;
    double calib_gamma_ground = 0.0;

    std::string csv_path;
    std::string svg_path;

    std::vector<std::pair<std::string, std::string>> resolved;  // sidecar lines, in order
};

// Parse + resolve a config for one command, applying the documented defaults
// (100 cm ring, 10 cm medium, 3 MHz empty linewidth, 8 MHz loaded baseline,
// EIT calibrated to a 1 MHz window and group index 50). Unknown keys are
// hard errors.
Scenario resolve_scenario(const Config& cfg, Command command);

// Convenience: defaults only.
Scenario default_scenario(Command command);

const char* command_name(Command command);

}  // namespace ringsim::cli
