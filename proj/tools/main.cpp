#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Ring-cavity simulator with dispersive intra-cavity media"};
    app.require_subcommand(1);

    ringsim::cli::RunOptions opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "Configuration file (key = value sections)");
        sub->add_option("--out", opt.out_override, "Output CSV path (overrides [output] csv)");
        sub->add_flag("--plot", opt.plot, "Also write an SVG plot next to the CSV");
        sub->add_option("--seed", opt.seed, "Reserved for future stochastic features");
        sub->add_flag("--verbose", opt.verbose, "Print every resolved parameter");
    };

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "Sample the transmission spectrum and extract peak and FWHM");
    CLI::App* shift = app.add_subcommand(
        "shift-scan", "Scan loaded-cavity resonance shift vs empty-cavity shift");
    CLI::App* cad = app.add_subcommand(
        "cad-scan", "Shift scan for a dual-peak gain medium tuned to anomalous dispersion");
    CLI::App* calibrate = app.add_subcommand(
        "calibrate", "Solve EIT medium parameters for a target window width and group index");
    add_common(spectrum);
    add_common(shift);
    add_common(cad);
    add_common(calibrate);

    CLI11_PARSE(app, argc, argv);

    using ringsim::cli::Command;
    Command command = Command::Spectrum;
    if (shift->parsed()) command = Command::ShiftScan;
    if (cad->parsed()) command = Command::CadScan;
    if (calibrate->parsed()) command = Command::Calibrate;

    return ringsim::cli::run_command(command, opt, std::cout, std::cerr);
}
