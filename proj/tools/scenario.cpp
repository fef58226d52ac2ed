#include "scenario.hpp"

#include <cmath>
#include <cstdio>

#include "ringsim/constants.hpp"
#include "ringsim/shift.hpp"

namespace ringsim::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void note(Scenario& sc, const std::string& key, double value, bool defaulted) {
    sc.resolved.emplace_back(key, fmt(value) + (defaulted ? "  (default)" : ""));
}

void note_str(Scenario& sc, const std::string& key, const std::string& value, bool defaulted) {
    sc.resolved.emplace_back(key, value + (defaulted ? "  (default)" : ""));
}

// Dual-gain design point: peaks at +-(1+sqrt(2)) * gamma/2 put the center
// group index at the target with the least peak gain per unit of anomalous
// dispersion, and cancel the cubic phase term at the same time. The line
// width is sized off the cavity loss budget so the gain peaks stay a
// threshold_margin below oscillation.
struct CadDefaults {
    double gamma_opt;
    double chi0;
};

CadDefaults cad_defaults(const CavityConfig& cavity, double target_ng, double margin) {
    const double beta = 1.0 + std::sqrt(2.0);
    const double kappa = 1.0 + 1.0 / (1.0 + 4.0 * beta * beta);  // peak vs lone-line gain
    const double g_loss = -std::log(cavity.round_trip_amplitude0());
    const double ell = cavity.length_medium > 0.0 ? cavity.length_medium : cavity.length_L;
    const double s = 2.0 * speed_of_light * g_loss /
                     ((beta * beta + 1.0) * std::sqrt(2.0) * kappa * ell * margin);
    const double chi0 =
        std::max(0.0, 1.0 - target_ng) * std::sqrt(2.0) * s * (beta * beta + 1.0) /
        cavity.omega_lock;
    return CadDefaults{2.0 * s, chi0};
}

}  // namespace

const char* command_name(Command command) {
    switch (command) {
        case Command::Spectrum: return "spectrum";
        case Command::ShiftScan: return "shift-scan";
        case Command::CadScan: return "cad-scan";
        case Command::Calibrate: return "calibrate";
    }
    return "?";
}

Scenario resolve_scenario(const Config& cfg, Command command) {
    Scenario sc;
    sc.command = command;

    // ---- cavity ----
    const double length_cm = cfg.get_double("cavity", "length_cm", 100.0);
    if (!(length_cm > 0.0)) throw ConfigError("[cavity] length_cm must be positive");
    const double length_L = length_cm * 1e-2;

    // The anomalous-dispersion study fills the whole ring by default; the
    // dispersion-reduction scenarios keep the 10 cm cell.
    const double default_medium_cm = command == Command::CadScan ? length_cm : 10.0;
    const bool medium_len_defaulted = !cfg.has("cavity", "medium_length_cm");
    const double medium_cm = cfg.get_double("cavity", "medium_length_cm", default_medium_cm);
    if (!(medium_cm >= 0.0 && medium_cm <= length_cm))
        throw ConfigError("[cavity] medium_length_cm must be in [0, length_cm]");

    const double wavelength_nm = cfg.get_double("cavity", "wavelength_nm", 780.24);
    if (!(wavelength_nm > 0.0)) throw ConfigError("[cavity] wavelength_nm must be positive");
    const double omega_request = two_pi * speed_of_light / (wavelength_nm * 1e-9);

    const double empty_mhz = cfg.get_double("cavity", "empty_linewidth_mhz", 3.0);
    const bool r_explicit = cfg.has("cavity", "reflectivity");
    double reflectivity = cfg.get_double("cavity", "reflectivity", 0.0);
    if (!r_explicit) reflectivity = reflectivity_for_linewidth(length_L, mhz_to_rad(empty_mhz));
    if (!(reflectivity > 0.0 && reflectivity < 1.0))
        throw ConfigError("[cavity] reflectivity must be in (0, 1)");

    // Loaded-but-dispersionless baseline: defaults to 8 MHz for the cell
    // scenarios and to no extra loss for the full-ring gain scenario.
    const double default_base_mhz =
        command == Command::CadScan ? rad_to_mhz(empty_linewidth_analytic(CavityConfig::make(
                                          length_L, 0.0, reflectivity, 0.0, omega_request)))
                                    : 8.0;
    const bool excess_explicit = cfg.has("cavity", "excess_loss");
    const bool base_defaulted = !cfg.has("cavity", "base_linewidth_mhz");
    const double base_mhz = cfg.get_double("cavity", "base_linewidth_mhz", default_base_mhz);
    double excess = cfg.get_double("cavity", "excess_loss", 0.0);
    if (!excess_explicit)
        excess = excess_loss_for_linewidth(length_L, reflectivity, mhz_to_rad(base_mhz));
    if (!(excess >= 0.0 && excess < 1.0))
        throw ConfigError("[cavity] excess_loss must be in [0, 1)");

    sc.cavity = CavityConfig::make(length_L, medium_cm * 1e-2, reflectivity, excess, omega_request);

    const double lock_offset_mhz = cfg.get_double("cavity", "lock_offset_mhz", 0.0);
    sc.lock_offset = mhz_to_rad(lock_offset_mhz);

    note(sc, "cavity.length_cm", length_cm, !cfg.has("cavity", "length_cm"));
    note(sc, "cavity.medium_length_cm", medium_cm, medium_len_defaulted);
    note(sc, "cavity.wavelength_nm", wavelength_nm, !cfg.has("cavity", "wavelength_nm"));
    note(sc, "cavity.reflectivity", sc.cavity.reflectivity_R, !r_explicit);
    note(sc, "cavity.excess_loss", sc.cavity.excess_loss, !excess_explicit);
    note(sc, "cavity.empty_linewidth_mhz", rad_to_mhz(empty_linewidth_analytic(
            CavityConfig::make(length_L, 0.0, reflectivity, 0.0, omega_request))), false);
    note(sc, "cavity.base_linewidth_mhz", base_mhz, base_defaulted);
    note(sc, "cavity.lock_offset_mhz", lock_offset_mhz, !cfg.has("cavity", "lock_offset_mhz"));
    note(sc, "cavity.omega_lock_rad_s", sc.cavity.omega_lock, true);
    sc.resolved.emplace_back("cavity.mode_N", std::to_string(sc.cavity.mode_N));

    // ---- medium ----
    const std::string default_kind = command == Command::CadScan ? "raman-dual" : "eit";
    const std::string kind = cfg.get_string("medium", "kind", default_kind);
    note_str(sc, "medium.kind", kind, !cfg.has("medium", "kind"));

    // Doppler-effective optical linewidth of the hot-vapor line for the
    // lambda model; the Raman lines default to a 1 MHz two-photon width.
    const double gamma_opt_default = kind == "raman" || kind == "raman-dual" ? 1.0 : 1000.0;
    const bool gamma_defaulted = !cfg.has("medium", "gamma_opt_mhz");
    const double gamma_opt_mhz = cfg.get_double("medium", "gamma_opt_mhz", gamma_opt_default);
    const double gamma_ground_mhz = cfg.get_double("medium", "gamma_ground_mhz", 0.0);
    const double eit_width_mhz = cfg.get_double("medium", "eit_linewidth_mhz", 1.0);
    const double group_index = cfg.get_double("medium", "group_index", 50.0);
    const auto chi0_explicit = cfg.get_optional_double("medium", "chi0");
    const auto rabi_explicit = cfg.get_optional_double("medium", "rabi_mhz");
    const auto offset_explicit = cfg.get_optional_double("medium", "peak_offset_mhz");

    sc.calib_width = mhz_to_rad(eit_width_mhz);
    sc.calib_ng = group_index;
    sc.calib_gamma_opt = mhz_to_rad(gamma_opt_mhz);
    sc.calib_gamma_ground = mhz_to_rad(gamma_ground_mhz);

    const double w0 = sc.cavity.omega_lock;
    if (command == Command::CadScan) {
        if (kind != "raman-dual")
            throw ConfigError("cad-scan requires medium kind 'raman-dual'");
        sc.cad_target_ng = cfg.get_double("cad", "target_group_index", 0.0);
        if (!(sc.cad_target_ng < 1.0 + 1e-12))
            throw ConfigError("[cad] target_group_index must be <= 1");
        const double margin = cfg.get_double("cad", "threshold_margin", 2.0);
        if (!(margin > 1.0)) throw ConfigError("[cad] threshold_margin must be > 1");
        const CadDefaults d = cad_defaults(sc.cavity, sc.cad_target_ng, margin);
        const double gamma_opt = gamma_defaulted ? d.gamma_opt : mhz_to_rad(gamma_opt_mhz);
        const double chi0 = chi0_explicit.value_or(d.chi0);
        double offset;
        if (offset_explicit) {
            offset = mhz_to_rad(*offset_explicit);
        } else if (std::abs(1.0 - sc.cad_target_ng) < 1e-12 || chi0 == 0.0) {
            offset = (1.0 + std::sqrt(2.0)) * 0.5 * gamma_opt;  // degenerate: no dispersion
        } else {
            offset = tune_dual_peak_offset(chi0, gamma_opt, w0, sc.cad_target_ng);
        }
        sc.medium = MediumSpec::raman_dual(chi0, gamma_opt, offset, w0);
        note(sc, "medium.chi0", chi0, !chi0_explicit.has_value());
        note(sc, "medium.gamma_opt_mhz", rad_to_mhz(gamma_opt), gamma_defaulted);
        note(sc, "medium.peak_offset_mhz", rad_to_mhz(offset), !offset_explicit.has_value());
        note(sc, "cad.target_group_index", sc.cad_target_ng, !cfg.has("cad", "target_group_index"));
        note(sc, "cad.threshold_margin", margin, !cfg.has("cad", "threshold_margin"));
        note(sc, "medium.achieved_group_index", local_group_index(sc.medium, w0), true);
    } else if (kind == "vacuum") {
        sc.medium = MediumSpec::vacuum(w0);
    } else if (kind == "linear") {
        const double slope = (group_index - 1.0) / w0;
        sc.medium = MediumSpec::linear_toy(slope, w0);
        note(sc, "medium.group_index", group_index, !cfg.has("medium", "group_index"));
        note(sc, "medium.slope_s", slope, true);
    } else if (kind == "eit") {
        if (chi0_explicit && rabi_explicit) {
            sc.medium = MediumSpec::eit_lambda(*chi0_explicit, mhz_to_rad(gamma_opt_mhz),
                                               mhz_to_rad(gamma_ground_mhz),
                                               mhz_to_rad(*rabi_explicit), w0);
            note(sc, "medium.chi0", *chi0_explicit, false);
            note(sc, "medium.rabi_mhz", *rabi_explicit, false);
        } else {
            sc.medium = calibrate_eit(sc.calib_width, sc.calib_ng, w0, sc.calib_gamma_opt,
                                      sc.calib_gamma_ground);
            note(sc, "medium.eit_linewidth_mhz", eit_width_mhz, !cfg.has("medium", "eit_linewidth_mhz"));
            note(sc, "medium.group_index", group_index, !cfg.has("medium", "group_index"));
            note(sc, "medium.chi0", sc.medium.chi0, true);
            note(sc, "medium.rabi_mhz", rad_to_mhz(sc.medium.rabi_pump), true);
        }
        note(sc, "medium.gamma_opt_mhz", gamma_opt_mhz, gamma_defaulted);
        note(sc, "medium.gamma_ground_mhz", gamma_ground_mhz, !cfg.has("medium", "gamma_ground_mhz"));
    } else if (kind == "raman" || kind == "raman-dual") {
        const double chi0 = chi0_explicit.value_or(1e-8);
        const double gamma_opt = mhz_to_rad(gamma_opt_mhz);
        if (kind == "raman") {
            sc.medium = MediumSpec::raman_single(chi0, gamma_opt, w0);
        } else {
            const double offset = mhz_to_rad(offset_explicit.value_or(1.0));
            sc.medium = MediumSpec::raman_dual(chi0, gamma_opt, offset, w0);
            note(sc, "medium.peak_offset_mhz", rad_to_mhz(offset), !offset_explicit.has_value());
        }
        note(sc, "medium.chi0", chi0, !chi0_explicit.has_value());
        note(sc, "medium.gamma_opt_mhz", rad_to_mhz(gamma_opt), !cfg.has("medium", "gamma_opt_mhz"));
    } else {
        throw ConfigError("[medium] kind must be vacuum | linear | eit | raman | raman-dual");
    }
    sc.medium.validate();

    // ---- spectrum ----
    const double half_window_mhz = cfg.get_double("spectrum", "half_window_mhz", 12.0);
    if (!(half_window_mhz > 0.0)) throw ConfigError("[spectrum] half_window_mhz must be positive");
    sc.spectrum_half_window = mhz_to_rad(half_window_mhz);
    sc.spectrum_samples = cfg.get_int("spectrum", "samples", 2001);
    if (sc.spectrum_samples < 16)
        throw ConfigError("[spectrum] samples must be >= 16");
    sc.overlay_vacuum = cfg.get_bool("spectrum", "overlay_vacuum", true);
    if (command == Command::Spectrum) {
        note(sc, "spectrum.half_window_mhz", half_window_mhz, !cfg.has("spectrum", "half_window_mhz"));
        note(sc, "spectrum.samples", sc.spectrum_samples, !cfg.has("spectrum", "samples"));
    }

    // ---- scan grid ----
    const bool cad = command == Command::CadScan;
    const char* scan_section = cad ? "cad" : "scan";
    const double max_default = cad ? 0.032 : 4.0;  // MHz
    const double max_mhz = cfg.get_double(scan_section, "max_dw0_mhz", max_default);
    const int steps = cfg.get_int(scan_section, "steps", 8);
    const bool include_zero = cfg.get_bool(scan_section, "include_zero", true);
    if (!(max_mhz > 0.0) || steps < 1)
        throw ConfigError(std::string("[") + scan_section + "] invalid scan grid");
    for (int k = steps; k >= 1; --k) sc.grid.push_back(-mhz_to_rad(max_mhz) * k / steps);
    if (include_zero) sc.grid.push_back(0.0);
    for (int k = 1; k <= steps; ++k) sc.grid.push_back(mhz_to_rad(max_mhz) * k / steps);
    if (command == Command::ShiftScan || cad) {
        note(sc, std::string(scan_section) + ".max_dw0_mhz", max_mhz,
             !cfg.has(scan_section, "max_dw0_mhz"));
        note(sc, std::string(scan_section) + ".steps", steps, !cfg.has(scan_section, "steps"));
    }

    // Blocks belonging to the other commands are legal in a shared config
    // file; consume their known keys so only genuine typos are rejected.
    const char* other_scan = cad ? "scan" : "cad";
    cfg.get_double(other_scan, "max_dw0_mhz", 0.0);
    cfg.get_int(other_scan, "steps", 0);
    cfg.get_bool(other_scan, "include_zero", true);
    if (!cad) {
        cfg.get_double("cad", "target_group_index", 0.0);
        cfg.get_double("cad", "threshold_margin", 0.0);
    }

    // ---- output ----
    const std::string default_csv = std::string(command_name(command)) + ".csv";
    sc.csv_path = cfg.get_string("output", "csv", default_csv);
    std::string default_svg = sc.csv_path;
    const std::size_t dot = default_svg.rfind('.');
    if (dot != std::string::npos) default_svg.resize(dot);
    default_svg += ".svg";
    sc.svg_path = cfg.get_string("output", "svg", default_svg);

    cfg.require_all_consumed();
    return sc;
}

Scenario default_scenario(Command command) {
    return resolve_scenario(Config::parse_text("", "<defaults>"), command);
}

}  // namespace ringsim::cli
