#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "ringsim/constants.hpp"
#include "ringsim/shift.hpp"
#include "svg.hpp"

namespace ringsim::cli {

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << content;
    if (!out) throw ConfigError("failed writing output file: " + path);
}

void write_sidecar(const Scenario& sc, const std::string& csv_path,
                   const std::vector<std::pair<std::string, std::string>>& extra) {
    std::ostringstream meta;
    meta << "tool = " << tool_version << "\n";
    meta << "command = " << command_name(sc.command) << "\n";
    for (const auto& [k, v] : sc.resolved) meta << k << " = " << v << "\n";
    for (const auto& [k, v] : extra) meta << k << " = " << v << "\n";
    write_file(csv_path + ".meta", meta.str());
}

CavityConfig effective_cavity(const Scenario& sc) {
    return sc.lock_offset != 0.0 ? sc.cavity.with_lock_shift(sc.lock_offset) : sc.cavity;
}

int cmd_spectrum(const Scenario& sc, bool plot, std::ostream& log) {
    const CavityConfig cavity = effective_cavity(sc);
    const SpectrumResult res = spectrum(cavity, sc.medium, -sc.spectrum_half_window,
                                        sc.spectrum_half_window, sc.spectrum_samples);

    std::ostringstream csv;
    csv << "detuning_MHz,transmission\n";
    for (std::size_t i = 0; i < res.detunings.size(); ++i)
        csv << fmt9(rad_to_mhz(res.detunings[i])) << "," << fmt9(res.transmission[i]) << "\n";
    const std::string csv_path = resolve_output_path(sc.csv_path);
    write_file(csv_path, csv.str());

    std::vector<std::pair<std::string, std::string>> extra;
    extra.emplace_back("result.fwhm_mhz", fmt9(rad_to_mhz(res.fwhm)));
    extra.emplace_back("result.peak_center_mhz", fmt9(rad_to_mhz(res.peak_center)));

    SpectrumResult vac;
    if (sc.overlay_vacuum) {
        vac = spectrum(cavity, MediumSpec::vacuum(sc.cavity.omega_lock),
                       -sc.spectrum_half_window, sc.spectrum_half_window, sc.spectrum_samples);
        extra.emplace_back("result.vacuum_fwhm_mhz", fmt9(rad_to_mhz(vac.fwhm)));
        extra.emplace_back("result.linewidth_ratio", fmt9(res.fwhm / vac.fwhm));
    }
    write_sidecar(sc, csv_path, extra);

    if (plot) {
        std::vector<SvgSeries> series;
        SvgSeries med{"medium", "#1f62c4", false, true, {}, {}};
        for (std::size_t i = 0; i < res.detunings.size(); ++i) {
            med.xs.push_back(rad_to_mhz(res.detunings[i]));
            med.ys.push_back(res.transmission[i]);
        }
        series.push_back(std::move(med));
        if (sc.overlay_vacuum) {
            SvgSeries v{"vacuum", "#999999", false, true, {}, {}};
            for (std::size_t i = 0; i < vac.detunings.size(); ++i) {
                v.xs.push_back(rad_to_mhz(vac.detunings[i]));
                v.ys.push_back(vac.transmission[i]);
            }
            series.push_back(std::move(v));
        }
        write_file(resolve_output_path(sc.svg_path),
                   render_svg_plot("cavity transmission", "detuning (MHz)", "transmission",
                                   series));
    }

    log << "spectrum: fwhm = " << fmt9(rad_to_mhz(res.fwhm))
        << " MHz, peak at " << fmt9(rad_to_mhz(res.peak_center)) << " MHz\n";
    return 0;
}

std::string scan_csv(const ShiftScanResult& scan,
                     const std::vector<std::pair<std::string, std::string>>& footer) {
    std::ostringstream csv;
    csv << "dw0_MHz,dw0_prime_linear_MHz,dw0_prime_MHz,ng_eff,residual_Hz\n";
    for (const ShiftResult& p : scan.points)
        csv << fmt9(rad_to_mhz(p.dw0)) << "," << fmt9(rad_to_mhz(p.dw0_prime_linear)) << ","
            << fmt9(rad_to_mhz(p.dw0_prime)) << "," << fmt9(p.n_g_eff) << ","
            << fmt9(p.residual / two_pi) << "\n";
    for (const auto& [k, v] : footer) csv << "# " << k << " = " << v << "\n";
    return csv.str();
}

void plot_scan(const Scenario& sc, const ShiftScanResult& scan) {
    SvgSeries pts{"self-consistent", "#1f62c4", true, false, {}, {}};
    for (const ShiftResult& p : scan.points) {
        pts.xs.push_back(rad_to_mhz(p.dw0));
        pts.ys.push_back(rad_to_mhz(p.dw0_prime));
    }
    SvgSeries fit{"fitted slope", "#c43d1f", false, true, {}, {}};
    if (!scan.points.empty()) {
        const double x0 = rad_to_mhz(scan.points.front().dw0);
        const double x1 = rad_to_mhz(scan.points.back().dw0);
        fit.xs = {x0, x1};
        fit.ys = {scan.fitted_slope * x0, scan.fitted_slope * x1};
    }
    write_file(resolve_output_path(sc.svg_path),
               render_svg_plot("loaded-cavity shift vs empty-cavity shift", "dw0 (MHz)",
                               "dw0' (MHz)", {pts, fit}));
}

int cmd_shift_scan(const Scenario& sc, bool plot, std::ostream& log) {
    const ShiftScanResult scan = scan_shift(sc.cavity, sc.medium, sc.grid);

    std::vector<std::pair<std::string, std::string>> footer;
    footer.emplace_back("fitted_slope", fmt9(scan.fitted_slope));
    footer.emplace_back("implied_S", fmt9(scan.implied_S));

    const std::string csv_path = resolve_output_path(sc.csv_path);
    write_file(csv_path, scan_csv(scan, footer));
    write_sidecar(sc, csv_path, footer);
    if (plot) plot_scan(sc, scan);

    log << "shift-scan: " << scan.points.size() << " points, fitted slope = "
        << fmt9(scan.fitted_slope) << ", implied S = " << fmt9(scan.implied_S) << "\n";
    return 0;
}

int cmd_cad_scan(const Scenario& sc, bool plot, std::ostream& log) {
    const ShiftScanResult scan = cad_enhancement_scan(sc.cavity, sc.medium, sc.grid);

    // Enhancement at the smallest nonzero grid point.
    double smallest = std::numeric_limits<double>::infinity();
    double enhancement = std::numeric_limits<double>::quiet_NaN();
    for (const ShiftResult& p : scan.points)
        if (p.dw0 != 0.0 && std::abs(p.dw0) < smallest) {
            smallest = std::abs(p.dw0);
            enhancement = p.dw0_prime / p.dw0;
        }

    const double loaded = linewidth_numeric(sc.cavity, sc.medium);
    const double vacuum =
        linewidth_numeric(sc.cavity, MediumSpec::vacuum(sc.cavity.omega_lock));

    std::vector<std::pair<std::string, std::string>> footer;
    footer.emplace_back("fitted_slope", fmt9(scan.fitted_slope));
    footer.emplace_back("implied_S", fmt9(scan.implied_S));
    footer.emplace_back("enhancement_at_smallest_dw0", fmt9(enhancement));
    footer.emplace_back("loaded_fwhm_mhz", fmt9(rad_to_mhz(loaded)));
    footer.emplace_back("vacuum_fwhm_mhz", fmt9(rad_to_mhz(vacuum)));
    footer.emplace_back("linewidth_ratio", fmt9(loaded / vacuum));

    const std::string csv_path = resolve_output_path(sc.csv_path);
    write_file(csv_path, scan_csv(scan, footer));
    write_sidecar(sc, csv_path, footer);
    if (plot) plot_scan(sc, scan);

    log << "cad-scan: enhancement at smallest dw0 = " << fmt9(enhancement)
        << ", linewidth ratio = " << fmt9(loaded / vacuum) << "\n";
    return 0;
}

int cmd_calibrate(const Scenario& sc, std::ostream& log) {
    const MediumSpec spec = calibrate_eit(sc.calib_width, sc.calib_ng, sc.cavity.omega_lock,
                                          sc.calib_gamma_opt, sc.calib_gamma_ground);
    std::ostringstream out;
    out << "kind = eit\n";
    out << "chi0 = " << fmt9(spec.chi0) << "\n";
    out << "rabi_mhz = " << fmt9(rad_to_mhz(spec.rabi_pump)) << "\n";
    out << "gamma_opt_mhz = " << fmt9(rad_to_mhz(spec.gamma_opt)) << "\n";
    out << "gamma_ground_mhz = " << fmt9(rad_to_mhz(spec.gamma_ground)) << "\n";
    out << "center_rad_s = " << fmt9(spec.center) << "\n";
    if (spec.chi0 > 0.0) {
        out << "achieved_eit_linewidth_mhz = " << fmt9(rad_to_mhz(eit_transparency_fwhm(spec)))
            << "\n";
    } else {
        out << "achieved_eit_linewidth_mhz = 0\n";
    }
    out << "achieved_group_index = " << fmt9(local_group_index(spec, sc.cavity.omega_lock))
        << "\n";
    log << out.str();
    if (!sc.csv_path.empty() && sc.csv_path != "calibrate.csv")
        write_file(resolve_output_path(sc.csv_path), out.str());
    return 0;
}

}  // namespace

std::string resolve_output_path(const std::string& path) {
    const char* dir = std::getenv("RINGSIM_OUT_DIR");
    if (!dir || !*dir || path.empty() || path.front() == '/') return path;
    std::string base(dir);
    if (base.back() != '/') base += '/';
    return base + path;
}

int exit_code_for_current_exception() {
    try {
        throw;
    } catch (const ConfigError&) {
        return 2;
    } catch (const AboveThresholdError&) {
        return 3;
    } catch (const ModelBreakdownError&) {
        return 3;
    } catch (const CadDivergenceError&) {
        return 3;
    } catch (const FormulaDomainError&) {
        return 3;
    } catch (const CalibrationError&) {
        return 4;
    } catch (const SolverError&) {
        return 4;
    } catch (const WindowError&) {
        return 4;
    } catch (const PeakExtractionError&) {
        return 4;
    } catch (const ParameterError&) {
        return 2;
    } catch (...) {
        return 1;
    }
}

int run_command(Command command, const RunOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const Config cfg = opt.config_path.empty()
                               ? Config::parse_text("", "<defaults>")
                               : Config::parse_file(opt.config_path);
        Scenario sc = resolve_scenario(cfg, command);
        if (!opt.out_override.empty()) {
            sc.csv_path = opt.out_override;
            std::string svg = opt.out_override;
            const std::size_t dot = svg.rfind('.');
            if (dot != std::string::npos) svg.resize(dot);
            sc.svg_path = svg + ".svg";
        }
        if (opt.verbose)
            for (const auto& [k, v] : sc.resolved) out << "  " << k << " = " << v << "\n";

        switch (command) {
            case Command::Spectrum: return cmd_spectrum(sc, opt.plot, out);
            case Command::ShiftScan: return cmd_shift_scan(sc, opt.plot, out);
            case Command::CadScan: return cmd_cad_scan(sc, opt.plot, out);
            case Command::Calibrate: return cmd_calibrate(sc, out);
        }
        return 1;
    } catch (const CalibrationError& e) {
        err << command_name(command) << ": " << e.what()
            << " (best residual " << e.best_residual << ")\n";
        return exit_code_for_current_exception();
    } catch (const Error& e) {
        err << command_name(command) << ": " << e.what() << "\n";
        return exit_code_for_current_exception();
    } catch (const std::exception& e) {
        err << command_name(command) << ": " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ringsim::cli
