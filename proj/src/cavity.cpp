#include "ringsim/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ringsim/constants.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/numerics.hpp"

namespace ringsim {

CavityConfig CavityConfig::make(double length_L, double length_medium, double reflectivity_R,
                                double excess_loss, double omega_lock_request) {
    if (!(length_L > 0.0)) throw ParameterError("CavityConfig: length_L must be positive");
    if (!(length_medium >= 0.0 && length_medium <= length_L))
        throw ParameterError("CavityConfig: length_medium must be in [0, length_L]");
    if (!(reflectivity_R > 0.0 && reflectivity_R < 1.0))
        throw ParameterError("CavityConfig: reflectivity_R must be in (0, 1)");
    if (!(excess_loss >= 0.0 && excess_loss < 1.0))
        throw ParameterError("CavityConfig: excess_loss must be in [0, 1)");
    if (!(omega_lock_request > 0.0))
        throw ParameterError("CavityConfig: omega_lock must be positive");

    CavityConfig cfg;
    cfg.length_L = length_L;
    cfg.length_medium = length_medium;
    cfg.reflectivity_R = reflectivity_R;
    cfg.excess_loss = excess_loss;
    // Snap the lock point to the nearest exact vacuum resonance order.
    const double fsr = two_pi * speed_of_light / length_L;
    cfg.mode_N = std::max(1LL, static_cast<long long>(std::llround(omega_lock_request / fsr)));
    cfg.omega_lock = static_cast<double>(cfg.mode_N) * fsr;
    cfg.delta_length = 0.0;
    return cfg;
}

CavityConfig CavityConfig::with_length_change(double dL) const {
    if (!(std::abs(dL) < 0.5 * length_L))
        throw ParameterError("CavityConfig: |delta_length| must be small against length_L");
    CavityConfig cfg = *this;
    cfg.delta_length = dL;
    return cfg;
}

CavityConfig CavityConfig::with_lock_shift(double dw0) const {
    return with_length_change(-length_L * dw0 / omega_lock);
}

double CavityConfig::fsr() const { return two_pi * speed_of_light / length_L; }

double CavityConfig::round_trip_amplitude0() const {
    return reflectivity_R * std::sqrt(1.0 - excess_loss);
}

double round_trip_phase_delta(const CavityConfig& cfg, const MediumSpec& medium, double dw) {
    const double w0 = cfg.omega_lock;
    const double ell = cfg.length_medium;
    // (w0+dw) n(w0+dw) - w0 n(w0) regrouped through n-1 so the large n~1
    // parts cancel exactly:  dw + w0 (r(dw) - r0) + dw r(dw).
    const double r = refractivity(medium, w0 + dw);
    const double r0 = refractivity(medium, w0);
    const double medium_term = w0 * (r - r0) + dw * (1.0 + r);
    return (dw * (cfg.length_L - ell) + (w0 + dw) * cfg.delta_length + medium_term * ell) /
           speed_of_light;
}

double round_trip_amplitude(const CavityConfig& cfg, const MediumSpec& medium, double dw) {
    const OpticalResponse resp = optical_response(medium, cfg.omega_lock + dw);
    const double rho = std::exp(-0.5 * resp.alpha * cfg.length_medium);
    return cfg.round_trip_amplitude0() * rho;
}

double transmission(const CavityConfig& cfg, const MediumSpec& medium, double dw) {
    const double a = round_trip_amplitude(cfg, medium, dw);
    if (a >= 1.0)
        throw AboveThresholdError(
            "transmission: round-trip gain exceeds loss; passive-cavity model invalid");
    const double a0 = cfg.round_trip_amplitude0();
    const double s = std::sin(0.5 * round_trip_phase_delta(cfg, medium, dw));
    const double denom = (1.0 - a) * (1.0 - a) + 4.0 * a * s * s;
    return (1.0 - a0) * (1.0 - a0) / denom;
}

SpectrumResult spectrum(const CavityConfig& cfg, const MediumSpec& medium, double dw_min,
                        double dw_max, int samples) {
    if (!(dw_min < dw_max)) throw ParameterError("spectrum: dw_min must be < dw_max");
    if (samples < 16) throw ParameterError("spectrum: samples must be >= 16");

    SpectrumResult out;
    out.detunings.resize(static_cast<std::size_t>(samples));
    out.transmission.resize(static_cast<std::size_t>(samples));
    const double step = (dw_max - dw_min) / (samples - 1);
    for (int i = 0; i < samples; ++i) {
        const double dw = dw_min + step * i;
        out.detunings[static_cast<std::size_t>(i)] = dw;
        out.transmission[static_cast<std::size_t>(i)] = transmission(cfg, medium, dw);
    }

    try {
        const PeakEstimate pk = extract_peak(out.detunings, out.transmission);
        out.peak_center = pk.center;
        out.fwhm = pk.fwhm;
    } catch (const PeakExtractionError& e) {
        throw WindowError(std::string("spectrum: window too narrow (") + e.what() + ")");
    }
    return out;
}

namespace {

double half_width_phase(double amplitude) {
    if (!(amplitude > 0.0 && amplitude < 1.0))
        throw FormulaDomainError("linewidth: round-trip amplitude outside (0, 1)");
    const double arg = (1.0 - amplitude) / (2.0 * std::sqrt(amplitude));
    if (arg > 1.0)
        throw FormulaDomainError("linewidth: arcsine argument above 1 (cavity too lossy)");
    return std::asin(arg);
}

}  // namespace

double empty_linewidth_analytic(const CavityConfig& cfg) {
    return 4.0 * half_width_phase(cfg.round_trip_amplitude0()) * speed_of_light / cfg.length_L;
}

double linewidth_ratio_analytic(const CavityConfig& cfg, const MediumSpec& medium) {
    const double a0 = cfg.round_trip_amplitude0();
    const double a = round_trip_amplitude(cfg, medium, 0.0);
    const double num = half_width_phase(a);
    const double den = half_width_phase(a0);
    const double n_g = local_group_index(medium, cfg.omega_lock);
    const double disp = 1.0 + (n_g - 1.0) * cfg.length_medium / cfg.length_L;
    if (disp == 0.0) return std::numeric_limits<double>::infinity();
    return (num / den) / std::abs(disp);
}

double linewidth_numeric(const CavityConfig& cfg, const MediumSpec& medium) {
    // First guess from the analytic ratio; auto-widen from there.
    double estimate = empty_linewidth_analytic(cfg);
    try {
        const double ratio = linewidth_ratio_analytic(cfg, medium);
        if (std::isfinite(ratio) && ratio > 0.0) estimate *= ratio;
    } catch (const FormulaDomainError&) {
        // keep the empty-cavity guess
    }

    double half_window = std::max(3.0 * estimate, 1e-6 * empty_linewidth_analytic(cfg));
    const double max_half_window = 0.45 * cfg.fsr();
    const int samples = 4001;
    for (int attempt = 0; attempt < 10; ++attempt) {
        const double hw = std::min(half_window, max_half_window);
        try {
            return spectrum(cfg, medium, -hw, hw, samples).fwhm;
        } catch (const WindowError&) {
            if (hw >= max_half_window)
                throw;  // cannot widen further without catching the next order
            half_window *= 2.0;
        }
    }
    throw WindowError("linewidth_numeric: no full resonance found after widening 10 times");
}

double reflectivity_for_linewidth(double length_L, double target_fwhm) {
    if (!(length_L > 0.0))
        throw ParameterError("reflectivity_for_linewidth: length_L must be positive");
    if (!(target_fwhm > 0.0))
        throw ParameterError("reflectivity_for_linewidth: target_fwhm must be positive");
    // fwhm = 4 asin((1-A)/(2 sqrt(A))) c/L inverted for A:
    // with t = sin(fwhm L / 4c), sqrt(A) = -t + sqrt(t^2+1).
    const double t = std::sin(0.25 * target_fwhm * length_L / speed_of_light);
    if (!(t > 0.0 && t < 1.0))
        throw ParameterError("reflectivity_for_linewidth: target linewidth out of range");
    const double root = -t + std::sqrt(t * t + 1.0);
    return root * root;
}

double excess_loss_for_linewidth(double length_L, double reflectivity_R, double target_fwhm) {
    // Same inversion, attributing the extra loss to the excess-loss factor.
    const double a_target = reflectivity_for_linewidth(length_L, target_fwhm);
    if (a_target > reflectivity_R * (1.0 + 1e-12))
        throw ParameterError(
            "excess_loss_for_linewidth: target linewidth narrower than the mirrors allow");
    const double ratio = std::min(1.0, a_target / reflectivity_R);  // sqrt(1 - excess)
    return 1.0 - ratio * ratio;
}

}  // namespace ringsim
