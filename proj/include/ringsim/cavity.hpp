#pragma once

#include <vector>

#include "ringsim/medium.hpp"

namespace ringsim {

// Ring geometry and mirror parameters. The lock frequency is snapped to the
// nearest exact resonance order N on construction, so the vacuum round-trip
// phase at omega_lock is exactly 2*pi*N. Only phase differences from the
// lock point are ever computed; N itself never multiplies 2*pi in floating
// point.
struct CavityConfig {
    double length_L = 1.0;       // total ring path length (m)
    double length_medium = 0.0;  // medium length (m), 0 <= l <= L
    double reflectivity_R = 0.9; // intensity reflectivity of each partial mirror
    double excess_loss = 0.0;    // extra round-trip intensity loss beyond the medium
    double omega_lock = 0.0;     // empty-cavity resonance the servo holds (rad/s)
    long long mode_N = 1;        // resonance order at the lock point
    double delta_length = 0.0;   // applied length change from the locked geometry (m)

    static CavityConfig make(double length_L, double length_medium, double reflectivity_R,
                             double excess_loss, double omega_lock_request);

    CavityConfig with_length_change(double dL) const;
    // Length change equivalent to an empty-cavity resonance shift dw0.
    CavityConfig with_lock_shift(double dw0) const;

    double fsr() const;                   // 2*pi*c/L
    double round_trip_amplitude0() const; // R * sqrt(1 - excess_loss), medium excluded
};

// phi(w0+dw) - phi(w0) for the locked geometry, plus the extra path phase
// (w0+dw)*delta_length/c when a length change is applied:
//   dw*(L-l)/c + (w0+dw)*dL/c + [(w0+dw)*n(w0+dw) - w0*n(w0)]*l/c
double round_trip_phase_delta(const CavityConfig& cfg, const MediumSpec& medium, double dw);

// Round-trip amplitude factor A(dw) = R * sqrt(1-excess_loss) * e^(-alpha*l/2).
double round_trip_amplitude(const CavityConfig& cfg, const MediumSpec& medium, double dw);

// Airy transmission normalized so the vacuum-medium lock-point peak is 1:
//   T(dw) = (1-A0)^2 / [ (1-A(dw))^2 + 4 A(dw) sin^2(phase_delta/2) ]
// with A0 the medium-free round-trip amplitude. Medium gain raises the peak
// factor, so T can exceed 1. Throws AboveThresholdError when A(dw) >= 1.
double transmission(const CavityConfig& cfg, const MediumSpec& medium, double dw);

struct SpectrumResult {
    std::vector<double> detunings;     // relative to omega_lock, strictly increasing
    std::vector<double> transmission;  // same length
    double peak_center;                // refined transmission maximum (detuning)
    double fwhm;
};

// Uniformly sampled transmission with peak/FWHM extraction. The window must
// contain exactly one resonance; a missing interior peak or half-max
// crossing raises WindowError. samples >= 16.
SpectrumResult spectrum(const CavityConfig& cfg, const MediumSpec& medium, double dw_min,
                        double dw_max, int samples);

// Analytic FWHM of the medium-free cavity: 4*asin((1-A0)/(2*sqrt(A0)))*c/L.
double empty_linewidth_analytic(const CavityConfig& cfg);

// Loaded/empty linewidth ratio from the dispersion-modified Airy half-width,
//   |asin((1-A0*rho)/(2 sqrt(A0*rho))) / asin((1-A0)/(2 sqrt(A0)))|
//     / |1 + (n_g - 1) * l/L|
// with rho and n_g evaluated at the lock point. Returns +infinity at the
// critically anomalous point where the dispersion factor vanishes. Throws
// FormulaDomainError when an amplitude leaves (0,1) or an arcsine argument
// leaves [-1,1].
double linewidth_ratio_analytic(const CavityConfig& cfg, const MediumSpec& medium);

// FWHM extracted from a sampled spectrum with an automatically widened
// window (doubled up to 10 times before giving up).
double linewidth_numeric(const CavityConfig& cfg, const MediumSpec& medium);

// Mirror reflectivity reproducing a target medium-free linewidth (no excess
// loss), and the excess loss that broadens a given R to a target linewidth.
double reflectivity_for_linewidth(double length_L, double target_fwhm);
double excess_loss_for_linewidth(double length_L, double reflectivity_R, double target_fwhm);

}  // namespace ringsim
