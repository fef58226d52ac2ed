#pragma once

#include <complex>

namespace ringsim {

enum class MediumKind {
    Vacuum,
    LinearToy,
    EitLambda,
    RamanGainSingle,
    RamanGainDual,
};

// Parametric description of the intra-cavity medium. All spectral fields are
// angular frequencies (rad/s); unused fields are ignored by the active kind.
struct MediumSpec {
    MediumKind kind = MediumKind::Vacuum;
    double chi0 = 0.0;          // susceptibility amplitude (dimensionless)
    double gamma_opt = 0.0;     // optical coherence decay rate
    double gamma_ground = 0.0;  // ground-state decoherence rate
    double rabi_pump = 0.0;     // pump Rabi frequency
    double peak_offset = 0.0;   // half-separation of the dual gain peaks
    double slope = 0.0;         // dn/domega for LinearToy (seconds)
    double center = 0.0;        // resonance / two-photon center

    static MediumSpec vacuum(double center);
    static MediumSpec linear_toy(double slope, double center);
    static MediumSpec eit_lambda(double chi0, double gamma_opt, double gamma_ground,
                                 double rabi_pump, double center);
    static MediumSpec raman_single(double chi0, double gamma_opt, double center);
    static MediumSpec raman_dual(double chi0, double gamma_opt, double peak_offset,
                                 double center);

    // Throws ParameterError naming the first field outside its domain.
    void validate() const;
};

struct OpticalResponse {
    std::complex<double> chi;  // susceptibility
    double n;                  // refractive index Re[sqrt(1+chi)]
    double alpha;              // intensity loss coefficient (1/m); negative = gain
    double n_g;                // group index 1 + w * dn/dw
};

// chi(omega), analytic closed form per medium kind.
std::complex<double> susceptibility(const MediumSpec& spec, double omega);

// dchi/domega, hand-differentiated closed form (production path for n_g).
std::complex<double> susceptibility_derivative(const MediumSpec& spec, double omega);

// n(omega) - 1 evaluated without the 1-ulp cancellation of Re[sqrt(1+chi)]-1.
double refractivity(const MediumSpec& spec, double omega);

// All four optical quantities at one frequency, mutually consistent.
// Throws ModelBreakdownError when 1 + Re[chi] <= 0.
OpticalResponse optical_response(const MediumSpec& spec, double omega);

struct GroupIndexFd {
    double value;
    bool step_too_large;  // h was >= narrowest spectral feature / 10
};

// Central-difference group index 1 + w*[n(w+h) - n(w-h)]/(2h). Test oracle
// for the analytic derivative; kept independent of susceptibility_derivative.
GroupIndexFd group_index_fd(const MediumSpec& spec, double omega, double h);

// 1 + (w0+dw)*[n(w0+dw) - n(w0)]/dw; at dw = 0 the limit is the local group
// index at w0.
double effective_group_index(const MediumSpec& spec, double omega0, double dw);

// Group index evaluated at an arbitrary frequency.
double local_group_index(const MediumSpec& spec, double omega);

// Width of the narrowest spectral feature (step-size guard for the finite
// difference). Infinite for Vacuum and LinearToy.
double narrowest_feature(const MediumSpec& spec);

// Detuning scale beyond which the medium's dispersion has rolled off; used
// to truncate shift scans. Infinite for Vacuum and LinearToy.
double dispersion_bandwidth(const MediumSpec& spec);

// FWHM of the transparency dip of Im[chi] for an EitLambda spec, measured
// numerically (dip minimum to shoulder maximum, half-depth crossings).
double eit_transparency_fwhm(const MediumSpec& spec);

// Invert (transparency width, center group index) to an EitLambda spec at
// fixed gamma_opt / gamma_ground by root finding over (chi0, rabi_pump).
// Both achieved observables match the targets within 0.1 %. target_ng = 1
// returns the degenerate zero-amplitude spec. Throws CalibrationError with
// the best residual when no solution exists in the search box.
MediumSpec calibrate_eit(double target_eit_fwhm, double target_ng, double omega0,
                         double gamma_opt, double gamma_ground = 0.0);

// Solve for the dual-gain peak offset that puts the center group index at
// target_ng (outer branch: offset > sqrt(3)*gamma_opt/2). Requires
// target_ng < 1 reachable for the given amplitude; throws SolverError
// otherwise.
double tune_dual_peak_offset(double chi0, double gamma_opt, double omega0,
                             double target_ng);

}  // namespace ringsim
