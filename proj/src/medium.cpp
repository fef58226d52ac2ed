#include "ringsim/medium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ringsim/constants.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/numerics.hpp"

namespace ringsim {

using cplx = std::complex<double>;

namespace {
constexpr cplx I{0.0, 1.0};
constexpr double inf = std::numeric_limits<double>::infinity();
}  // namespace

MediumSpec MediumSpec::vacuum(double center) {
    MediumSpec s;
    s.kind = MediumKind::Vacuum;
    s.center = center;
    return s;
}

MediumSpec MediumSpec::linear_toy(double slope, double center) {
    MediumSpec s;
    s.kind = MediumKind::LinearToy;
    s.slope = slope;
    s.center = center;
    return s;
}

MediumSpec MediumSpec::eit_lambda(double chi0, double gamma_opt, double gamma_ground,
                                  double rabi_pump, double center) {
    MediumSpec s;
    s.kind = MediumKind::EitLambda;
    s.chi0 = chi0;
    s.gamma_opt = gamma_opt;
    s.gamma_ground = gamma_ground;
    s.rabi_pump = rabi_pump;
    s.center = center;
    return s;
}

MediumSpec MediumSpec::raman_single(double chi0, double gamma_opt, double center) {
    MediumSpec s;
    s.kind = MediumKind::RamanGainSingle;
    s.chi0 = chi0;
    s.gamma_opt = gamma_opt;
    s.center = center;
    return s;
}

MediumSpec MediumSpec::raman_dual(double chi0, double gamma_opt, double peak_offset,
                                  double center) {
    MediumSpec s;
    s.kind = MediumKind::RamanGainDual;
    s.chi0 = chi0;
    s.gamma_opt = gamma_opt;
    s.peak_offset = peak_offset;
    s.center = center;
    return s;
}

void MediumSpec::validate() const {
    auto require = [](bool ok, const char* field) {
        if (!ok) throw ParameterError(std::string("MediumSpec: invalid ") + field);
    };
    switch (kind) {
        case MediumKind::Vacuum:
            break;
        case MediumKind::LinearToy:
            require(std::isfinite(slope), "slope");
            require(center > 0.0, "center");
            break;
        case MediumKind::EitLambda:
            require(chi0 >= 0.0, "chi0");
            require(gamma_opt > 0.0, "gamma_opt");
            require(gamma_ground >= 0.0, "gamma_ground");
            require(rabi_pump >= 0.0, "rabi_pump");
            require(center > 0.0, "center");
            break;
        case MediumKind::RamanGainSingle:
            require(chi0 >= 0.0, "chi0");
            require(gamma_opt > 0.0, "gamma_opt");
            require(center > 0.0, "center");
            break;
        case MediumKind::RamanGainDual:
            require(chi0 >= 0.0, "chi0");
            require(gamma_opt > 0.0, "gamma_opt");
            require(peak_offset >= 0.0, "peak_offset");
            require(center > 0.0, "center");
            break;
    }
}

namespace {

// Three-level lambda steady state, pump on one-photon resonance. Written
// with the ground-state factor multiplied through so the gamma_ground = 0,
// delta = 0 transparency point is exact instead of 0/0.
cplx chi_eit(const MediumSpec& s, double delta) {
    const cplx w = 0.5 * s.gamma_opt - I * delta;
    if (s.rabi_pump == 0.0)  // pump off: bare two-level line
        return s.chi0 * (0.5 * I * s.gamma_opt) / w;
    const cplx u = s.gamma_ground - I * delta;
    return s.chi0 * (0.5 * I * s.gamma_opt) * u / (w * u + 0.25 * s.rabi_pump * s.rabi_pump);
}

cplx dchi_eit(const MediumSpec& s, double delta) {
    const cplx w = 0.5 * s.gamma_opt - I * delta;
    if (s.rabi_pump == 0.0)
        return s.chi0 * (0.5 * s.gamma_opt) * (-1.0) / (w * w);
    const cplx u = s.gamma_ground - I * delta;
    const cplx v = w * u + 0.25 * s.rabi_pump * s.rabi_pump;
    return s.chi0 * (0.5 * s.gamma_opt) *
           (0.25 * s.rabi_pump * s.rabi_pump - u * u) / (v * v);
}

cplx chi_raman_line(double chi0, double gamma, double delta) {
    return -I * chi0 * (0.5 * gamma) / (0.5 * gamma - I * delta);
}

cplx dchi_raman_line(double chi0, double gamma, double delta) {
    const cplx w = 0.5 * gamma - I * delta;
    return chi0 * (0.5 * gamma) / (w * w);
}

}  // namespace

std::complex<double> susceptibility(const MediumSpec& spec, double omega) {
    spec.validate();
    if (!(omega > 0.0)) throw ParameterError("susceptibility: omega must be positive");
    const double delta = omega - spec.center;
    switch (spec.kind) {
        case MediumKind::Vacuum:
            return {0.0, 0.0};
        case MediumKind::LinearToy: {
            // chi = (1 + k*delta)^2 - 1, so n = 1 + k*delta exactly.
            const double nk = 1.0 + spec.slope * delta;
            return {nk * nk - 1.0, 0.0};
        }
        case MediumKind::EitLambda:
            return chi_eit(spec, delta);
        case MediumKind::RamanGainSingle:
            return chi_raman_line(spec.chi0, spec.gamma_opt, delta);
        case MediumKind::RamanGainDual:
            return chi_raman_line(spec.chi0, spec.gamma_opt, delta - spec.peak_offset) +
                   chi_raman_line(spec.chi0, spec.gamma_opt, delta + spec.peak_offset);
    }
    return {0.0, 0.0};
}

std::complex<double> susceptibility_derivative(const MediumSpec& spec, double omega) {
    spec.validate();
    if (!(omega > 0.0))
        throw ParameterError("susceptibility_derivative: omega must be positive");
    const double delta = omega - spec.center;
    switch (spec.kind) {
        case MediumKind::Vacuum:
            return {0.0, 0.0};
        case MediumKind::LinearToy:
            return {2.0 * spec.slope * (1.0 + spec.slope * delta), 0.0};
        case MediumKind::EitLambda:
            return dchi_eit(spec, delta);
        case MediumKind::RamanGainSingle:
            return dchi_raman_line(spec.chi0, spec.gamma_opt, delta);
        case MediumKind::RamanGainDual:
            return dchi_raman_line(spec.chi0, spec.gamma_opt, delta - spec.peak_offset) +
                   dchi_raman_line(spec.chi0, spec.gamma_opt, delta + spec.peak_offset);
    }
    return {0.0, 0.0};
}

namespace {

cplx index_root(const cplx& chi) {
    if (1.0 + chi.real() <= 0.0)
        throw ModelBreakdownError(
            "optical_response: 1 + Re[chi] <= 0, susceptibility too strong for the "
            "dilute-medium model");
    return std::sqrt(1.0 + chi);
}

}  // namespace

double refractivity(const MediumSpec& spec, double omega) {
    const cplx chi = susceptibility(spec, omega);
    const cplx root = index_root(chi);
    // n - 1 = Re[chi / (1 + sqrt(1+chi))]; exact, no cancellation at chi ~ 1e-7.
    return (chi / (1.0 + root)).real();
}

OpticalResponse optical_response(const MediumSpec& spec, double omega) {
    const cplx chi = susceptibility(spec, omega);
    const cplx root = index_root(chi);
    const double n = root.real();
    const double alpha = omega / speed_of_light * chi.imag() / n;
    const cplx dchi = susceptibility_derivative(spec, omega);
    const double dn_domega = (dchi / (2.0 * root)).real();
    return OpticalResponse{chi, n, alpha, 1.0 + omega * dn_domega};
}

GroupIndexFd group_index_fd(const MediumSpec& spec, double omega, double h) {
    if (!(h > 0.0)) throw ParameterError("group_index_fd: h must be positive");
    // Differencing n-1 instead of n sidesteps the 1-ulp floor of n ~ 1.
    const double slope = (refractivity(spec, omega + h) - refractivity(spec, omega - h)) / (2.0 * h);
    const double feature = narrowest_feature(spec);
    return GroupIndexFd{1.0 + omega * slope, h >= 0.1 * feature};
}

double effective_group_index(const MediumSpec& spec, double omega0, double dw) {
    if (dw == 0.0) return local_group_index(spec, omega0);
    const double dn = refractivity(spec, omega0 + dw) - refractivity(spec, omega0);
    return 1.0 + (omega0 + dw) * dn / dw;
}

double local_group_index(const MediumSpec& spec, double omega) {
    return optical_response(spec, omega).n_g;
}

namespace {

// Transparency-window FWHM for gamma_ground = 0 in closed form:
// sqrt(G^2/4 + Omega^2) - G/2. Used as a guard scale and calibration seed.
double eit_width_estimate(const MediumSpec& s) {
    const double g = s.gamma_opt;
    const double w0 = std::sqrt(0.25 * g * g + s.rabi_pump * s.rabi_pump) - 0.5 * g;
    return w0 + 2.0 * s.gamma_ground;
}

}  // namespace

double narrowest_feature(const MediumSpec& spec) {
    switch (spec.kind) {
        case MediumKind::Vacuum:
        case MediumKind::LinearToy:
            return inf;
        case MediumKind::EitLambda:
            if (spec.rabi_pump == 0.0) return spec.gamma_opt;
            return std::min(spec.gamma_opt, eit_width_estimate(spec));
        case MediumKind::RamanGainSingle:
            return spec.gamma_opt;
        case MediumKind::RamanGainDual:
            return spec.gamma_opt;
    }
    return inf;
}

double dispersion_bandwidth(const MediumSpec& spec) {
    switch (spec.kind) {
        case MediumKind::Vacuum:
        case MediumKind::LinearToy:
            return inf;
        case MediumKind::EitLambda:
            if (spec.chi0 == 0.0 || spec.rabi_pump == 0.0) return inf;
            return eit_transparency_fwhm(spec);
        case MediumKind::RamanGainSingle:
            return spec.gamma_opt;
        case MediumKind::RamanGainDual:
            return spec.peak_offset > 0.0 ? spec.peak_offset : spec.gamma_opt;
    }
    return inf;
}

double eit_transparency_fwhm(const MediumSpec& spec) {
    if (spec.kind != MediumKind::EitLambda)
        throw ParameterError("eit_transparency_fwhm: spec.kind must be EitLambda");
    spec.validate();
    if (spec.chi0 == 0.0 || spec.rabi_pump == 0.0)
        throw ParameterError("eit_transparency_fwhm: no transparency window (chi0 or rabi_pump is 0)");

    auto im_chi = [&](double delta) {
        return susceptibility(spec, spec.center + delta).imag();
    };

    // Shoulder maximum of Im[chi] on a dense grid, then the dip half-depth
    // crossing bracketed between the dip bottom and the shoulder.
    const double span = std::max(0.5 * spec.gamma_opt + spec.rabi_pump,
                                 4.0 * eit_width_estimate(spec));
    const int n = 20000;
    double best_x = 0.0, best = -inf;
    for (int i = 1; i <= n; ++i) {
        const double x = span * i / n;
        const double v = im_chi(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    const double bottom = im_chi(0.0);
    if (!(best > bottom))
        throw ParameterError("eit_transparency_fwhm: no dip found");
    const double half = 0.5 * (best + bottom);

    auto f = [&](double x) { return im_chi(x) - half; };
    const double crossing = find_root(f, Bracket::make(f, 0.0, best_x), 1e-9 * best_x + 1e-6);
    return 2.0 * crossing;
}

MediumSpec calibrate_eit(double target_eit_fwhm, double target_ng, double omega0,
                         double gamma_opt, double gamma_ground) {
    if (!(target_eit_fwhm > 0.0))
        throw ParameterError("calibrate_eit: target_eit_fwhm must be positive");
    if (!(target_ng >= 1.0))
        throw ParameterError("calibrate_eit: target_ng must be >= 1");
    if (!(omega0 > 0.0)) throw ParameterError("calibrate_eit: omega0 must be positive");
    if (!(gamma_opt > 0.0)) throw ParameterError("calibrate_eit: gamma_opt must be positive");
    if (gamma_ground < 0.0) throw ParameterError("calibrate_eit: gamma_ground must be >= 0");

    const double wt = target_eit_fwhm;
    // gamma_ground = 0 closed forms seed the search:
    //   width  = sqrt(G^2/4 + Omega^2) - G/2  ->  Omega^2 = W^2 + W*G
    //   n_g(0) = 1 + omega0 * chi0 * G / Omega^2
    double rabi = std::sqrt(wt * wt + wt * gamma_opt);

    if (target_ng == 1.0)  // degenerate: no dispersion requested
        return MediumSpec::eit_lambda(0.0, gamma_opt, gamma_ground, rabi, omega0);

    double chi0 = (target_ng - 1.0) * rabi * rabi / (omega0 * gamma_opt);

    const double chi0_max = 1e-2;   // dilute-medium search box
    const double rabi_max = 50.0 * gamma_opt;
    const double tol = 1e-3;        // both observables within 0.1 %

    double best_residual = inf;
    for (int iter = 0; iter < 40; ++iter) {
        MediumSpec s = MediumSpec::eit_lambda(chi0, gamma_opt, gamma_ground, rabi, omega0);
        if (chi0 > chi0_max || rabi > rabi_max) break;

        const double w_meas = eit_transparency_fwhm(s);
        const double ng_meas = local_group_index(s, omega0);
        const double rw = w_meas / wt - 1.0;
        const double rn = (ng_meas - 1.0) / (target_ng - 1.0) - 1.0;
        best_residual = std::min(best_residual, std::max(std::abs(rw), std::abs(rn)));
        if (std::abs(rw) < tol && std::abs(rn) < tol)
            return s;

        // The width is almost a pure function of rabi and n_g - 1 is almost
        // proportional to chi0, so alternating 1-D corrections converge fast.
        rabi *= std::sqrt(std::max(0.1, std::min(10.0, 1.0 / (1.0 + rw))));
        chi0 *= std::max(0.1, std::min(10.0, 1.0 / (1.0 + rn)));
    }
    throw CalibrationError("calibrate_eit: no solution inside the search box", best_residual);
}

double tune_dual_peak_offset(double chi0, double gamma_opt, double omega0,
                             double target_ng) {
    if (!(chi0 > 0.0)) throw ParameterError("tune_dual_peak_offset: chi0 must be positive");
    if (!(gamma_opt > 0.0))
        throw ParameterError("tune_dual_peak_offset: gamma_opt must be positive");
    if (!(target_ng < 1.0))
        throw ParameterError("tune_dual_peak_offset: target_ng must be < 1");

    auto ng_at = [&](double d) {
        MediumSpec s = MediumSpec::raman_dual(chi0, gamma_opt, d, omega0);
        return local_group_index(s, omega0) - target_ng;
    };

    // n_g(0) vs offset dips to its minimum at sqrt(3)*gamma/2 and recovers
    // toward 1; take the outer branch, where wider offsets mean weaker
    // anomalous dispersion.
    const double s_half = 0.5 * gamma_opt;
    const double d_min = std::sqrt(3.0) * s_half;
    const double d_max = 200.0 * s_half;
    const double f_min = ng_at(d_min);
    if (f_min > 0.0)
        throw SolverError(
            "tune_dual_peak_offset: amplitude too small to reach the target group index");
    auto f = [&](double d) { return ng_at(d); };
    return find_root(f, Bracket::make(f, d_min, d_max), 1e-9 * gamma_opt);
}

}  // namespace ringsim
