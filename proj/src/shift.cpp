#include "ringsim/shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ringsim/constants.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/numerics.hpp"

namespace ringsim {

namespace {

// The root is localized far below the documented residual bound so that the
// bound survives multiplication by steep sensitivity factors.
constexpr double solve_tol = two_pi * 0.01;
constexpr double residual_bound = two_pi * 10.0;

// Fixed-point defect of the self-consistent shift equation, written through
// n - 1 so the x -> 0 quotient never appears:
//   g(x) = x + (l/L) (w0 + x) [n(w0+x) - n(w0)] - dw0
// g(x) = 0  <=>  x [1 + (n_g_eff(x) - 1) l/L] = dw0.
struct ShiftEquation {
    const CavityConfig& cfg;
    const MediumSpec& medium;
    double r0;

    ShiftEquation(const CavityConfig& c, const MediumSpec& m)
        : cfg(c), medium(m), r0(refractivity(m, c.omega_lock)) {}

    double defect(double x, double dw0) const {
        const double ratio = cfg.length_medium / cfg.length_L;
        return x + ratio * (cfg.omega_lock + x) * (refractivity(medium, cfg.omega_lock + x) - r0) -
               dw0;
    }

    // d(defect)/dx, used only to flag non-monotonic stretches (folds).
    double slope(double x) const {
        const double ratio = cfg.length_medium / cfg.length_L;
        const double w = cfg.omega_lock + x;
        const double dr = refractivity(medium, w) - r0;
        const OpticalResponse resp = optical_response(medium, w);
        const double dn = (resp.n_g - 1.0) / w;  // dn/domega at w
        return 1.0 + ratio * (dr + w * dn);
    }
};

// March the root from a seeded solution to the new target, bracketing around
// the seed and expanding until the sign change is captured.
double track_root(const ShiftEquation& eq, double seed, double dw0, double fsr_half,
                  bool* fold) {
    auto f = [&](double x) { return eq.defect(x, dw0); };

    double radius = std::max({std::abs(f(seed)), std::abs(seed) * 1e-3, solve_tol});
    for (; radius <= 2.0 * fsr_half; radius *= 2.0) {
        const double lo = std::max(seed - radius, -fsr_half);
        const double hi = std::min(seed + radius, fsr_half);
        const Bracket b = Bracket::make(f, lo, hi);
        if (b.f_lo * b.f_hi <= 0.0) {
            const double x = find_root(f, b, solve_tol);
            // Non-monotonic defect between seed and solution means the
            // continuous branch folded and the root jumped branches. The
            // small negative allowance keeps a tuner-precision tangency at
            // the critically anomalous point from flagging.
            const double a = std::min(seed, x), c = std::max(seed, x);
            for (int i = 0; i <= 8; ++i) {
                if (eq.slope(a + (c - a) * i / 8.0) < -1e-6) {
                    *fold = true;
                    break;
                }
            }
            return x;
        }
        if (lo == -fsr_half && hi == fsr_half) break;
    }
    throw SolverError("solve_shift: no root within half a free spectral range");
}

ShiftResult solve_seeded(const CavityConfig& cfg, const MediumSpec& medium,
                         const ShiftEquation& eq, double dw0, double seed, bool seeded) {
    ShiftResult res;
    res.dw0 = dw0;
    const double n_g0 = local_group_index(medium, cfg.omega_lock);
    res.S_linear = 1.0 + (n_g0 - 1.0) * cfg.length_medium / cfg.length_L;
    res.dw0_prime_linear =
        res.S_linear != 0.0 ? dw0 / res.S_linear
                            : std::copysign(std::numeric_limits<double>::infinity(), dw0);

    if (dw0 == 0.0) {  // exact fixed point; the quotient limit is the local index
        res.dw0_prime = 0.0;
        res.n_g_eff = n_g0;
        res.n_g_local = n_g0;
        res.residual = 0.0;
        return res;
    }

    const double fsr_half = 0.5 * cfg.fsr();
    bool fold = false;
    double x = seed;
    if (!seeded) {
        // Continuation from zero: march the target outward so the solver
        // stays on the physically continuous branch.
        const int steps = 32;
        x = 0.0;
        for (int k = 1; k <= steps; ++k)
            x = track_root(eq, x, dw0 * k / steps, fsr_half, &fold);
    } else {
        x = track_root(eq, seed, dw0, fsr_half, &fold);
    }

    res.dw0_prime = x;
    res.n_g_eff = effective_group_index(medium, cfg.omega_lock, x);
    res.n_g_local = local_group_index(medium, cfg.omega_lock + x);
    res.residual = std::abs(
        x * (1.0 + (res.n_g_eff - 1.0) * cfg.length_medium / cfg.length_L) - dw0);
    res.fold = fold;
    if (res.residual > residual_bound)
        throw SolverError("solve_shift: converged root fails the residual bound");
    return res;
}

void require_lock_matches_center(const CavityConfig& cfg, const MediumSpec& medium) {
    if (medium.kind == MediumKind::Vacuum) return;
    if (std::abs(medium.center - cfg.omega_lock) > 1e-6 * cfg.omega_lock)
        throw ParameterError("solve_shift: medium center must equal the cavity lock frequency");
}

void require_below_threshold(const CavityConfig& cfg, const MediumSpec& medium) {
    if (round_trip_amplitude(cfg, medium, 0.0) >= 1.0)
        throw AboveThresholdError("solve_shift: medium gain exceeds cavity loss at the lock point");
}

}  // namespace

double shift_linear(double n_g, double ell_over_L, double dw0) {
    if (!(ell_over_L >= 0.0 && ell_over_L <= 1.0))
        throw ParameterError("shift_linear: ell_over_L must be in [0, 1]");
    const double denom = 1.0 + (n_g - 1.0) * ell_over_L;
    if (denom == 0.0)
        throw CadDivergenceError(
            "shift_linear: zero dispersion denominator (critically anomalous dispersion); "
            "use the self-consistent solver");
    return dw0 / denom;
}

double length_to_dw0(const CavityConfig& cfg, double dL) {
    return -cfg.omega_lock * dL / cfg.length_L;
}

ShiftResult solve_shift(const CavityConfig& cfg, const MediumSpec& medium, double dw0) {
    medium.validate();
    require_lock_matches_center(cfg, medium);
    require_below_threshold(cfg, medium);
    const ShiftEquation eq(cfg, medium);
    return solve_seeded(cfg, medium, eq, dw0, 0.0, false);
}

namespace {

ShiftScanResult scan_impl(const CavityConfig& cfg, const MediumSpec& medium,
                          std::span<const double> dw0_grid) {
    medium.validate();
    require_lock_matches_center(cfg, medium);
    require_below_threshold(cfg, medium);

    std::vector<double> grid(dw0_grid.begin(), dw0_grid.end());
    std::sort(grid.begin(), grid.end());

    const ShiftEquation eq(cfg, medium);
    const double band = dispersion_bandwidth(medium);

    // March outward from zero on each side, seeding from the neighbor; stop a
    // side once the loaded shift leaves the dispersion bandwidth.
    std::vector<ShiftResult> points;
    auto run_side = [&](bool positive) {
        double seed = 0.0;
        bool have_seed = false;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double dw0 = positive ? grid[i] : grid[grid.size() - 1 - i];
            if (positive ? dw0 <= 0.0 : dw0 >= 0.0) continue;
            ShiftResult r = have_seed ? solve_seeded(cfg, medium, eq, dw0, seed, true)
                                      : solve_seeded(cfg, medium, eq, dw0, 0.0, false);
            if (std::abs(r.dw0_prime) > band) break;  // range guard
            seed = r.dw0_prime;
            have_seed = true;
            points.push_back(r);
        }
    };
    run_side(true);
    run_side(false);
    for (const double dw0 : grid)
        if (dw0 == 0.0) points.push_back(solve_seeded(cfg, medium, eq, 0.0, 0.0, false));

    std::sort(points.begin(), points.end(),
              [](const ShiftResult& a, const ShiftResult& b) { return a.dw0 < b.dw0; });

    ShiftScanResult out;
    out.points = std::move(points);
    std::vector<double> xs, ys;
    for (const ShiftResult& r : out.points) {
        xs.push_back(r.dw0);
        ys.push_back(r.dw0_prime);
    }
    out.fitted_slope = fit_slope_through_origin(xs, ys);
    out.implied_S = 1.0 / out.fitted_slope;
    return out;
}

}  // namespace

ShiftScanResult scan_shift(const CavityConfig& cfg, const MediumSpec& medium,
                           std::span<const double> dw0_grid) {
    return scan_impl(cfg, medium, dw0_grid);
}

ShiftScanResult cad_enhancement_scan(const CavityConfig& cfg, const MediumSpec& medium,
                                     std::span<const double> dw0_grid) {
    if (medium.kind != MediumKind::RamanGainDual)
        throw ParameterError("cad_enhancement_scan: medium must be RamanGainDual");
    const double n_g = local_group_index(medium, cfg.omega_lock);
    if (!(n_g > -1.0 && n_g < 1.0))
        throw ParameterError(
            "cad_enhancement_scan: center group index must lie in (-1, 1)");
    return scan_impl(cfg, medium, dw0_grid);
}

}  // namespace ringsim
