#pragma once

#include <span>
#include <vector>

#include "ringsim/cavity.hpp"
#include "ringsim/medium.hpp"

namespace ringsim {

struct ShiftResult {
    double dw0 = 0.0;              // empty-cavity resonance shift (input)
    double dw0_prime_linear = 0.0; // linear prediction dw0 / S_linear
    double dw0_prime = 0.0;        // self-consistent solution
    double n_g_eff = 1.0;          // effective group index at the solution
    double n_g_local = 1.0;        // local group index at omega_lock + dw0_prime
    double S_linear = 1.0;         // 1 + (n_g - 1) * l/L at the lock point
    double residual = 0.0;         // |x*(1 + (n_g_eff(x)-1)*l/L) - dw0| at the solution
    bool fold = false;             // continuation crossed a non-monotonic stretch
};

struct ShiftScanResult {
    std::vector<ShiftResult> points;  // ascending in dw0; truncated by the range guard
    double fitted_slope = 1.0;        // origin-constrained fit of dw0_prime vs dw0
    double implied_S = 1.0;           // 1 / fitted_slope
};

// Linear sensitivity reduction dw0 / [1 + (n_g - 1) * ell_over_L].
// Throws CadDivergenceError on a zero denominator.
double shift_linear(double n_g, double ell_over_L, double dw0);

// First-order resonance shift for a cavity length change: -omega_lock * dL / L.
double length_to_dw0(const CavityConfig& cfg, double dL);

// Solve x * [1 + (n_g_eff(x) - 1) * l/L] = dw0 for the loaded-cavity shift x.
// The root is tracked by continuation from dw0 = 0 (physically continuous
// branch); a fold encountered along the way sets the fold flag instead of
// failing. Absolute tolerance 2*pi*10 Hz on the fixed-point residual.
// Throws SolverError when no root exists within half a free spectral range.
ShiftResult solve_shift(const CavityConfig& cfg, const MediumSpec& medium, double dw0);

// solve_shift over a grid, marching outward from zero on each side and
// seeding each point with its neighbor. Points whose |dw0_prime| exceeds the
// medium's dispersion bandwidth are dropped along with everything further
// out on that side. The slope fit runs over the retained points.
ShiftScanResult scan_shift(const CavityConfig& cfg, const MediumSpec& medium,
                           std::span<const double> dw0_grid);

// scan_shift specialized to the anomalous-dispersion regime: requires a
// dual-peak gain medium with center group index in (-1, 1) and reports the
// same scan (fitted slope > 1 signals enhancement).
ShiftScanResult cad_enhancement_scan(const CavityConfig& cfg, const MediumSpec& medium,
                                     std::span<const double> dw0_grid);

}  // namespace ringsim
