#pragma once

#include <functional>
#include <span>

namespace ringsim {

// Sign-change interval: lo < hi and f_lo * f_hi <= 0.
struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;

    static Bracket make(const std::function<double(double)>& f, double lo, double hi);
};

// Derivative-free root finding: secant steps safeguarded by bisection.
// Localizes a sign change of f to an interval of width <= tol_x in at most
// 200 iterations. Throws ParameterError on an invalid bracket.
double find_root(const std::function<double(double)>& f, Bracket bracket, double tol_x);

struct PeakEstimate {
    double center;
    double height;
    double fwhm;
    double left_cross;
    double right_cross;
};

// Peak center/height from a parabola through the three samples around the
// discrete maximum; half-max crossings by linear interpolation on each
// flank, walking outward from the peak. The window must hold a single
// interior maximum with both crossings in range; throws PeakExtractionError
// naming the failing side otherwise.
PeakEstimate extract_peak(std::span<const double> xs, std::span<const double> ys);

// Least-squares slope of y = s*x (no intercept): sum(xy)/sum(x^2).
// Throws ParameterError when fewer than 1 point or all xs are zero.
double fit_slope_through_origin(std::span<const double> xs, std::span<const double> ys);

}  // namespace ringsim
