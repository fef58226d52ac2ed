#include "ringsim/numerics.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "ringsim/errors.hpp"

namespace ringsim {

Bracket Bracket::make(const std::function<double(double)>& f, double lo, double hi) {
    return Bracket{lo, hi, f(lo), f(hi)};
}

double find_root(const std::function<double(double)>& f, Bracket b, double tol_x) {
    if (!(b.lo < b.hi))
        throw ParameterError("find_root: bracket lo must be < hi");
    if (!(b.f_lo * b.f_hi <= 0.0) || std::isnan(b.f_lo) || std::isnan(b.f_hi))
        throw ParameterError("find_root: no sign change across bracket");
    if (!(tol_x > 0.0))
        throw ParameterError("find_root: tol_x must be positive");

    if (b.f_lo == 0.0) return b.lo;
    if (b.f_hi == 0.0) return b.hi;

    double lo = b.lo, hi = b.hi, f_lo = b.f_lo, f_hi = b.f_hi;
    for (int iter = 0; iter < 200; ++iter) {
        if (hi - lo <= tol_x) break;

        // Secant estimate, accepted only when it lands safely inside the
        // bracket; bisection otherwise keeps the 200-iteration guarantee.
        double mid = 0.5 * (lo + hi);
        double x = mid;
        double denom = f_hi - f_lo;
        if (denom != 0.0) {
            double sec = lo - f_lo * (hi - lo) / denom;
            double margin = 0.01 * (hi - lo);
            if (sec > lo + margin && sec < hi - margin) x = sec;
        }

        double fx = f(x);
        if (fx == 0.0) return x;
        if (f_lo * fx < 0.0) {
            hi = x;
            f_hi = fx;
        } else {
            lo = x;
            f_lo = fx;
        }

        // A stalled secant sequence can pin one endpoint; force a bisection
        // step whenever the interval failed to shrink by at least 1/4.
        if (hi - lo > 0.75 * (b.hi - b.lo) && iter > 4) {
            double m = 0.5 * (lo + hi);
            double fm = f(m);
            if (fm == 0.0) return m;
            if (f_lo * fm < 0.0) {
                hi = m;
                f_hi = fm;
            } else {
                lo = m;
                f_lo = fm;
            }
        }
        b.hi = hi;
        b.lo = lo;
    }
    return 0.5 * (lo + hi);
}

namespace {

// x of the vertex of the parabola through three points.
double parabola_vertex(double x1, double y1, double x2, double y2, double x3, double y3,
                       double* y_vertex) {
    const double d21 = x2 - x1, d32 = x3 - x2, d31 = x3 - x1;
    const double s21 = (y2 - y1) / d21;
    const double s32 = (y3 - y2) / d32;
    const double curv = (s32 - s21) / d31;  // second divided difference
    if (curv == 0.0) {
        if (y_vertex) *y_vertex = y2;
        return x2;
    }
    const double xv = 0.5 * (x1 + x2 - s21 / curv);
    if (y_vertex) *y_vertex = y1 + s21 * (xv - x1) + curv * (xv - x1) * (xv - x2);
    return xv;
}

}  // namespace

PeakEstimate extract_peak(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    if (n != ys.size() || n < 3)
        throw ParameterError("extract_peak: need matching arrays of length >= 3");
    for (std::size_t i = 1; i < n; ++i)
        if (!(xs[i] > xs[i - 1]))
            throw ParameterError("extract_peak: xs must be strictly increasing");

    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (ys[i] > ys[imax]) imax = i;
    if (imax == 0)
        throw PeakExtractionError("extract_peak: maximum on left boundary");
    if (imax == n - 1)
        throw PeakExtractionError("extract_peak: maximum on right boundary");

    double height = 0.0;
    double center = parabola_vertex(xs[imax - 1], ys[imax - 1], xs[imax], ys[imax],
                                     xs[imax + 1], ys[imax + 1], &height);
    // The refined vertex must stay within the cell of the discrete maximum.
    if (!(center >= xs[imax - 1] && center <= xs[imax + 1]) || !(height >= ys[imax])) {
        center = xs[imax];
        height = ys[imax];
    }
    const double half = 0.5 * height;

    // Walk outward from the peak to the first sample at or below half max;
    // linear interpolation on that segment gives the crossing.
    double left = 0.0;
    {
        std::size_t j = imax;
        while (j > 0 && ys[j] > half) --j;
        if (ys[j] > half)
            throw PeakExtractionError("extract_peak: no half-max crossing on left side");
        left = xs[j] + (half - ys[j]) * (xs[j + 1] - xs[j]) / (ys[j + 1] - ys[j]);
    }
    double right = 0.0;
    {
        std::size_t j = imax;
        while (j < n - 1 && ys[j] > half) ++j;
        if (ys[j] > half)
            throw PeakExtractionError("extract_peak: no half-max crossing on right side");
        right = xs[j - 1] + (half - ys[j - 1]) * (xs[j] - xs[j - 1]) / (ys[j] - ys[j - 1]);
    }

    return PeakEstimate{center, height, right - left, left, right};
}

double fit_slope_through_origin(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw ParameterError("fit_slope_through_origin: need matching non-empty arrays");
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += xs[i] * ys[i];
        sxx += xs[i] * xs[i];
    }
    if (sxx == 0.0)
        throw ParameterError("fit_slope_through_origin: all xs are zero (degenerate fit)");
    return sxy / sxx;
}

}  // namespace ringsim
