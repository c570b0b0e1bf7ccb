#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace quadwg {

using Complex = std::complex<double>;
using ComplexFn = std::function<Complex(double)>;
using RealFn = std::function<double(double)>;

namespace quad {

struct Options {
    /// Relative to the integral (or, over several panels, to their L1 total).
    double tolerance = 1e-12;
    unsigned max_depth = 15;
};

/// Adaptive 15-point Gauss–Kronrod on [a, b]; either bound may be infinite.
Complex integrate(const ComplexFn& f, double a, double b, const Options& opts = {});
double integrate(const RealFn& f, double a, double b, const Options& opts = {});

/// Sums adaptive integrals over consecutive panels [b0,b1], [b1,b2], ...
/// The tolerance applies to the total, weighted by each panel's L1 share.
Complex integrate_panels(const ComplexFn& f, std::span<const double> breakpoints,
                         const Options& opts = {});
double integrate_panels(const RealFn& f, std::span<const double> breakpoints,
                        const Options& opts = {});

/// Integral over [lo, hi] (possibly infinite) of a function concentrated around
/// `center` with characteristic width `scale`. Panels are refined geometrically
/// around the center so narrow peaks on wide intervals are not missed.
Complex integrate_around(const ComplexFn& f, double center, double scale, double lo,
                         double hi, const Options& opts = {});
double integrate_around(const RealFn& f, double center, double scale, double lo, double hi,
                        const Options& opts = {});

/// Breakpoints on [lo, hi] refined geometrically around `center`.
std::vector<double> panel_points(double center, double scale, double lo, double hi);
/// Sorted union of breakpoint sets.
std::vector<double> merge_points(std::vector<double> a, const std::vector<double>& b);

/// Composite trapezoid with uniform spacing.
Complex trapezoid(std::span<const Complex> values, double step);
double trapezoid(std::span<const double> values, double step);

/// Weight of sample i in an n-point composite trapezoid rule.
inline double trapezoid_weight(std::size_t i, std::size_t n, double step)
{
    return (i == 0 || i + 1 == n) ? 0.5 * step : step;
}

}  // namespace quad
}  // namespace quadwg
