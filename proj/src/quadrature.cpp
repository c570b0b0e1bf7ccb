#include "quadwg/quadrature.hpp"

#include "quadwg/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace quadwg::quad {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

// Boost 1.74 compares the unscaled [-1, 1] error estimate against a tolerance
// in the caller's units, so finite panels are mapped onto [0, 1] first.
template <class T, class F>
T gk(const F& f, double a, double b, const Options& opts, double* l1 = nullptr)
{
    if (a == b) {
        return T{};
    }
    double error = 0.0;
    T value{};
    const unsigned depth = l1 ? 0u : opts.max_depth;
    if (std::isfinite(a) && std::isfinite(b)) {
        const double w = b - a;
        auto g = [&](double t) { return f(a + w * t) * w; };
        value = GK::integrate(g, 0.0, 1.0, depth, opts.tolerance, &error, l1);
    } else {
        value = GK::integrate(f, a, b, depth, opts.tolerance, &error, l1);
    }
    if (!std::isfinite(std::abs(value))) {
        throw Error(ErrorKind::IntegrationFailure, "non-finite integral");
    }
    return value;
}

// Sum over panels with a tolerance relative to the total L1 mass: a cheap
// first pass measures each panel, then panels carrying a small share of the
// mass get a proportionally looser relative tolerance. Tail panels whose
// integrand sits near underflow would otherwise recurse to max depth.
template <class T, class F>
T panel_sum(const F& f, std::span<const double> points, const Options& opts)
{
    const std::size_t n = points.size() < 2 ? 0 : points.size() - 1;
    std::vector<double> mass(n, 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (points[k] == points[k + 1]) {
            continue;
        }
        double l1 = 0.0;
        gk<T>(f, points[k], points[k + 1], opts, &l1);
        mass[k] = std::isfinite(l1) ? l1 : 0.0;
        total += mass[k];
    }
    T sum{};
    for (std::size_t k = 0; k < n; ++k) {
        if (mass[k] == 0.0 && total > 0.0) {
            continue;
        }
        Options local = opts;
        if (mass[k] > 0.0) {
            local.tolerance = std::min(0.1, opts.tolerance * std::max(1.0, total / mass[k]));
        }
        sum += gk<T>(f, points[k], points[k + 1], local);
    }
    if (!std::isfinite(std::abs(sum))) {
        throw Error(ErrorKind::IntegrationFailure, "non-finite integral");
    }
    return sum;
}

}  // namespace

std::vector<double> panel_points(double center, double scale, double lo, double hi)
{
    constexpr double kSteps[] = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 512.0};
    std::vector<double> points;
    points.push_back(lo);
    auto add = [&](double x) {
        if (x > lo && x < hi) {
            points.push_back(x);
        }
    };
    add(center);
    for (double s : kSteps) {
        add(center - s * scale);
        add(center + s * scale);
    }
    points.push_back(hi);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

std::vector<double> merge_points(std::vector<double> a, const std::vector<double>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

Complex integrate(const ComplexFn& f, double a, double b, const Options& opts)
{
    return gk<Complex>(f, a, b, opts);
}

double integrate(const RealFn& f, double a, double b, const Options& opts)
{
    return gk<double>(f, a, b, opts);
}

Complex integrate_panels(const ComplexFn& f, std::span<const double> breakpoints,
                         const Options& opts)
{
    return panel_sum<Complex>(f, breakpoints, opts);
}

Complex integrate_around(const ComplexFn& f, double center, double scale, double lo, double hi,
                         const Options& opts)
{
    if (!(scale > 0.0)) {
        throw Error(ErrorKind::IntegrationFailure, "quadrature scale must be positive");
    }
    const auto points = panel_points(center, scale, lo, hi);
    return integrate_panels(f, points, opts);
}

double integrate_around(const RealFn& f, double center, double scale, double lo, double hi,
                        const Options& opts)
{
    if (!(scale > 0.0)) {
        throw Error(ErrorKind::IntegrationFailure, "quadrature scale must be positive");
    }
    const auto points = panel_points(center, scale, lo, hi);
    return panel_sum<double>(f, points, opts);
}

double integrate_panels(const RealFn& f, std::span<const double> breakpoints,
                        const Options& opts)
{
    return panel_sum<double>(f, breakpoints, opts);
}

Complex trapezoid(std::span<const Complex> values, double step)
{
    const std::size_t n = values.size();
    if (n < 2) {
        return Complex{};
    }
    Complex sum{};
    for (std::size_t i = 0; i < n; ++i) {
        sum += values[i] * trapezoid_weight(i, n, step);
    }
    return sum;
}

double trapezoid(std::span<const double> values, double step)
{
    const std::size_t n = values.size();
    if (n < 2) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += values[i] * trapezoid_weight(i, n, step);
    }
    return sum;
}

}  // namespace quadwg::quad
