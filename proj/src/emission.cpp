#include "quadwg/emission.hpp"

#include "quadwg/errors.hpp"
#include "quadwg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace quadwg {

namespace {

constexpr double kPi = std::numbers::pi;

// Fraction of the emitter line Γ²/4/(Γ²/4 + ν²) mass inside [lo, hi].
double line_fraction(double Gamma, double omega0, double lo, double hi)
{
    const double h = 0.5 * Gamma;
    return (std::atan((hi - omega0) / h) - std::atan((lo - omega0) / h)) / kPi;
}

}  // namespace

Complex excited_amplitude(const Coupling& c, double t)
{
    return std::exp(Complex(-0.5 * c.total_rate() * t, -c.omega0() * t));
}

Complex emitted_amplitude(const Coupling& c, double omegabar, double delta, DirectionPair ch)
{
    const double g = std::sqrt(c.rate(ch) / (2.0 * kPi));
    const Complex pole(0.5 * c.total_rate(), -(omegabar - c.omega0()));
    return Complex(0.0, -g) * std::conj(c.envelope()(delta)) / pole;
}

double emitted_density(const Coupling& c, double omegabar, double delta)
{
    const double G = c.total_rate();
    const double nu = omegabar - c.omega0();
    return G / (2.0 * kPi) * std::norm(c.envelope()(delta)) / (0.25 * G * G + nu * nu);
}

std::vector<double> EmissionSpectrum::density() const
{
    std::vector<double> d(grid.size(), 0.0);
    for (auto ch : kAllPairs) {
        const auto& a = amplitude.channel(ch).data;
        for (std::size_t k = 0; k < d.size(); ++k) {
            d[k] += std::norm(a[k]);
        }
    }
    return d;
}

std::vector<double> EmissionSpectrum::density(DirectionPair ch) const
{
    return channel_density(amplitude, ch);
}

EmissionSpectrum joint_spectrum(const Coupling& c, const FrequencyGrid& grid, unsigned threads)
{
    EmissionSpectrum s{grid, GridState(grid), 0.0, 0.0, 0.0, 0.0, {}};
    s.warnings = c.warnings();
    const Axis& wb = grid.omegabar();
    const Axis& dl = grid.delta();

    std::vector<Complex> u(dl.count);
    for (std::size_t j = 0; j < dl.count; ++j) {
        u[j] = std::conj(c.envelope()(dl[j]));
    }
    std::array<double, 4> g{};
    for (auto ch : kAllPairs) {
        g[ch.index()] = std::sqrt(c.rate(ch) / (2.0 * kPi));
    }
    std::vector<double> row_mass(wb.count, 0.0);
    std::vector<double> row_peak(wb.count, 0.0);
    parallel_for(wb.count, threads, [&](std::size_t i) {
        const Complex lor = Complex(0.0, -1.0) / Complex(0.5 * c.total_rate(), -(wb[i] - c.omega0()));
        double mass = 0.0;
        double peak = 0.0;
        for (std::size_t j = 0; j < dl.count; ++j) {
            double d = 0.0;
            for (auto ch : kAllPairs) {
                const Complex a = g[ch.index()] * lor * u[j];
                s.amplitude.channel(ch)(i, j) = a;
                d += std::norm(a);
            }
            mass += dl.weight(j) * d;
            peak = std::max(peak, d);
        }
        row_mass[i] = mass;
        row_peak[i] = peak;
    });
    for (std::size_t i = 0; i < wb.count; ++i) {
        s.grid_probability += wb.weight(i) * row_mass[i];
        s.peak_density = std::max(s.peak_density, row_peak[i]);
    }

    const double lf = line_fraction(c.total_rate(), c.omega0(), wb[0], wb.back());
    const double ef = c.envelope().half_line_mass(dl.back());
    s.window_mass = lf * ef;
    s.total_probability = s.grid_probability + (1.0 - s.window_mass);
    char buf[160];
    if (lf < 0.999) {
        std::snprintf(buf, sizeof buf,
                      "ω̄ window holds %.4f%% of the emission line; the remainder is added "
                      "analytically",
                      100.0 * lf);
        s.warnings.emplace_back(buf);
    }
    if (auto w = truncation_warning(c.envelope(), grid)) {
        s.warnings.push_back(*w);
    }
    return s;
}

double spectrum_correlation(const EmissionSpectrum& spec, double core_level)
{
    return joint_correlation(spec.grid, spec.density(), core_level);
}

double rank_one_residual(const std::vector<double>& m, std::size_t rows, std::size_t cols)
{
    if (m.size() != rows * cols || rows == 0 || cols == 0) {
        throw Error(ErrorKind::InvalidInput, "matrix shape mismatch");
    }
    // Start from the column sums, which overlap the leading right vector for
    // non-negative matrices.
    std::vector<double> v(cols, 0.0);
    std::vector<double> w(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            v[j] += m[i * cols + j];
        }
    }
    auto normalize = [](std::vector<double>& x) {
        double n = 0.0;
        for (double e : x) {
            n += e * e;
        }
        n = std::sqrt(n);
        if (n > 0.0) {
            for (double& e : x) {
                e /= n;
            }
        }
        return n;
    };
    if (normalize(v) == 0.0) {
        throw Error(ErrorKind::InvalidInput, "matrix has zero column sums");
    }
    double sigma = 0.0;
    for (int it = 0; it < 200; ++it) {
        for (std::size_t i = 0; i < rows; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < cols; ++j) {
                acc += m[i * cols + j] * v[j];
            }
            w[i] = acc;
        }
        normalize(w);
        std::vector<double> next(cols, 0.0);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                next[j] += m[i * cols + j] * w[i];
            }
        }
        const double s = normalize(next);
        double change = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            change = std::max(change, std::abs(next[j] - v[j]));
        }
        v.swap(next);
        sigma = s;
        if (change < 1e-15) {
            break;
        }
    }
    if (!(sigma > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "matrix is zero");
    }
    double resid = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double r = m[i * cols + j] - sigma * w[i] * v[j];
            resid += r * r;
        }
    }
    return std::sqrt(resid) / sigma;
}

}  // namespace quadwg
