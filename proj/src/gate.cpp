#include "quadwg/gate.hpp"

#include "quadwg/errors.hpp"
#include "quadwg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace quadwg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_fwhm(double fwhm)
{
    if (!(fwhm > 0.0) || !std::isfinite(fwhm)) {
        throw Error(ErrorKind::InvalidInput, "pulse FWHM must be positive and finite");
    }
}

// Crossing of the half-maximum on one side of the peak, by linear
// interpolation of `level(y)` between samples.
double half_crossing(const std::vector<double>& xs, const std::vector<double>& h, std::size_t peak,
                     int dir)
{
    const double half = 0.5 * h[peak];
    std::size_t k = peak;
    while (true) {
        if ((dir < 0 && k == 0) || (dir > 0 && k + 1 == xs.size())) {
            return xs[k];
        }
        const std::size_t next = dir < 0 ? k - 1 : k + 1;
        if (h[next] < half) {
            const double t = (h[k] - half) / (h[k] - h[next]);
            return xs[k] + t * (xs[next] - xs[k]);
        }
        k = next;
    }
}

}  // namespace

PulseShape PulseShape::gaussian(double center, double fwhm, FwhmOn on)
{
    check_fwhm(fwhm);
    PulseShape p;
    p.kind_ = Kind::Gaussian;
    p.center_ = center;
    p.fwhm_ = fwhm;
    // f = N exp(-ν²/(2s²)).
    const double ln2 = std::numbers::ln2;
    p.scale_ = on == FwhmOn::Amplitude ? fwhm / (2.0 * std::sqrt(2.0 * ln2)) : fwhm / (2.0 * std::sqrt(ln2));
    p.norm_ = std::sqrt(1.0 / (p.scale_ * std::sqrt(kPi)));
    return p;
}

PulseShape PulseShape::lorentzian(double center, double fwhm, FwhmOn on)
{
    check_fwhm(fwhm);
    PulseShape p;
    p.kind_ = Kind::Lorentzian;
    p.center_ = center;
    p.fwhm_ = fwhm;
    p.scale_ = on == FwhmOn::Amplitude ? 0.5 * fwhm : 0.5 * fwhm / std::sqrt(std::numbers::sqrt2 - 1.0);
    const double a = p.scale_;
    p.norm_ = std::sqrt(2.0 * a * a * a / kPi);
    return p;
}

PulseShape PulseShape::tabulated(std::vector<double> omegabar, std::vector<double> values, FwhmOn on)
{
    if (omegabar.size() != values.size() || omegabar.size() < 2) {
        throw Error(ErrorKind::InvalidInput, "tabulated pulse needs matching samples (at least two)");
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k]) || values[k] < 0.0 || !std::isfinite(omegabar[k])) {
            throw Error(ErrorKind::InvalidInput, "tabulated pulse values must be finite and non-negative");
        }
        if (k > 0 && !(omegabar[k] > omegabar[k - 1])) {
            throw Error(ErrorKind::InvalidInput, "tabulated pulse abscissae must increase");
        }
    }
    // ∫ f² of the piecewise-linear interpolant, exact.
    double mass = 0.0;
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        const double a = values[k], b = values[k + 1];
        mass += (omegabar[k + 1] - omegabar[k]) * (a * a + a * b + b * b) / 3.0;
    }
    if (!(mass > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "tabulated pulse has zero norm");
    }
    PulseShape p;
    p.kind_ = Kind::Tabulated;
    p.norm_ = 1.0 / std::sqrt(mass);
    const auto peak = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
    std::vector<double> level = values;
    if (on == FwhmOn::Density) {
        for (double& v : level) {
            v *= v;
        }
    }
    p.center_ = omegabar[peak];
    p.fwhm_ = half_crossing(omegabar, level, peak, +1) - half_crossing(omegabar, level, peak, -1);
    p.scale_ = p.fwhm_ > 0.0 ? 0.5 * p.fwhm_ : omegabar.back() - omegabar.front();
    p.xs_ = std::move(omegabar);
    p.ys_ = std::move(values);
    return p;
}

double PulseShape::operator()(double w) const
{
    const double nu = w - center_;
    switch (kind_) {
    case Kind::Gaussian:
        return norm_ * std::exp(-nu * nu / (2.0 * scale_ * scale_));
    case Kind::Lorentzian:
        return norm_ / (nu * nu + scale_ * scale_);
    case Kind::Tabulated: {
        if (w < xs_.front() || w > xs_.back()) {
            return 0.0;
        }
        const auto it = std::upper_bound(xs_.begin(), xs_.end(), w);
        const std::size_t k = it == xs_.end() ? xs_.size() - 2 : static_cast<std::size_t>(it - xs_.begin()) - 1;
        const double t = (w - xs_[k]) / (xs_[k + 1] - xs_[k]);
        return norm_ * ((1.0 - t) * ys_[k] + t * ys_[k + 1]);
    }
    }
    return 0.0;
}

std::pair<double, double> PulseShape::support() const
{
    if (kind_ == Kind::Tabulated) {
        return {xs_.front(), xs_.back()};
    }
    return {-kInf, kInf};
}

std::string PulseShape::name() const
{
    switch (kind_) {
    case Kind::Gaussian:
        return "gaussian";
    case Kind::Lorentzian:
        return "lorentzian";
    case Kind::Tabulated:
        return "tabulated";
    }
    return "?";
}

Complex mirror_bracket(double Gamma, double omega0, double omegabar)
{
    return 1.0 - Gamma / Complex(0.5 * Gamma, omega0 - omegabar);
}

ComplexFn mirror_reflection(const PulseShape& f, double Gamma, double omega0)
{
    return [f, Gamma, omega0](double w) { return f(w) * mirror_bracket(Gamma, omega0, w); };
}

Complex one_plus_overlap(const PulseShape& f, double Gamma, const GateOptions& opts)
{
    if (!(Gamma > 0.0)) {
        throw Error(ErrorKind::InvalidCoupling, "Gamma must be positive");
    }
    auto [lo, hi] = f.support();
    if (opts.window) {
        lo = std::max(lo, opts.window->first);
        hi = std::min(hi, opts.window->second);
        if (!(f.center() > lo && f.center() < hi)) {
            throw Error(ErrorKind::Truncation, "pulse centre lies outside the quadrature window");
        }
    }
    auto points = quad::merge_points(quad::panel_points(f.center(), f.scale(), lo, hi),
                                     quad::panel_points(opts.omega0, 0.5 * Gamma, lo, hi));
    if (opts.window) {
        auto density = [&](double w) { const double v = f(w); return v * v; };
        const double held = quad::integrate_panels(RealFn(density), points);
        if (held < 1.0 - 1e-9) {
            throw Error(ErrorKind::Truncation, "quadrature window cuts the pulse");
        }
    }
    const double h = 0.5 * Gamma;
    auto integrand = [&](double w) {
        const double v = f(w);
        const double x = opts.omega0 - w;
        return v * v * Complex(0.0, 2.0 * x) / Complex(h, x);
    };
    return quad::integrate_panels(ComplexFn(integrand), points);
}

Complex gate_overlap(const PulseShape& f, double Gamma, const GateOptions& opts)
{
    return one_plus_overlap(f, Gamma, opts) - 1.0;
}

WorstCase worst_case_from_shift(Complex q)
{
    const double q2 = std::norm(q);
    if (q2 == 0.0) {
        return {1.0, 1.0, 0.0};
    }
    const double x = std::clamp(q.real() / q2, 0.0, 1.0);
    const double infid = x * (2.0 * q.real() - x * q2);
    return {std::norm(1.0 - x * q), x, infid};
}

WorstCase worst_case_fidelity(Complex overlap)
{
    if (!(std::abs(overlap) <= 1.0 + 1e-6)) {
        throw Error(ErrorKind::InvalidOverlap, "overlap modulus exceeds one");
    }
    return worst_case_from_shift(1.0 + overlap);
}

GateReport evaluate_gate(const PulseShape& f, double Gamma, const GateOptions& opts)
{
    const Complex q = one_plus_overlap(f, Gamma, opts);
    const Complex o = q - 1.0;
    if (!(std::abs(o) <= 1.0 + 1e-6)) {
        throw Error(ErrorKind::InvalidOverlap, "overlap modulus exceeds one");
    }
    return {o, q, worst_case_from_shift(q)};
}

TwoPhotonModes beam_splitter(const TwoPhotonModes& in, double splitting, bool inverse)
{
    if (!(splitting >= 0.0 && splitting <= 1.0)) {
        throw Error(ErrorKind::InvalidInput, "splitting ratio must lie in [0, 1]");
    }
    const double t = std::sqrt(splitting);
    const double r = std::sqrt(1.0 - splitting);
    const Complex ir(0.0, inverse ? -r : r);
    // a† → m00 a† + m10 b†, b† → m01 a† + m11 b†.
    const Complex m00 = t, m10 = ir, m01 = ir, m11 = t;
    const double s = std::numbers::sqrt2;
    TwoPhotonModes out;
    out.n20 = in.n20 * m00 * m00 + s * in.n11 * m00 * m01 + in.n02 * m01 * m01;
    out.n11 = s * in.n20 * m00 * m10 + in.n11 * (m00 * m11 + m10 * m01) + s * in.n02 * m01 * m11;
    out.n02 = in.n20 * m10 * m10 + s * in.n11 * m10 * m11 + in.n02 * m11 * m11;
    return out;
}

TruthTable truth_table(const PulseShape& f, double Gamma, const GateOptions& opts)
{
    TruthTable tt;
    tt.overlap = gate_overlap(f, Gamma, opts);
    tt.single = {1.0, 1.0, 1.0};
    tt.split = beam_splitter({0.0, 1.0, 0.0}, opts.splitting);
    tt.reflected = {tt.split.n20 * tt.overlap, tt.split.n11, tt.split.n02 * tt.overlap};
    tt.output = beam_splitter(tt.reflected, opts.splitting, true);
    return tt;
}

std::vector<InfidelityRow> infidelity_sweep(const std::vector<double>& gamma_over_fwhm, double Gamma,
                                            FwhmOn on, const GateOptions& opts, unsigned threads)
{
    std::vector<InfidelityRow> rows(gamma_over_fwhm.size());
    parallel_for(rows.size(), threads, [&](std::size_t k) {
        const double ratio = gamma_over_fwhm[k];
        const double fwhm = Gamma / ratio;
        rows[k] = {ratio, evaluate_gate(PulseShape::gaussian(opts.omega0, fwhm, on), Gamma, opts),
                   evaluate_gate(PulseShape::lorentzian(opts.omega0, fwhm, on), Gamma, opts)};
    });
    return rows;
}

std::vector<double> logspace(double lo, double hi, std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = n > 1 ? static_cast<double>(k) / static_cast<double>(n - 1) : 0.0;
        v[k] = std::pow(10.0, lo + (hi - lo) * t);
    }
    return v;
}

}  // namespace quadwg
