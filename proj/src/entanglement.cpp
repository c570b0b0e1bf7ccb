#include "quadwg/entanglement.hpp"

#include "quadwg/emission.hpp"
#include "quadwg/errors.hpp"
#include "quadwg/parallel.hpp"
#include "quadwg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace quadwg {

namespace {

// Pair amplitude of the + photon at w and the - photon at wp.
Complex pair_amplitude(const Coupling& c, double w, double wp)
{
    return emitted_amplitude(c, w + wp, std::abs(wp - w), DirectionPair::pm);
}

Complex box_average(const Coupling& c, double w, double wp, double width)
{
    quad::Options opts;
    opts.tolerance = 1e-10;
    const double h = 0.5 * width;
    auto inner = [&](double x) {
        auto row = [&](double y) { return pair_amplitude(c, x, y); };
        return quad::integrate(row, wp - h, wp + h, opts);
    };
    return quad::integrate(inner, w - h, w + h, opts) / (width * width);
}

double xlog2x(double x)
{
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

}  // namespace

FilterPair FilterPair::symmetric(double omega0, double delta)
{
    FilterPair f{0.5 * omega0 - delta, 0.5 * omega0 + delta};
    f.validate();
    return f;
}

void FilterPair::validate() const
{
    if (!(omega_a > 0.0) || !(omega_b >= omega_a) || !std::isfinite(omega_b)) {
        throw Error(ErrorKind::InvalidInput, "filters need 0 < omega_a <= omega_b");
    }
}

double TwoQubitState::norm2() const
{
    return std::norm(aa) + std::norm(ab) + std::norm(ba) + std::norm(bb);
}

TwoQubitState TwoQubitState::normalized() const
{
    const double n = std::sqrt(norm2());
    return {aa / n, ab / n, ba / n, bb / n};
}

TwoQubitState TwoQubitState::times(Complex phase) const
{
    return {aa * phase, ab * phase, ba * phase, bb * phase};
}

TwoQubitState TwoQubitState::swapped_relabelled() const
{
    // u(i, j) = s(j̄, ī).
    return {bb, ab, ba, aa};
}

TwoQubitState postselect_filtered_state(const Coupling& c, const FilterPair& filters,
                                        const FilterOptions& opts)
{
    filters.validate();
    if (c.rate(DirectionPair::pm) <= 0.0) {
        throw Error(ErrorKind::InvalidCoupling, "post-selection needs a nonzero (+-) rate");
    }
    if (opts.box_width && !(*opts.box_width > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "filter box width must be positive");
    }
    auto amp = [&](double w, double wp) {
        return opts.box_width ? box_average(c, w, wp, *opts.box_width) : pair_amplitude(c, w, wp);
    };
    const double a = filters.omega_a;
    const double b = filters.omega_b;
    TwoQubitState s;
    s.aa = amp(a, a);
    if (!filters.degenerate()) {
        s.ab = amp(a, b);
        s.ba = amp(b, a);
        s.bb = amp(b, b);
    }
    const double largest = std::max({std::abs(s.aa), std::abs(s.ab), std::abs(s.ba), std::abs(s.bb)});
    if (!(largest >= 1e-300)) {
        throw Error(ErrorKind::EmptyPostselection, "all filtered amplitudes vanish");
    }
    // Rescale first so the norm does not underflow.
    return TwoQubitState{s.aa / largest, s.ab / largest, s.ba / largest, s.bb / largest}.normalized();
}

std::array<double, 2> reduced_eigenvalues(const TwoQubitState& s)
{
    // ρ1 = M M† with M = [[aa, ab], [ba, bb]].
    const double p = std::norm(s.aa) + std::norm(s.ab);
    const double q = std::norm(s.ba) + std::norm(s.bb);
    const Complex off = s.aa * std::conj(s.ba) + s.ab * std::conj(s.bb);
    const double mean = 0.5 * (p + q);
    const double disc = std::hypot(0.5 * (p - q), std::abs(off));
    // The smaller root from the determinant avoids cancellation.
    const double det = std::norm(s.aa * s.bb - s.ab * s.ba);
    const double hi = mean + disc;
    const double lo = hi > 0.0 ? det / hi : 0.0;
    return {hi, std::max(lo, 0.0)};
}

double entanglement_entropy(const TwoQubitState& s)
{
    const auto ev = reduced_eigenvalues(s);
    return std::clamp(-(xlog2x(ev[0]) + xlog2x(ev[1])), 0.0, 1.0);
}

double bell_fidelity(const TwoQubitState& s, BellTarget target)
{
    const double r = std::numbers::sqrt2 / 2.0;
    const Complex overlap =
        target == BellTarget::PsiMinus ? r * (s.aa - s.bb) : r * (s.ab + s.ba);
    return std::norm(overlap);
}

EntropySweeps entropy_sweeps(double Gamma, const std::vector<double>& delta_over_Gamma,
                             const std::vector<double>& beta_over_Gamma,
                             double fixed_beta_over_Gamma, double fixed_delta_over_Gamma,
                             const FilterOptions& opts, unsigned threads)
{
    EntropySweeps out{Gamma, fixed_beta_over_Gamma, fixed_delta_over_Gamma, {}, {}};
    auto row = [&](double x, double beta_ratio, double delta_ratio) {
        const auto c = Coupling::isotropic(Gamma, Envelope::lorentzian(beta_ratio * Gamma));
        const auto s = postselect_filtered_state(c, FilterPair::symmetric(c.omega0(), delta_ratio * Gamma), opts);
        return EntropyRow{x, entanglement_entropy(s), bell_fidelity(s, BellTarget::PsiMinus),
                          bell_fidelity(s, BellTarget::PhiPlus)};
    };
    out.vs_delta.resize(delta_over_Gamma.size());
    parallel_for(delta_over_Gamma.size(), threads, [&](std::size_t k) {
        const double d = delta_over_Gamma[k];
        out.vs_delta[k] = row(d, fixed_beta_over_Gamma, d);
    });
    out.vs_beta.resize(beta_over_Gamma.size());
    parallel_for(beta_over_Gamma.size(), threads, [&](std::size_t k) {
        const double b = beta_over_Gamma[k];
        out.vs_beta[k] = row(b, b, fixed_delta_over_Gamma);
    });
    return out;
}

}  // namespace quadwg
