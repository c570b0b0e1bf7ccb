#include "quadwg/scattering.hpp"

#include "quadwg/errors.hpp"
#include "quadwg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace quadwg {

namespace {

constexpr double kPi = std::numbers::pi;

Direction flip(Direction d)
{
    return d == Direction::Plus ? Direction::Minus : Direction::Plus;
}

// ∫ g(ω̄) dω̄ over the real line for integrands that mix a pulse profile with
// the emitter line.
double line_integral(const RealFn& g, const Profile& f, const Coupling& c)
{
    const double inf = std::numeric_limits<double>::infinity();
    const auto points =
        quad::merge_points(quad::panel_points(f.center(), f.scale(), -inf, inf),
                           quad::panel_points(c.omega0(), 0.5 * c.total_rate(), -inf, inf));
    return quad::integrate_panels(g, points);
}

Complex bilinear(const GridState& g, DirectionPair ch, double omegabar, double delta)
{
    const Axis& x = g.grid.omegabar();
    const Axis& y = g.grid.delta();
    const double s = (omegabar - x.start) / x.step;
    const double t = (delta - y.start) / y.step;
    if (s < 0.0 || t < 0.0 || s > static_cast<double>(x.count - 1) ||
        t > static_cast<double>(y.count - 1)) {
        return {};
    }
    const auto i = std::min(static_cast<std::size_t>(s), x.count - 2);
    const auto j = std::min(static_cast<std::size_t>(t), y.count - 2);
    const double a = s - static_cast<double>(i);
    const double b = t - static_cast<double>(j);
    const Field2D& c = g.channel(ch);
    return (1 - a) * (1 - b) * c(i, j) + a * (1 - b) * c(i + 1, j) + (1 - a) * b * c(i, j + 1) +
           a * b * c(i + 1, j + 1);
}

GridState scatter_grid(const Coupling& coupling, const GridState& in, bool finite_limit,
                       std::vector<std::string>& warnings)
{
    const auto& grid = in.grid;
    const DiscreteEnvelope u = discretize(coupling.envelope(), grid.delta());
    std::array<std::vector<Complex>, 4> proj;
    for (auto ch : kAllPairs) {
        auto p = project_on_envelope(in, coupling.envelope(), ch, {finite_limit});
        if (warnings.empty()) {
            warnings = p.warnings;
        }
        proj[ch.index()] = std::move(p.values);
    }
    GridState out = in;
    const std::size_t nb = grid.omegabar().count;
    const std::size_t nd = grid.delta().count;
    for (auto mu : kAllPairs) {
        Field2D& c = out.channel(mu);
        for (std::size_t i = 0; i < nb; ++i) {
            const double wb = grid.omegabar()[i];
            Complex s{};
            for (auto a : kAllPairs) {
                s += theta(coupling, mu, a, wb) * proj[a.index()][i];
            }
            for (std::size_t j = 0; j < nd; ++j) {
                if (finite_limit && grid.delta()[j] > wb) {
                    break;
                }
                c(i, j) += std::conj(u.values[j]) * s;
            }
        }
    }
    return out;
}

std::string describe(const BiphotonState& input)
{
    if (const auto* s = std::get_if<SeparableState>(&input)) {
        return "separable " + s->channel.label() + " f=" + s->f.label() + " h=" + s->h.label();
    }
    const auto& g = std::get<GridState>(input).grid;
    char buf[96];
    std::snprintf(buf, sizeof buf, "grid %zux%zu", g.omegabar().count, g.delta().count);
    return buf;
}

}  // namespace

Complex theta(const Coupling& c, DirectionPair out, DirectionPair in, double omegabar)
{
    const double g = std::sqrt(c.rate(in) * c.rate(out));
    return -g / Complex(0.5 * c.total_rate(), c.omega0() - omegabar);
}

Complex chi(const Coupling& c, DirectionPair out, DirectionPair in, double omegabar)
{
    return (out == in ? 1.0 : 0.0) + theta(c, out, in, omegabar);
}

Complex SeparableScatter::amplitude(DirectionPair ch, double omegabar, double delta) const
{
    const Complex f = input.f(omegabar);
    Complex a = std::conj(coupling.envelope()(delta)) *
                theta(coupling, ch, input.channel, omegabar) * overlap * f;
    if (ch == input.channel) {
        a += f * input.h(delta);
    }
    return a;
}

Complex ScatterOutput::amplitude(DirectionPair ch, double omegabar, double delta) const
{
    if (const auto* s = std::get_if<SeparableScatter>(&output)) {
        return s->amplitude(ch, omegabar, delta);
    }
    return bilinear(std::get<GridState>(output), ch, omegabar, delta);
}

GridState ScatterOutput::on_grid(const FrequencyGrid& grid) const
{
    GridState g(grid);
    const std::size_t nb = grid.omegabar().count;
    const std::size_t nd = grid.delta().count;
    if (const auto* s = std::get_if<SeparableScatter>(&output)) {
        std::vector<Complex> f(nb), h(nd), u(nd);
        for (std::size_t i = 0; i < nb; ++i) {
            f[i] = s->input.f(grid.omegabar()[i]);
        }
        for (std::size_t j = 0; j < nd; ++j) {
            h[j] = s->input.h(grid.delta()[j]);
            u[j] = std::conj(s->coupling.envelope()(grid.delta()[j]));
        }
        for (auto ch : kAllPairs) {
            Field2D& c = g.channel(ch);
            const bool same = ch == s->input.channel;
            for (std::size_t i = 0; i < nb; ++i) {
                const Complex k =
                    theta(s->coupling, ch, s->input.channel, grid.omegabar()[i]) * s->overlap * f[i];
                for (std::size_t j = 0; j < nd; ++j) {
                    c(i, j) = u[j] * k + (same ? f[i] * h[j] : Complex{});
                }
            }
        }
        return g;
    }
    for (auto ch : kAllPairs) {
        Field2D& c = g.channel(ch);
        for (std::size_t i = 0; i < nb; ++i) {
            for (std::size_t j = 0; j < nd; ++j) {
                c(i, j) = amplitude(ch, grid.omegabar()[i], grid.delta()[j]);
            }
        }
    }
    return g;
}

ScatterOutput scatter(const Coupling& coupling, const BiphotonState& input,
                      const ScatterOptions& opts)
{
    const auto* sep = std::get_if<SeparableState>(&input);
    if (!sep && opts.grid) {
        throw Error(ErrorKind::UnsupportedConfiguration,
                    "grid inputs are scattered on their own grid");
    }
    if (sep && !opts.grid) {
        if (opts.finite_delta_limit) {
            throw Error(ErrorKind::UnsupportedConfiguration,
                        "the finite Δ ≤ ω̄ limit needs a grid; set ScatterOptions::grid");
        }
        if (!(norm2(*sep) > 0.0)) {
            throw Error(ErrorKind::InvalidInput, "input state has zero norm");
        }
        ScatterOutput out{
            SeparableScatter{coupling, *sep, envelope_overlap(coupling.envelope(), sep->h)},
            describe(input)};
        out.warnings = coupling.warnings();
        return out;
    }

    const GridState in = sep ? sample(*sep, *opts.grid) : std::get<GridState>(input);
    if (!(norm2(in) > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "input state has zero norm");
    }
    std::vector<std::string> w;
    ScatterOutput out{scatter_grid(coupling, in, opts.finite_delta_limit, w), describe(input)};
    out.warnings = coupling.warnings();
    out.warnings.insert(out.warnings.end(), w.begin(), w.end());
    return out;
}

double ChannelProbabilities::R() const
{
    return p[DirectionPair{flip(input.first), flip(input.second)}.index()];
}

double ChannelProbabilities::S() const
{
    const DirectionPair reversed{flip(input.first), flip(input.second)};
    double s = 0.0;
    for (auto ch : kAllPairs) {
        if (!(ch == input) && !(ch == reversed)) {
            s += p[ch.index()];
        }
    }
    return s;
}

ChannelProbabilities channel_probabilities(const ScatterOutput& out, const BiphotonState& input)
{
    ChannelProbabilities probs;
    if (const auto* s = std::get_if<SeparableScatter>(&out.output)) {
        probs.input = s->input.channel;
        const double nf = full_line_norm2(s->input.f);
        const double nh = half_line_norm2(s->input.h);
        const double q2 = std::norm(s->overlap);
        const double mass = s->coupling.envelope().half_line_mass(
            std::numeric_limits<double>::infinity());
        for (auto ch : kAllPairs) {
            const bool same = ch == s->input.channel;
            const RealFn g = [&](double wb) {
                const Complex th = theta(s->coupling, ch, s->input.channel, wb);
                const double a = std::norm(th) * mass + (same ? 2.0 * th.real() : 0.0);
                return std::norm(s->input.f(wb)) * a;
            };
            const double scattered = q2 * line_integral(g, s->input.f, s->coupling);
            probs.p[ch.index()] = ((same ? nf * nh : 0.0) + scattered) / (nf * nh);
        }
        return probs;
    }
    const GridState& g = std::get<GridState>(out.output);
    double in_norm = 0.0;
    if (const auto* sep = std::get_if<SeparableState>(&input)) {
        probs.input = sep->channel;
        in_norm = norm2(sample(*sep, g.grid));
    } else {
        const auto& gin = std::get<GridState>(input);
        in_norm = norm2(gin);
        double best = -1.0;
        for (auto ch : kAllPairs) {
            const double n = channel_norm2(gin, ch);
            if (n > best) {
                best = n;
                probs.input = ch;
            }
        }
    }
    if (!(in_norm > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "input state has zero norm");
    }
    for (auto ch : kAllPairs) {
        probs.p[ch.index()] = channel_norm2(g, ch) / in_norm;
    }
    return probs;
}

ScatteringBounds bounds(const Coupling& c)
{
    const double G = c.total_rate();
    const double r = 4.0 * c.rate(DirectionPair::pp) * c.rate(DirectionPair::mm) / (G * G);
    const double s = 8.0 * c.rate(DirectionPair::pp) * c.rate(DirectionPair::mp) / (G * G);
    return {r, s, 1.0 - r - s};
}

SeparableState gaussian_pair_input(double alpha, double omega1, double omega2)
{
    return {DirectionPair::pp, Profile::gaussian(omega1 + omega2, alpha),
            Profile::half_gaussian(alpha, omega1 - omega2)};
}

double gaussian_pair_overlap(double beta, double alpha, double center)
{
    // u h = A exp(-Δ²/(4β²) - (Δ - c)²/(4α²)); complete the square in Δ.
    const double A = std::pow(2.0 / (kPi * beta * beta), 0.25) *
                     std::pow(2.0 / (kPi * alpha * alpha), 0.25);
    const double a = 1.0 / (4.0 * beta * beta) + 1.0 / (4.0 * alpha * alpha);
    const double m = center / (4.0 * alpha * alpha * a);
    const double shift = std::exp(-center * center / (4.0 * (alpha * alpha + beta * beta)));
    return A * shift * 0.5 * std::sqrt(kPi / a) * std::erfc(-m * std::sqrt(a));
}

ScatterOutput gaussian_closed_form(const Coupling& coupling, double alpha, double omega1,
                                   double omega2, const FrequencyGrid& grid)
{
    const Envelope& env = coupling.envelope();
    if (env.kind() != EnvelopeKind::Gaussian) {
        throw Error(ErrorKind::UnsupportedConfiguration,
                    "the closed form needs a Gaussian envelope");
    }
    if (!(alpha > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "input width must be positive");
    }
    const double beta = env.width();
    const double c = omega1 + omega2;
    const double dc = omega1 - omega2;
    const double K = gaussian_pair_overlap(beta, alpha, dc);
    const double fa = std::pow(1.0 / (2.0 * kPi * alpha * alpha), 0.25);
    const double ha = std::pow(2.0 / (kPi * alpha * alpha), 0.25);
    const double ua = std::pow(2.0 / (kPi * beta * beta), 0.25);

    GridState g(grid);
    const std::size_t nb = grid.omegabar().count;
    const std::size_t nd = grid.delta().count;
    for (auto ch : kAllPairs) {
        Field2D& out = g.channel(ch);
        const double gg = std::sqrt(coupling.rate(ch) * coupling.rate(DirectionPair::pp));
        const bool same = ch == DirectionPair::pp;
        for (std::size_t i = 0; i < nb; ++i) {
            const double wb = grid.omegabar()[i];
            const double f = fa * std::exp(-(wb - c) * (wb - c) / (4.0 * alpha * alpha));
            const Complex k =
                -gg * K * f / Complex(0.5 * coupling.total_rate(), coupling.omega0() - wb);
            for (std::size_t j = 0; j < nd; ++j) {
                const double d = grid.delta()[j];
                Complex v = ua * std::exp(-d * d / (4.0 * beta * beta)) * k;
                if (same) {
                    v += f * ha * std::exp(-(d - dc) * (d - dc) / (4.0 * alpha * alpha));
                }
                out(i, j) = v;
            }
        }
    }
    ScatterOutput out{std::move(g), "gaussian pair"};
    out.warnings = coupling.warnings();
    if (auto w = truncation_warning(env, grid)) {
        out.warnings.push_back(*w);
    }
    return out;
}

ReflectionTable reflection_sweep(double alpha, const std::vector<double>& beta_over_alpha,
                                 const std::vector<double>& Gammas, double omega0,
                                 unsigned threads)
{
    ReflectionTable t{alpha, beta_over_alpha, Gammas, {}};
    t.reflection.assign(Gammas.size(), std::vector<double>(beta_over_alpha.size()));
    const std::size_t cols = beta_over_alpha.size();
    const SeparableState in = gaussian_pair_input(alpha, 0.5 * omega0, 0.5 * omega0);
    parallel_for(Gammas.size() * cols, threads, [&](std::size_t k) {
        const std::size_t r = k / cols;
        const std::size_t l = k % cols;
        const auto c =
            Coupling::isotropic(Gammas[r], Envelope::gaussian(alpha * beta_over_alpha[l]), omega0);
        const auto out = scatter(c, in);
        t.reflection[r][l] = channel_probabilities(out, in)[DirectionPair::mm];
    });
    return t;
}

}  // namespace quadwg
