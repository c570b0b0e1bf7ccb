#include "quadwg/spectral.hpp"

#include "quadwg/errors.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace quadwg {

namespace {

constexpr double kPi = std::numbers::pi;
const double kFwhmPerSigma = 2.0 * std::sqrt(2.0 * std::log(2.0));

void require_positive_width(double beta)
{
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw Error(ErrorKind::InvalidEnvelope, "envelope width must be positive and finite");
    }
}

// Trapezoid mass of |v|² on the sampled abscissae, clipped to [lo, hi].
// |v|² is treated as piecewise linear, matching the tabulated norm.
double piecewise_mass(const std::vector<double>& x, const std::vector<Complex>& v, double lo,
                      double hi)
{
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
        const double a = std::max(x[k], lo);
        const double b = std::min(x[k + 1], hi);
        if (b <= a) {
            continue;
        }
        const double fa = std::norm(v[k]);
        const double fb = std::norm(v[k + 1]);
        const double span = x[k + 1] - x[k];
        auto at = [&](double t) { return fa + (fb - fa) * (t - x[k]) / span; };
        total += 0.5 * (at(a) + at(b)) * (b - a);
    }
    return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// DirectionPair

std::string DirectionPair::label() const
{
    std::string s;
    s += first == Direction::Plus ? '+' : '-';
    s += second == Direction::Plus ? '+' : '-';
    return s;
}

DirectionPair DirectionPair::parse(const std::string& label)
{
    auto dir = [&](char c) {
        if (c == '+' || c == 'p') {
            return Direction::Plus;
        }
        if (c == '-' || c == 'm') {
            return Direction::Minus;
        }
        throw Error(ErrorKind::Config, "direction pair must look like ++, +-, -+ or --: " + label);
    };
    if (label.size() != 2) {
        throw Error(ErrorKind::Config, "direction pair must look like ++, +-, -+ or --: " + label);
    }
    return {dir(label[0]), dir(label[1])};
}

// ---------------------------------------------------------------------------
// Envelope

Envelope Envelope::gaussian(double beta)
{
    require_positive_width(beta);
    Envelope e;
    e.kind_ = EnvelopeKind::Gaussian;
    e.width_ = beta;
    e.amplitude_ = std::pow(2.0 / (kPi * beta * beta), 0.25);
    return e;
}

Envelope Envelope::lorentzian(double beta)
{
    require_positive_width(beta);
    Envelope e;
    e.kind_ = EnvelopeKind::Lorentzian;
    e.width_ = beta;
    e.amplitude_ = std::sqrt(beta / kPi);
    return e;
}

Envelope Envelope::gaussian_with_fwhm(double fwhm)
{
    return gaussian(fwhm / kFwhmPerSigma);
}

Envelope Envelope::lorentzian_with_fwhm(double fwhm)
{
    return lorentzian(fwhm);
}

Envelope Envelope::tabulated(std::vector<double> deltas, std::vector<Complex> values)
{
    if (deltas.size() < 2 || deltas.size() != values.size()) {
        throw Error(ErrorKind::InvalidEnvelope, "tabulated envelope needs at least two samples");
    }
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        if (!std::isfinite(deltas[k]) || !std::isfinite(std::abs(values[k]))) {
            throw Error(ErrorKind::InvalidEnvelope, "tabulated envelope has non-finite samples");
        }
        if (k > 0 && !(deltas[k] > deltas[k - 1])) {
            throw Error(ErrorKind::InvalidEnvelope, "tabulated abscissae must increase strictly");
        }
    }
    Envelope e;
    e.kind_ = EnvelopeKind::Tabulated;
    e.deltas_ = std::move(deltas);
    e.values_ = std::move(values);
    if (e.deltas_.front() == 0.0) {
        e.half_line_ = true;
    } else if (e.deltas_.front() > 0.0) {
        throw Error(ErrorKind::InvalidEnvelope,
                    "tabulated envelope must start at 0 (half line) or cover negative Δ");
    } else {
        double peak = 0.0;
        for (const auto& v : e.values_) {
            peak = std::max(peak, std::abs(v));
        }
        for (std::size_t k = 0; k < e.deltas_.size(); ++k) {
            const Complex mirror = e.tabulated_value(-e.deltas_[k]);
            if (std::abs(mirror - e.values_[k]) > 1e-9 * std::max(peak, 1e-300)) {
                throw Error(ErrorKind::InvalidEnvelope, "tabulated envelope is not even in Δ");
            }
        }
    }
    const double inf = std::numeric_limits<double>::infinity();
    double norm = piecewise_mass(e.deltas_, e.values_, -inf, inf);
    if (e.half_line_) {
        norm *= 2.0;
    }
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw Error(ErrorKind::InvalidEnvelope, "tabulated envelope has zero or infinite norm");
    }
    const double rescale = std::sqrt(2.0 / norm);
    for (auto& v : e.values_) {
        v *= rescale;
    }
    e.width_ = e.fwhm();
    return e;
}

Complex Envelope::tabulated_value(double delta) const
{
    const double x = half_line_ ? std::abs(delta) : delta;
    if (x < deltas_.front() || x > deltas_.back()) {
        return {};
    }
    const auto it = std::upper_bound(deltas_.begin(), deltas_.end(), x);
    if (it == deltas_.end()) {
        return values_.back();
    }
    const std::size_t k = static_cast<std::size_t>(it - deltas_.begin()) - 1;
    const double t = (x - deltas_[k]) / (deltas_[k + 1] - deltas_[k]);
    return values_[k] + t * (values_[k + 1] - values_[k]);
}

Complex Envelope::operator()(double delta) const
{
    switch (kind_) {
    case EnvelopeKind::Gaussian:
        return amplitude_ * std::exp(-delta * delta / (4.0 * width_ * width_));
    case EnvelopeKind::Lorentzian:
        return amplitude_ / std::sqrt(width_ * width_ / 4.0 + delta * delta);
    case EnvelopeKind::Tabulated:
        return tabulated_value(delta);
    }
    return {};
}

double Envelope::fwhm() const
{
    switch (kind_) {
    case EnvelopeKind::Gaussian:
        return kFwhmPerSigma * width_;
    case EnvelopeKind::Lorentzian:
        return width_;
    case EnvelopeKind::Tabulated:
        break;
    }
    // Half-maximum crossings of |u|², linear between bracketing samples.
    const std::size_t n = deltas_.size();
    std::size_t peak = 0;
    for (std::size_t k = 1; k < n; ++k) {
        if (std::norm(values_[k]) > std::norm(values_[peak])) {
            peak = k;
        }
    }
    const double half = 0.5 * std::norm(values_[peak]);
    auto crossing = [&](std::size_t inside, std::size_t outside) {
        const double fi = std::norm(values_[inside]);
        const double fo = std::norm(values_[outside]);
        const double t = (fi - half) / (fi - fo);
        return deltas_[inside] + t * (deltas_[outside] - deltas_[inside]);
    };
    double right = deltas_.back();
    for (std::size_t k = peak; k + 1 < n; ++k) {
        if (std::norm(values_[k + 1]) < half) {
            right = crossing(k, k + 1);
            break;
        }
    }
    if (half_line_) {
        return 2.0 * right;
    }
    double left = deltas_.front();
    for (std::size_t k = peak; k > 0; --k) {
        if (std::norm(values_[k - 1]) < half) {
            left = crossing(k, k - 1);
            break;
        }
    }
    return right - left;
}

double Envelope::half_line_mass(double delta_max) const
{
    if (delta_max <= 0.0) {
        return 0.0;
    }
    switch (kind_) {
    case EnvelopeKind::Gaussian:
        return std::erf(delta_max / (std::sqrt(2.0) * width_));
    case EnvelopeKind::Lorentzian:
        return std::isinf(delta_max) ? 1.0 : 2.0 / kPi * std::atan(2.0 * delta_max / width_);
    case EnvelopeKind::Tabulated:
        break;
    }
    return piecewise_mass(deltas_, values_, 0.0, delta_max);
}

double Envelope::mass_radius(double fraction) const
{
    if (!(fraction > 0.0)) {
        return 0.0;
    }
    if (fraction >= 1.0) {
        return kind_ == EnvelopeKind::Tabulated ? deltas_.back()
                                                : std::numeric_limits<double>::infinity();
    }
    switch (kind_) {
    case EnvelopeKind::Gaussian:
        return std::sqrt(2.0) * width_ * boost::math::erf_inv(fraction);
    case EnvelopeKind::Lorentzian:
        return 0.5 * width_ * std::tan(0.5 * kPi * fraction);
    case EnvelopeKind::Tabulated:
        break;
    }
    double lo = 0.0;
    double hi = deltas_.back();
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (half_line_mass(mid) >= fraction ? hi : lo) = mid;
    }
    return hi;
}

double Envelope::scale() const
{
    return kind_ == EnvelopeKind::Tabulated ? std::max(0.5 * width_, 1e-300) : width_;
}

std::string Envelope::describe() const
{
    char buf[96];
    switch (kind_) {
    case EnvelopeKind::Gaussian:
        std::snprintf(buf, sizeof buf, "gaussian(beta=%.6g)", width_);
        break;
    case EnvelopeKind::Lorentzian:
        std::snprintf(buf, sizeof buf, "lorentzian(beta=%.6g)", width_);
        break;
    case EnvelopeKind::Tabulated:
        std::snprintf(buf, sizeof buf, "tabulated(n=%zu, fwhm=%.6g)", deltas_.size(), width_);
        break;
    }
    return buf;
}

double envelope_norm(const Envelope& env)
{
    double norm = 0.0;
    if (env.kind() == EnvelopeKind::Tabulated) {
        norm = 2.0 * env.half_line_mass(std::numeric_limits<double>::infinity());
    } else {
        const RealFn density = [&](double d) { return std::norm(env(d)); };
        norm = 2.0 * quad::integrate_around(density, 0.0, env.scale(), 0.0,
                                            std::numeric_limits<double>::infinity());
    }
    if (!std::isfinite(norm)) {
        throw Error(ErrorKind::InvalidEnvelope, "envelope norm is not finite");
    }
    return norm;
}

Complex eval_envelope(const Envelope& env, double delta)
{
    return env(delta);
}

// ---------------------------------------------------------------------------
// Coupling

Coupling::Coupling(std::array<double, 4> rates, Envelope envelope, double omega0)
    : rates_(rates), envelope_(std::move(envelope)), omega0_(omega0)
{
    for (double r : rates_) {
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw Error(ErrorKind::InvalidCoupling, "rates must be finite and non-negative");
        }
    }
    const double cross = std::max(rates_[1], rates_[2]);
    if (std::abs(rates_[1] - rates_[2]) > 1e-12 * std::max(cross, 1e-300)) {
        throw Error(ErrorKind::InvalidCoupling, "rate matrix must satisfy γ^{+-} = γ^{-+}");
    }
    if (!(total_rate() > 0.0)) {
        throw Error(ErrorKind::InvalidCoupling, "total rate Γ must be positive");
    }
    if (!(omega0_ > 0.0) || !std::isfinite(omega0_)) {
        throw Error(ErrorKind::InvalidCoupling, "emitter frequency must be positive");
    }
}

Coupling Coupling::isotropic(double Gamma, Envelope envelope, double omega0)
{
    const double g = Gamma / 4.0;
    return {{g, g, g, g}, std::move(envelope), omega0};
}

Coupling Coupling::chiral(double Gamma, Envelope envelope, double omega0)
{
    return {{Gamma, 0.0, 0.0, 0.0}, std::move(envelope), omega0};
}

Coupling Coupling::copropagating(double Gamma, Envelope envelope, double omega0)
{
    return {{Gamma / 2.0, 0.0, 0.0, Gamma / 2.0}, std::move(envelope), omega0};
}

double Coupling::total_rate() const
{
    return rates_[0] + rates_[1] + rates_[2] + rates_[3];
}

std::vector<std::string> Coupling::warnings() const
{
    std::vector<std::string> out;
    const double ratio = total_rate() / omega0_;
    if (ratio > 0.05) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "Gamma/omega0 = %.3g exceeds 0.05; the Markov approximation may fail", ratio);
        out.emplace_back(buf);
    }
    return out;
}

double total_rate(const Coupling& c)
{
    return c.total_rate();
}

// ---------------------------------------------------------------------------
// Grids

Axis Axis::uniform(double lo, double hi, std::size_t n)
{
    if (n < 2 || !(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw Error(ErrorKind::InvalidGrid, "axis needs at least two points on a finite interval");
    }
    return {lo, (hi - lo) / static_cast<double>(n - 1), n};
}

FrequencyGrid::FrequencyGrid(Axis omegabar, Axis delta) : omegabar_(omegabar), delta_(delta)
{
    for (const Axis* a : {&omegabar_, &delta_}) {
        if (a->count < 2 || !(a->step > 0.0) || !std::isfinite(a->step)) {
            throw Error(ErrorKind::InvalidGrid, "grid axes need two or more increasing samples");
        }
    }
    if (delta_.start != 0.0) {
        throw Error(ErrorKind::InvalidGrid, "the Δ axis must start at 0");
    }
}

FrequencyGrid FrequencyGrid::make(double omegabar_lo, double omegabar_hi, std::size_t n_omegabar,
                                  double delta_max, std::size_t n_delta)
{
    return {Axis::uniform(omegabar_lo, omegabar_hi, n_omegabar),
            Axis::uniform(0.0, delta_max, n_delta)};
}

FrequencyGrid FrequencyGrid::defaults(const Coupling& coupling, double input_width,
                                      std::size_t n_omegabar, std::size_t n_delta)
{
    const double G = coupling.total_rate();
    const double w0 = coupling.omega0();
    const double width = std::max(input_width, coupling.envelope().scale());
    return make(w0 - 20.0 * G, w0 + 20.0 * G, n_omegabar, 10.0 * width, n_delta);
}

// ---------------------------------------------------------------------------
// Profiles

Profile::Profile(ComplexFn fn, double center, double scale, std::string label)
    : fn_(std::move(fn)), center_(center), scale_(scale), label_(std::move(label))
{
    if (!fn_) {
        throw Error(ErrorKind::InvalidInput, "profile function is empty");
    }
    if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
        throw Error(ErrorKind::InvalidInput, "profile scale must be positive");
    }
}

Profile Profile::gaussian(double center, double sigma)
{
    if (!(sigma > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "pulse width must be positive");
    }
    const double a = std::pow(1.0 / (2.0 * kPi * sigma * sigma), 0.25);
    return {[=](double x) {
                const double d = x - center;
                return Complex(a * std::exp(-d * d / (4.0 * sigma * sigma)), 0.0);
            },
            center, sigma, "gaussian"};
}

Profile Profile::half_gaussian(double sigma, double center)
{
    if (!(sigma > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "profile width must be positive");
    }
    const double a = std::pow(2.0 / (kPi * sigma * sigma), 0.25);
    return {[=](double x) {
                const double d = x - center;
                return Complex(a * std::exp(-d * d / (4.0 * sigma * sigma)), 0.0);
            },
            center, sigma, "half-gaussian"};
}

Profile Profile::matched(const Envelope& env)
{
    return {[env](double d) { return std::conj(env(d)); }, 0.0, env.scale(), "matched"};
}

Profile Profile::scaled(Complex factor) const
{
    auto fn = fn_;
    return {[fn, factor](double x) { return factor * fn(x); }, center_, scale_, label_};
}

Profile Profile::minus(const Profile& other, Complex factor) const
{
    auto a = fn_;
    auto b = other.fn_;
    return {[a, b, factor](double x) { return a(x) - factor * b(x); }, center_,
            std::min(scale_, other.scale_), label_ + "-" + other.label_};
}

double full_line_norm2(const Profile& p)
{
    const RealFn density = [&](double x) { return std::norm(p(x)); };
    const double inf = std::numeric_limits<double>::infinity();
    return quad::integrate_around(density, p.center(), p.scale(), -inf, inf);
}

double half_line_norm2(const Profile& p)
{
    const RealFn density = [&](double x) { return std::norm(p(x)); };
    const double inf = std::numeric_limits<double>::infinity();
    const auto points = quad::merge_points(quad::panel_points(0.0, p.scale(), 0.0, inf),
                                           quad::panel_points(p.center(), p.scale(), 0.0, inf));
    return quad::integrate_panels(density, points);
}

Complex envelope_overlap(const Envelope& env, const Profile& h, double upper)
{
    if (!(upper > 0.0)) {
        return {};
    }
    const ComplexFn integrand = [&](double d) { return env(d) * h(d); };
    const auto points =
        quad::merge_points(quad::panel_points(0.0, env.scale(), 0.0, upper),
                           quad::panel_points(h.center(), h.scale(), 0.0, upper));
    return quad::integrate_panels(integrand, points);
}

// ---------------------------------------------------------------------------
// States

GridState::GridState(FrequencyGrid g) : grid(g)
{
    for (auto& c : channels) {
        c = Field2D(grid.omegabar().count, grid.delta().count);
    }
}

double norm2(const SeparableState& state)
{
    return full_line_norm2(state.f) * half_line_norm2(state.h);
}

std::vector<double> channel_density(const GridState& state, DirectionPair ch)
{
    const auto& a = state.channel(ch).data;
    std::vector<double> d(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        d[k] = std::norm(a[k]);
    }
    return d;
}

double channel_norm2(const GridState& state, DirectionPair ch)
{
    const Field2D& c = state.channel(ch);
    double total = 0.0;
    for (std::size_t i = 0; i < c.rows; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < c.cols; ++j) {
            row += state.grid.delta().weight(j) * std::norm(c(i, j));
        }
        total += state.grid.omegabar().weight(i) * row;
    }
    return total;
}

double norm2(const GridState& state)
{
    double total = 0.0;
    for (auto p : kAllPairs) {
        total += channel_norm2(state, p);
    }
    return total;
}

double norm2(const BiphotonState& state)
{
    return std::visit([](const auto& s) { return norm2(s); }, state);
}

GridState sample(const SeparableState& state, const FrequencyGrid& grid)
{
    GridState out(grid);
    Field2D& c = out.channel(state.channel);
    std::vector<Complex> h(grid.delta().count);
    for (std::size_t j = 0; j < h.size(); ++j) {
        h[j] = state.h(grid.delta()[j]);
    }
    for (std::size_t i = 0; i < c.rows; ++i) {
        const Complex f = state.f(grid.omegabar()[i]);
        for (std::size_t j = 0; j < c.cols; ++j) {
            c(i, j) = f * h[j];
        }
    }
    return out;
}

std::optional<std::string> truncation_warning(const Envelope& env, const FrequencyGrid& grid)
{
    const double captured = env.half_line_mass(grid.delta().back());
    if (captured >= 0.999) {
        return std::nullopt;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "grid Δ range [0, %.4g] holds %.4f%% of the envelope mass (< 99.9%%)",
                  grid.delta().back(), 100.0 * captured);
    return std::string(buf);
}

// ---------------------------------------------------------------------------
// Projections

DiscreteEnvelope discretize(const Envelope& env, const Axis& delta)
{
    DiscreteEnvelope out;
    out.values.resize(delta.count);
    double mass = 0.0;
    for (std::size_t j = 0; j < delta.count; ++j) {
        out.values[j] = env(delta[j]);
        mass += delta.weight(j) * std::norm(out.values[j]);
    }
    if (!(mass > 0.0)) {
        throw Error(ErrorKind::Truncation, "envelope vanishes on the Δ axis");
    }
    const double rescale = 1.0 / std::sqrt(mass);
    for (auto& v : out.values) {
        v *= rescale;
    }
    out.captured_mass = mass;
    return out;
}

SeparableProjection project_on_envelope(const SeparableState& state, const Envelope& env,
                                        DirectionPair channel, const ProjectionOptions& opts)
{
    if (opts.finite_delta_limit) {
        throw Error(ErrorKind::UnsupportedConfiguration,
                    "the finite Δ ≤ ω̄ limit needs a grid state; sample the input first");
    }
    const bool active = channel == state.channel;
    return {state.f, active ? envelope_overlap(env, state.h) : Complex{}, active};
}

GridProjection project_on_envelope(const GridState& state, const Envelope& env,
                                   DirectionPair channel, const ProjectionOptions& opts)
{
    const auto& grid = state.grid;
    const DiscreteEnvelope u = discretize(env, grid.delta());
    GridProjection out;
    out.captured_mass = env.half_line_mass(grid.delta().back());
    if (auto w = truncation_warning(env, grid)) {
        out.warnings.push_back(*w);
    }
    const Field2D& c = state.channel(channel);
    out.values.assign(c.rows, Complex{});
    for (std::size_t i = 0; i < c.rows; ++i) {
        const double limit = opts.finite_delta_limit ? grid.omegabar()[i]
                                                     : std::numeric_limits<double>::infinity();
        Complex acc{};
        for (std::size_t j = 0; j < c.cols && grid.delta()[j] <= limit; ++j) {
            acc += grid.delta().weight(j) * u.values[j] * c(i, j);
        }
        out.values[i] = acc;
    }
    return out;
}

namespace {

Decomposition decompose_separable(const SeparableState& s, const Envelope& env,
                                  const ProjectionOptions& opts)
{
    const SeparableProjection p = project_on_envelope(s, env, s.channel, opts);
    const Profile matched = Profile::matched(env);
    return {SeparableState{s.channel, s.f.scaled(p.overlap), matched},
            SeparableState{s.channel, s.f, s.h.minus(matched, p.overlap)},
            {}};
}

Decomposition decompose_grid(const GridState& s, const Envelope& env,
                             const ProjectionOptions& opts)
{
    const auto& grid = s.grid;
    const DiscreteEnvelope u = discretize(env, grid.delta());
    GridState par(grid);
    GridState orth(grid);
    std::vector<std::string> warnings;
    for (auto ch : kAllPairs) {
        const GridProjection p = project_on_envelope(s, env, ch, opts);
        if (warnings.empty()) {
            warnings = p.warnings;
        }
        const Field2D& c = s.channel(ch);
        Field2D& a = par.channel(ch);
        Field2D& b = orth.channel(ch);
        for (std::size_t i = 0; i < c.rows; ++i) {
            for (std::size_t j = 0; j < c.cols; ++j) {
                a(i, j) = std::conj(u.values[j]) * p.values[i];
                b(i, j) = c(i, j) - a(i, j);
            }
        }
    }
    return {std::move(par), std::move(orth), std::move(warnings)};
}

}  // namespace

Decomposition decompose(const BiphotonState& state, const Envelope& env,
                        const ProjectionOptions& opts)
{
    if (const auto* s = std::get_if<SeparableState>(&state)) {
        return decompose_separable(*s, env, opts);
    }
    return decompose_grid(std::get<GridState>(state), env, opts);
}

// ---------------------------------------------------------------------------
// Correlation

double joint_correlation(const FrequencyGrid& grid, const std::vector<double>& density,
                         double core_level)
{
    const std::size_t nb = grid.omegabar().count;
    const std::size_t nd = grid.delta().count;
    if (density.size() != nb * nd) {
        throw Error(ErrorKind::InvalidInput, "density does not match the grid");
    }
    const double peak = *std::max_element(density.begin(), density.end());
    if (!(peak > 0.0)) {
        throw Error(ErrorKind::UndefinedCorrelation, "density vanishes everywhere");
    }
    const double cut = core_level * peak;
    // Mirroring Δ → -Δ makes E[Δ] = E[ω̄Δ] = 0, so only three moments are needed.
    double m0 = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    double d2 = 0.0;
    for (std::size_t i = 0; i < nb; ++i) {
        const double wb = grid.omegabar().weight(i);
        const double x = grid.omegabar()[i];
        for (std::size_t j = 0; j < nd; ++j) {
            const double rho = density[i * nd + j];
            if (rho < cut) {
                continue;
            }
            const double w = wb * grid.delta().weight(j) * rho;
            const double y = grid.delta()[j];
            m0 += w;
            m1 += w * x;
            m2 += w * x * x;
            d2 += w * y * y;
        }
    }
    const double var_bar = m2 / m0 - (m1 / m0) * (m1 / m0);
    const double var_delta = d2 / m0;
    // ω = (ω̄ - Δ)/2 and ω' = (ω̄ + Δ)/2 give cov/var = (Vω̄ - VΔ)/(Vω̄ + VΔ).
    const double denom = var_bar + var_delta;
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw Error(ErrorKind::UndefinedCorrelation, "joint density has no spread");
    }
    return (var_bar - var_delta) / denom;
}

}  // namespace quadwg
