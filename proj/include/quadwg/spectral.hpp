#pragma once

// Domain types shared by every module: direction pairs, the coupling envelope
// u(Δ), the rate matrix, uniform (ω̄, Δ) grids and biphoton amplitudes.
//
// Frequencies are angular and expressed in units of the emitter frequency
// (ω0 = 1 unless a coupling says otherwise). Biphoton amplitudes are stored on
// the half plane Δ ≥ 0; the Δ < 0 half follows from C(ω̄, Δ) = C(ω̄, -Δ), so
// every plane integral reads ∫dω̄ ∫_0^∞ dΔ.

#include "quadwg/quadrature.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace quadwg {

enum class Direction { Plus, Minus };

struct DirectionPair {
    Direction first = Direction::Plus;
    Direction second = Direction::Plus;

    static const DirectionPair pp;
    static const DirectionPair pm;
    static const DirectionPair mp;
    static const DirectionPair mm;

    /// ++ -> 0, +- -> 1, -+ -> 2, -- -> 3.
    constexpr std::size_t index() const
    {
        return (first == Direction::Minus ? 2u : 0u) + (second == Direction::Minus ? 1u : 0u);
    }
    static constexpr DirectionPair from_index(std::size_t i)
    {
        return {(i & 2u) ? Direction::Minus : Direction::Plus,
                (i & 1u) ? Direction::Minus : Direction::Plus};
    }
    constexpr DirectionPair swapped() const { return {second, first}; }

    std::string label() const;  // "++", "+-", "-+", "--"
    static DirectionPair parse(const std::string& label);

    friend constexpr bool operator==(DirectionPair, DirectionPair) = default;
};

inline constexpr DirectionPair DirectionPair::pp{Direction::Plus, Direction::Plus};
inline constexpr DirectionPair DirectionPair::pm{Direction::Plus, Direction::Minus};
inline constexpr DirectionPair DirectionPair::mp{Direction::Minus, Direction::Plus};
inline constexpr DirectionPair DirectionPair::mm{Direction::Minus, Direction::Minus};

inline constexpr std::array<DirectionPair, 4> kAllPairs = {
    DirectionPair::pp, DirectionPair::pm, DirectionPair::mp, DirectionPair::mm};

// ---------------------------------------------------------------------------
// Envelope

enum class EnvelopeKind { Gaussian, Lorentzian, Tabulated };

/// Difference-frequency profile u(Δ) of the coupling, even in Δ and
/// normalized so that ∫_{-∞}^{∞} |u|² dΔ = 2 (unit mass on the half line).
class Envelope {
public:
    /// |u|² is a normal density shape with variance β² (per unit mass 2).
    static Envelope gaussian(double beta);
    /// |u|² = (1/π) β / (β²/4 + Δ²); β is the FWHM of |u|².
    static Envelope lorentzian(double beta);
    /// Same shapes, parametrized by the FWHM of |u|².
    static Envelope gaussian_with_fwhm(double fwhm);
    static Envelope lorentzian_with_fwhm(double fwhm);

    /// Linear interpolation between samples, zero outside the sampled range.
    /// Samples starting at Δ = 0 are half-line data evaluated at |Δ|; samples
    /// reaching Δ < 0 must already be even. Renormalized to full-line mass 2
    /// (trapezoid rule on |u|² samples).
    static Envelope tabulated(std::vector<double> deltas, std::vector<Complex> values);

    Complex operator()(double delta) const;

    EnvelopeKind kind() const { return kind_; }
    /// β for analytic kinds; FWHM of |u|² for tabulated data.
    double width() const { return width_; }
    /// FWHM of |u(Δ)|² on the full Δ line.
    double fwhm() const;
    /// Mass ∫_0^{delta_max} |u|² dΔ (unit when delta_max → ∞).
    double half_line_mass(double delta_max) const;
    /// Smallest Δ with half_line_mass(Δ) ≥ fraction.
    double mass_radius(double fraction) const;
    /// Characteristic scale used to place quadrature panels.
    double scale() const;

    std::string describe() const;

private:
    Envelope() = default;
    Complex tabulated_value(double delta) const;

    EnvelopeKind kind_ = EnvelopeKind::Gaussian;
    double width_ = 1.0;
    double amplitude_ = 1.0;  // analytic prefactor
    std::vector<double> deltas_;
    std::vector<Complex> values_;
    bool half_line_ = false;
};

double envelope_norm(const Envelope& env);
Complex eval_envelope(const Envelope& env, double delta);

// ---------------------------------------------------------------------------
// Coupling

/// Direction-rate matrix γ^{μμ'} (symmetric), emitter frequency and envelope.
class Coupling {
public:
    Coupling(std::array<double, 4> rates, Envelope envelope, double omega0 = 1.0);

    static Coupling isotropic(double Gamma, Envelope envelope, double omega0 = 1.0);
    /// Only γ^{++} non-zero: an emitter terminating a semi-infinite waveguide.
    static Coupling chiral(double Gamma, Envelope envelope, double omega0 = 1.0);
    /// γ^{++} = γ^{--} = Γ/2, no splitting channel.
    static Coupling copropagating(double Gamma, Envelope envelope, double omega0 = 1.0);

    double rate(DirectionPair p) const { return rates_[p.index()]; }
    const std::array<double, 4>& rates() const { return rates_; }
    const Envelope& envelope() const { return envelope_; }
    double omega0() const { return omega0_; }
    /// Γ = Σ γ^{μμ'}.
    double total_rate() const;

    /// Γ/ω0 above 0.05 leaves the Markov regime.
    std::vector<std::string> warnings() const;

    Coupling with_envelope(Envelope env) const { return {rates_, std::move(env), omega0_}; }

private:
    std::array<double, 4> rates_;
    Envelope envelope_;
    double omega0_;
};

double total_rate(const Coupling& c);

// ---------------------------------------------------------------------------
// Grids

struct Axis {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 0;

    static Axis uniform(double lo, double hi, std::size_t n);
    double operator[](std::size_t i) const { return start + step * static_cast<double>(i); }
    double back() const { return (*this)[count - 1]; }
    double weight(std::size_t i) const { return quad::trapezoid_weight(i, count, step); }
};

/// Uniform grid in the sum frequency ω̄ and the non-negative difference Δ.
class FrequencyGrid {
public:
    FrequencyGrid(Axis omegabar, Axis delta);

    static FrequencyGrid make(double omegabar_lo, double omegabar_hi, std::size_t n_omegabar,
                              double delta_max, std::size_t n_delta);
    /// ω̄ ∈ [ω0 - 20Γ, ω0 + 20Γ], Δ ∈ [0, 10·max(input_width, β)], 2048 × 1024.
    static FrequencyGrid defaults(const Coupling& coupling, double input_width = 0.0,
                                  std::size_t n_omegabar = 2048, std::size_t n_delta = 1024);

    const Axis& omegabar() const { return omegabar_; }
    const Axis& delta() const { return delta_; }
    std::size_t size() const { return omegabar_.count * delta_.count; }
    /// Trapezoid weight of point (i, j) for ∫dω̄∫_0 dΔ.
    double weight(std::size_t i, std::size_t j) const
    {
        return omegabar_.weight(i) * delta_.weight(j);
    }

private:
    Axis omegabar_;
    Axis delta_;
};

/// (ω, ω') of a half-plane point: ω = (ω̄ - Δ)/2, ω' = (ω̄ + Δ)/2.
struct FrequencyPair {
    double omega;
    double omega_prime;
};
inline FrequencyPair to_frequency_pair(double omegabar, double delta)
{
    return {0.5 * (omegabar - delta), 0.5 * (omegabar + delta)};
}

/// Row-major complex array over a FrequencyGrid (row = ω̄ index).
struct Field2D {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Complex> data;

    Field2D() = default;
    Field2D(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
    Complex& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    bool empty() const { return data.empty(); }
};

// ---------------------------------------------------------------------------
// Biphoton amplitudes

/// A complex function of one frequency with hints for quadrature: the
/// function is concentrated around `center` on a scale `scale`.
class Profile {
public:
    Profile(ComplexFn fn, double center, double scale, std::string label = "custom");

    /// Unit-norm pulse on the full line whose |p|² is normal(center, σ²).
    static Profile gaussian(double center, double sigma);
    /// Δ-profile (2/(πσ²))^{1/4} exp(-(Δ - center)²/(4σ²)); unit mass on
    /// [0, ∞) when center = 0.
    static Profile half_gaussian(double sigma, double center = 0.0);
    /// h(Δ) = u(Δ)*, the profile matched to an envelope.
    static Profile matched(const Envelope& env);

    Complex operator()(double x) const { return fn_(x); }
    double center() const { return center_; }
    double scale() const { return scale_; }
    const std::string& label() const { return label_; }
    const ComplexFn& function() const { return fn_; }

    Profile scaled(Complex factor) const;
    /// this - factor · other.
    Profile minus(const Profile& other, Complex factor) const;

private:
    ComplexFn fn_;
    double center_;
    double scale_;
    std::string label_;
};

/// Integral of |p|² over the full line (ω̄ profiles).
double full_line_norm2(const Profile& p);
/// Integral of |p|² over [0, ∞) (Δ profiles).
double half_line_norm2(const Profile& p);
/// Bilinear overlap ∫_0^{upper} u(Δ) h(Δ) dΔ.
Complex envelope_overlap(const Envelope& env, const Profile& h,
                         double upper = std::numeric_limits<double>::infinity());

/// C^{channel}(ω̄, Δ) = f(ω̄) h(Δ); other channels vanish.
struct SeparableState {
    DirectionPair channel;
    Profile f;
    Profile h;

    Complex amplitude(DirectionPair ch, double omegabar, double delta) const
    {
        return ch == channel ? f(omegabar) * h(delta) : Complex{};
    }
};

/// Amplitudes of all four channels on a grid.
struct GridState {
    FrequencyGrid grid;
    std::array<Field2D, 4> channels;

    explicit GridState(FrequencyGrid g);
    Field2D& channel(DirectionPair p) { return channels[p.index()]; }
    const Field2D& channel(DirectionPair p) const { return channels[p.index()]; }
};

using BiphotonState = std::variant<SeparableState, GridState>;

/// Σ_{μμ'} ∫dω̄ ∫_0^∞ dΔ |C^{μμ'}|².
double norm2(const BiphotonState& state);
double norm2(const SeparableState& state);
double norm2(const GridState& state);
/// Trapezoid mass of a single grid channel.
double channel_norm2(const GridState& state, DirectionPair ch);
/// |C|² of one channel, row-major over the grid.
std::vector<double> channel_density(const GridState& state, DirectionPair ch);

GridState sample(const SeparableState& state, const FrequencyGrid& grid);

/// Warning text when the grid Δ-range holds less than 99.9 % of |u|² mass.
std::optional<std::string> truncation_warning(const Envelope& env, const FrequencyGrid& grid);

struct ProjectionOptions {
    /// Restrict Δ-integrals to Δ ≤ ω̄ instead of the narrow-band [0, ∞).
    bool finite_delta_limit = false;
};

/// p(ω̄) = ∫_0^∞ u(Δ) C(ω̄, Δ) dΔ of a separable state: f(ω̄) · ⟨u, h⟩.
struct SeparableProjection {
    Profile f;
    Complex overlap;
    bool active;  // false when `channel` differs from the state's channel

    Complex operator()(double omegabar) const { return active ? overlap * f(omegabar) : Complex{}; }
};

/// Envelope samples on the Δ axis, rescaled so the discrete half-line mass
/// Σ_j w_j |u_j|² is exactly one. `captured_mass` is the unscaled mass.
struct DiscreteEnvelope {
    std::vector<Complex> values;
    double captured_mass = 0.0;
};
DiscreteEnvelope discretize(const Envelope& env, const Axis& delta);

struct GridProjection {
    std::vector<Complex> values;  // one per ω̄ sample
    double captured_mass = 0.0;
    std::vector<std::string> warnings;
};

SeparableProjection project_on_envelope(const SeparableState& state, const Envelope& env,
                                        DirectionPair channel,
                                        const ProjectionOptions& opts = {});
GridProjection project_on_envelope(const GridState& state, const Envelope& env,
                                   DirectionPair channel, const ProjectionOptions& opts = {});

/// Split into the component whose Δ-profile is u(Δ)* and the remainder.
struct Decomposition {
    BiphotonState parallel;
    BiphotonState orthogonal;
    std::vector<std::string> warnings;
};
Decomposition decompose(const BiphotonState& state, const Envelope& env,
                        const ProjectionOptions& opts = {});

// ---------------------------------------------------------------------------
// Joint-density diagnostics

/// Pearson correlation of (ω, ω') under a symmetric half-plane density
/// (row-major over `grid`). Only points with density ≥ core_level · max are
/// kept; core_level = 0 uses the whole grid. Lorentzian tails in ω̄ have no
/// finite variance, so the raw moment depends on the window; the half-maximum
/// core measures the shape actually seen in a density plot.
double joint_correlation(const FrequencyGrid& grid, const std::vector<double>& density,
                         double core_level = 0.5);

}  // namespace quadwg
