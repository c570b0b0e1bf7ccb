#pragma once

// Two-photon scattering off the emitter: single-pole Θ kernel, output
// amplitudes for separable and gridded inputs, channel probabilities, the
// reflection/splitting bounds and the Gaussian closed form.

#include "quadwg/spectral.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace quadwg {

/// Θ^{μμ'}_{αα'}(ω̄) = -√(γ^{αα'} γ^{μμ'}) / (Γ/2 + i(ω0 - ω̄)).
Complex theta(const Coupling& c, DirectionPair out, DirectionPair in, double omegabar);
/// χ = δ^{μ}_{α} δ^{μ'}_{α'} + Θ.
Complex chi(const Coupling& c, DirectionPair out, DirectionPair in, double omegabar);

struct ScatterOptions {
    /// Δ-integrals stop at ω̄ (grid inputs only).
    bool finite_delta_limit = false;
    /// Sample separable inputs on this grid and use the gridded path.
    std::optional<FrequencyGrid> grid;
};

/// Analytic output of a separable input: the input channel keeps f·h and every
/// channel gains u(Δ)* Θ(ω̄) ⟨u, h⟩ f(ω̄).
struct SeparableScatter {
    Coupling coupling;
    SeparableState input;
    Complex overlap;

    Complex amplitude(DirectionPair ch, double omegabar, double delta) const;
};

struct ScatterOutput {
    std::variant<SeparableScatter, GridState> output;
    std::string input_description;
    std::string phase_convention =
        "free propagation factor exp(-i*omegabar*(t1-t0)) dropped; only relative phases are "
        "meaningful";
    std::vector<std::string> warnings{};

    bool is_grid() const { return std::holds_alternative<GridState>(output); }
    /// Output amplitude; gridded outputs are interpolated bilinearly.
    Complex amplitude(DirectionPair ch, double omegabar, double delta) const;
    /// Output sampled on (or copied to) a grid.
    GridState on_grid(const FrequencyGrid& grid) const;
};

ScatterOutput scatter(const Coupling& coupling, const BiphotonState& input,
                      const ScatterOptions& opts = {});

/// P^{μμ'} of an output relative to the input norm. R, S and T refer to the
/// input channel λλ': T keeps both directions, R reverses both, S is the sum
/// of the two mixed channels.
struct ChannelProbabilities {
    std::array<double, 4> p{};
    DirectionPair input = DirectionPair::pp;

    double operator[](DirectionPair ch) const { return p[ch.index()]; }
    double T() const { return p[input.index()]; }
    double R() const;
    double S() const;
    double total() const { return p[0] + p[1] + p[2] + p[3]; }
};

/// Semi-analytic (one ω̄ quadrature) for separable outputs, trapezoid on grids.
ChannelProbabilities channel_probabilities(const ScatterOutput& out, const BiphotonState& input);

struct ScatteringBounds {
    double R_max;
    double S_max;
    double T_min;
};
ScatteringBounds bounds(const Coupling& coupling);

/// Input of two Gaussian packets on the ++ channel with carriers ω1, ω2 and
/// common width α: f centered at ω1 + ω2, h centered at ω1 - ω2.
SeparableState gaussian_pair_input(double alpha, double omega1, double omega2);

/// ∫_0^∞ u(Δ) h(Δ) dΔ for a Gaussian envelope of width β and the shifted
/// half-line Gaussian profile of width α centered at `center`.
double gaussian_pair_overlap(double beta, double alpha, double center);

/// Closed-form output for a Gaussian envelope and gaussian_pair_input,
/// evaluated on `grid`.
ScatterOutput gaussian_closed_form(const Coupling& coupling, double alpha, double omega1,
                                   double omega2, const FrequencyGrid& grid);

/// P^{--} for matched-center Gaussian input and Gaussian envelope, isotropic
/// rates. Row k belongs to Gammas[k]; column l to beta_over_alpha[l].
struct ReflectionTable {
    double alpha;
    std::vector<double> beta_over_alpha;
    std::vector<double> Gammas;
    std::vector<std::vector<double>> reflection;
};
ReflectionTable reflection_sweep(double alpha, const std::vector<double>& beta_over_alpha,
                                 const std::vector<double>& Gammas, double omega0 = 1.0,
                                 unsigned threads = 1);

}  // namespace quadwg
