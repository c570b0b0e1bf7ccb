#pragma once

// Spontaneous two-photon emission from an initially excited emitter.

#include "quadwg/spectral.hpp"

#include <string>
#include <vector>

namespace quadwg {

/// C_e(t) = exp(-i ω0 t) exp(-Γ t / 2), t measured from the excitation.
Complex excited_amplitude(const Coupling& c, double t);

/// Long-time pair amplitude
///   -i √(γ^{μμ'}/2π) u(Δ)* / (Γ/2 - i(ω̄ - ω0)),
/// with the common exp(-i ω̄ t1) propagation factor dropped.
Complex emitted_amplitude(const Coupling& c, double omegabar, double delta, DirectionPair ch);

/// |emitted_amplitude|² summed over channels, per unit dω̄ dΔ.
double emitted_density(const Coupling& c, double omegabar, double delta);

struct EmissionSpectrum {
    FrequencyGrid grid;
    GridState amplitude;
    /// Trapezoid mass of Σ|C|² inside the grid window.
    double grid_probability = 0.0;
    /// Analytic mass inside the window (Lorentzian × envelope fractions).
    double window_mass = 0.0;
    /// grid_probability plus the analytic mass outside the window.
    double total_probability = 0.0;
    /// Largest value of the channel-summed density on the grid; plotted
    /// densities are not rescaled.
    double peak_density = 0.0;
    std::vector<std::string> warnings;

    /// Σ_{μμ'} |C|², row-major over the grid.
    std::vector<double> density() const;
    std::vector<double> density(DirectionPair ch) const;
};

/// Fills every channel on `grid`. Warns when the window holds less than
/// 99.9 % of the Lorentzian or of the envelope.
EmissionSpectrum joint_spectrum(const Coupling& c, const FrequencyGrid& grid, unsigned threads = 1);

/// Pearson correlation of (ω, ω') under the channel-summed density,
/// restricted to its core (see joint_correlation). Positive: photons share
/// frequency; negative: anticorrelated.
double spectrum_correlation(const EmissionSpectrum& spec, double core_level = 0.5);

/// ‖M - σ1 u vᵀ‖_F / σ1 for a row-major rows × cols matrix: an upper bound on
/// σ2/σ1. Leading pair from power iteration.
double rank_one_residual(const std::vector<double>& m, std::size_t rows, std::size_t cols);

}  // namespace quadwg
