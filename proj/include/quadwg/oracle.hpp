#pragma once

// Direct time-domain integration of the coupled emitter/two-photon amplitude
// equations on a finite frequency grid. Used as ground truth for the
// Markovian results.

#include "quadwg/scattering.hpp"
#include "quadwg/spectral.hpp"

#include <variant>
#include <vector>

namespace quadwg {

struct TimeDomainConfig {
    /// Absolute ω̄ values and Δ ≥ 0; the ω̄ band must enclose ω0.
    FrequencyGrid grid;
    double t0 = 0.0;
    double t1 = 0.0;
    double dt = 0.0;
    /// The input packet is free-evolved back by this time, so it reaches the
    /// emitter at t0 + launch_delay. Outputs are referred to that instant.
    double launch_delay = 0.0;
    /// Couple only modes with Δ ≤ ω̄.
    bool finite_delta_limit = true;
    /// Multiplies every coupling; 0 decouples the emitter.
    double coupling_scale = 1.0;
    /// Keep every n-th C_e sample.
    std::size_t record_stride = 1;

    /// Band ω0 ± band·ω0, t1 = t_end_over_Gamma / Γ.
    static TimeDomainConfig for_decay(const Coupling& c, double t_end_over_Gamma = 10.0,
                                      double band = 0.2, std::size_t n_omegabar = 256,
                                      std::size_t n_delta = 128);
    /// Launch delay 6/input_width, t1 = 2·delay + 12/Γ, band ω0 ± band·ω0; ω̄
    /// points raised until the grid revival time exceeds 1.3 t1.
    static TimeDomainConfig for_scattering(const Coupling& c, double input_width,
                                           double delta_center = 0.0, double band = 0.1,
                                           std::size_t n_omegabar = 256, std::size_t n_delta = 128);

    /// (t1 - t0)Γ ≥ 10, dt·max|ω̄ - ω0| < 0.1, revival 2π/dω̄ ≥ t1 - t0.
    void validate(const Coupling& c) const;
    double max_detuning(double omega0) const;
};

struct ExcitedEmitter {};
using InitialCondition = std::variant<ExcitedEmitter, BiphotonState>;

struct Trajectory {
    TimeDomainConfig config;
    double Gamma = 0.0;
    std::vector<double> times;
    /// C_e in the frame rotating at ω0.
    std::vector<Complex> excited;
    /// Continuum amplitudes at t1 with the free phase since the reference
    /// instant removed: C(t1)·exp(i(ω̄ - ω0)(t1 - t0 - launch_delay)).
    GridState field;
    /// Discrete norm of the initial state.
    double input_norm = 0.0;
    /// Largest |norm(t) - norm(t0)| seen.
    double max_norm_drift = 0.0;
    DirectionPair input_channel = DirectionPair::pp;

    Complex final_excited() const { return excited.back(); }
};

/// Fixed-step RK4. Grid inputs must live on config.grid; separable inputs
/// are sampled on it. Norm drift above 1e-4 throws IntegrationFailure.
Trajectory integrate(const Coupling& c, const InitialCondition& initial,
                     const TimeDomainConfig& config, unsigned threads = 1);

/// Discrete Σ|C|² per channel over the input norm. Throws NotAsymptotic
/// unless (t1 - t0)Γ ≥ 10 and |C_e(t1)|² < 1e-4.
ChannelProbabilities oracle_channel_probabilities(const Trajectory& traj);

}  // namespace quadwg
