#include "quadwg/oracle.hpp"

#include "quadwg/errors.hpp"
#include "quadwg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace quadwg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(const char* f, double a, double b)
{
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// Each ω̄ row couples to the emitter only through its bright mode
// b_i = Σ_k G_k c_k / λ_i (k over channels and Δ in row i, λ_i = ‖G_i‖).
// Row modes orthogonal to G_i evolve freely, so the exact dynamics reduces to
//   i dC_e/dt = Σ_i λ_i b_i,   i db_i/dt = ν_i b_i + λ_i C_e.
// State layout: y[0] = C_e, y[1 + i] = b_i.
struct BrightSystem {
    std::vector<double> nu;
    std::vector<double> lambda;

    void derivative(const std::vector<Complex>& y, std::vector<Complex>& dy) const
    {
        const Complex ce = y[0];
        const Complex mi(0.0, -1.0);
        Complex sum{};
        for (std::size_t i = 0; i < nu.size(); ++i) {
            const Complex b = y[1 + i];
            sum += lambda[i] * b;
            dy[1 + i] = mi * (nu[i] * b + lambda[i] * ce);
        }
        dy[0] = mi * sum;
    }
};

double state_norm(const std::vector<Complex>& y)
{
    double s = 0.0;
    for (const Complex& z : y) {
        s += std::norm(z);
    }
    return s;
}

}  // namespace

double TimeDomainConfig::max_detuning(double omega0) const
{
    const Axis& a = grid.omegabar();
    return std::max(std::abs(a[0] - omega0), std::abs(a.back() - omega0));
}

TimeDomainConfig TimeDomainConfig::for_decay(const Coupling& c, double t_end_over_Gamma, double band,
                                             std::size_t n_omegabar, std::size_t n_delta)
{
    const double w0 = c.omega0();
    const double G = c.total_rate();
    TimeDomainConfig cfg{FrequencyGrid::make(w0 * (1.0 - band), w0 * (1.0 + band), n_omegabar,
                                             10.0 * c.envelope().scale(), n_delta)};
    cfg.t1 = t_end_over_Gamma / G;
    cfg.dt = 0.09 / (band * w0);
    cfg.record_stride = std::max<std::size_t>(1, static_cast<std::size_t>(cfg.t1 / cfg.dt / 2000.0));
    return cfg;
}

TimeDomainConfig TimeDomainConfig::for_scattering(const Coupling& c, double input_width,
                                                  double delta_center, double band,
                                                  std::size_t n_omegabar, std::size_t n_delta)
{
    if (!(input_width > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "input width must be positive");
    }
    const double w0 = c.omega0();
    const double G = c.total_rate();
    const double delay = 6.0 / input_width;
    // The packet occupies roughly [0, 2·delay]; the emitter then needs ~12/Γ to empty.
    const double t1 = 2.0 * delay + 12.0 / G;
    // Revival time 2π/dω̄ must exceed 1.3 t1.
    const double span = 2.0 * band * w0;
    const auto needed = static_cast<std::size_t>(std::ceil(1.3 * t1 * span / kTwoPi)) + 1;
    const double dmax = std::max(std::abs(delta_center) + 8.0 * input_width, 10.0 * c.envelope().scale());
    TimeDomainConfig cfg{FrequencyGrid::make(w0 - band * w0, w0 + band * w0, std::max(n_omegabar, needed),
                                             dmax, n_delta)};
    cfg.t1 = t1;
    cfg.launch_delay = delay;
    cfg.dt = 0.09 / (band * w0);
    cfg.record_stride = std::max<std::size_t>(1, static_cast<std::size_t>(cfg.t1 / cfg.dt / 2000.0));
    return cfg;
}

void TimeDomainConfig::validate(const Coupling& c) const
{
    const double G = c.total_rate();
    const double span = t1 - t0;
    if (!(span * G >= 10.0)) {
        throw Error(ErrorKind::NotAsymptotic, fmt("(t1 - t0)Γ = %.3g is below 10%.0s", span * G, 0.0));
    }
    const Axis& a = grid.omegabar();
    if (!(a[0] < c.omega0() && a.back() > c.omega0())) {
        throw Error(ErrorKind::InvalidGrid, "oracle band must enclose omega0");
    }
    if (!(dt > 0.0) || !(dt * max_detuning(c.omega0()) < 0.1)) {
        throw Error(ErrorKind::InvalidGrid,
                    fmt("dt·max|detuning| = %.3g must stay below 0.1 (dt = %.3g)",
                        dt * max_detuning(c.omega0()), dt));
    }
    const double revival = kTwoPi / a.step;
    if (!(revival >= span)) {
        throw Error(ErrorKind::InvalidGrid,
                    fmt("grid revival time %.4g is shorter than the run %.4g", revival, span));
    }
    if (!(launch_delay >= 0.0) || !(record_stride >= 1)) {
        throw Error(ErrorKind::InvalidInput, "launch delay and record stride must be non-negative");
    }
}

Trajectory integrate(const Coupling& c, const InitialCondition& initial, const TimeDomainConfig& cfg,
                     unsigned threads)
{
    cfg.validate(c);
    const FrequencyGrid& grid = cfg.grid;
    const Axis& wb = grid.omegabar();
    const Axis& dl = grid.delta();

    const std::size_t nb = wb.count;
    const std::size_t nd = dl.count;
    // Index of (channel, ω̄ row, Δ) in the flattened mode arrays.
    auto at = [&](DirectionPair ch, std::size_t i, std::size_t j) { return (ch.index() * nb + i) * nd + j; };

    BrightSystem sys;
    sys.nu.resize(nb);
    sys.lambda.assign(nb, 0.0);
    for (std::size_t i = 0; i < nb; ++i) {
        sys.nu[i] = wb[i] - c.omega0();
    }
    // Envelope rescaled to unit discrete mass so the discrete decay rate is Γ.
    const auto env = discretize(c.envelope(), dl);
    std::vector<Complex> G(4 * nb * nd, Complex{});
    for (auto ch : kAllPairs) {
        const double g = cfg.coupling_scale * std::sqrt(c.rate(ch) / kTwoPi);
        for (std::size_t i = 0; i < nb; ++i) {
            for (std::size_t j = 0; j < nd; ++j) {
                if (cfg.finite_delta_limit && dl[j] > wb[i]) {
                    continue;
                }
                const Complex v = g * env.values[j] * std::sqrt(grid.weight(i, j));
                G[at(ch, i, j)] = v;
                sys.lambda[i] += std::norm(v);
            }
        }
    }
    for (double& l : sys.lambda) {
        l = std::sqrt(l);
    }

    Trajectory traj{cfg, c.total_rate(), {}, {}, GridState(grid)};
    // Weighted mode amplitudes √w·C at t0.
    std::vector<Complex> modes(4 * nb * nd, Complex{});
    Complex ce0{};
    if (std::holds_alternative<ExcitedEmitter>(initial)) {
        ce0 = 1.0;
    } else {
        const auto& state = std::get<BiphotonState>(initial);
        GridState sampled = std::holds_alternative<GridState>(state)
                                ? std::get<GridState>(state)
                                : sample(std::get<SeparableState>(state), grid);
        const Axis& sa = sampled.grid.omegabar();
        const Axis& sd = sampled.grid.delta();
        if (sa.count != wb.count || sd.count != dl.count || sa.start != wb.start || sa.step != wb.step ||
            sd.start != dl.start || sd.step != dl.step) {
            throw Error(ErrorKind::InvalidGrid, "grid input must live on the oracle grid");
        }
        double best = -1.0;
        for (auto ch : kAllPairs) {
            const auto& f = sampled.channel(ch);
            double m = 0.0;
            for (std::size_t i = 0; i < nb; ++i) {
                const Complex launch = std::exp(Complex(0.0, sys.nu[i] * cfg.launch_delay));
                for (std::size_t j = 0; j < nd; ++j) {
                    const Complex v = f(i, j) * std::sqrt(grid.weight(i, j)) * launch;
                    modes[at(ch, i, j)] = v;
                    m += std::norm(v);
                }
            }
            if (m > best) {
                best = m;
                traj.input_channel = ch;
            }
        }
    }
    traj.input_norm = std::norm(ce0) + state_norm(modes);
    if (!(traj.input_norm > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "initial state has zero norm");
    }

    // Split each row into its bright amplitude and the free remainder.
    std::vector<Complex> y(1 + nb, Complex{});
    y[0] = ce0;
    for (std::size_t i = 0; i < nb; ++i) {
        if (sys.lambda[i] == 0.0) {
            continue;
        }
        Complex b{};
        for (auto ch : kAllPairs) {
            for (std::size_t j = 0; j < nd; ++j) {
                b += G[at(ch, i, j)] * modes[at(ch, i, j)];
            }
        }
        b /= sys.lambda[i];
        y[1 + i] = b;
        for (auto ch : kAllPairs) {
            for (std::size_t j = 0; j < nd; ++j) {
                modes[at(ch, i, j)] -= std::conj(G[at(ch, i, j)]) / sys.lambda[i] * b;
            }
        }
    }
    const double dark_norm = state_norm(modes);

    const double span = cfg.t1 - cfg.t0;
    const auto steps = static_cast<std::size_t>(std::ceil(span / cfg.dt - 1e-9));
    const double h = span / static_cast<double>(steps);
    std::vector<Complex> k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());
    traj.times.push_back(cfg.t0);
    traj.excited.push_back(y[0]);
    for (std::size_t s = 1; s <= steps; ++s) {
        sys.derivative(y, k1);
        for (std::size_t k = 0; k < y.size(); ++k) {
            tmp[k] = y[k] + 0.5 * h * k1[k];
        }
        sys.derivative(tmp, k2);
        for (std::size_t k = 0; k < y.size(); ++k) {
            tmp[k] = y[k] + 0.5 * h * k2[k];
        }
        sys.derivative(tmp, k3);
        for (std::size_t k = 0; k < y.size(); ++k) {
            tmp[k] = y[k] + h * k3[k];
        }
        sys.derivative(tmp, k4);
        double norm = dark_norm;
        for (std::size_t k = 0; k < y.size(); ++k) {
            y[k] += (h / 6.0) * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
            norm += std::norm(y[k]);
        }
        const double drift = std::abs(norm - traj.input_norm) / traj.input_norm;
        traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
        if (!(drift <= 1e-4)) {
            throw Error(ErrorKind::IntegrationFailure,
                        fmt("norm drift %.3g at t = %.4g; reduce dt or refine the grid", drift,
                            cfg.t0 + h * static_cast<double>(s)));
        }
        if (s % cfg.record_stride == 0 || s == steps) {
            traj.times.push_back(cfg.t0 + h * static_cast<double>(s));
            traj.excited.push_back(y[0]);
        }
    }

    // Free remainder picks up exp(-iν span); the outputs then unwind the
    // phase accumulated since the reference instant t0 + launch_delay.
    const double since = span - cfg.launch_delay;
    parallel_for(nb, threads, [&](std::size_t i) {
        const Complex free_phase = std::exp(Complex(0.0, -sys.nu[i] * span));
        const Complex unwind = std::exp(Complex(0.0, sys.nu[i] * since));
        const Complex b = y[1 + i];
        for (auto ch : kAllPairs) {
            auto& f = traj.field.channel(ch);
            for (std::size_t j = 0; j < nd; ++j) {
                Complex v = modes[at(ch, i, j)] * free_phase;
                if (sys.lambda[i] > 0.0) {
                    v += std::conj(G[at(ch, i, j)]) / sys.lambda[i] * b;
                }
                f(i, j) = v * unwind / std::sqrt(grid.weight(i, j));
            }
        }
    });
    return traj;
}

ChannelProbabilities oracle_channel_probabilities(const Trajectory& traj)
{
    const double span = traj.config.t1 - traj.config.t0;
    if (!(span * traj.Gamma >= 10.0)) {
        throw Error(ErrorKind::NotAsymptotic, fmt("(t1 - t0)Γ = %.3g is below 10%.0s", span * traj.Gamma, 0.0));
    }
    const double residual = std::norm(traj.final_excited());
    if (!(residual < 1e-4)) {
        throw Error(ErrorKind::NotAsymptotic, fmt("emitter still excited: |C_e|² = %.3g%.0s", residual, 0.0));
    }
    ChannelProbabilities out;
    out.input = traj.input_channel;
    for (auto ch : kAllPairs) {
        out.p[ch.index()] = channel_norm2(traj.field, ch) / traj.input_norm;
    }
    return out;
}

}  // namespace quadwg
