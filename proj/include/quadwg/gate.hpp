#pragma once

// Dual-rail controlled-phase gate built from two emitters terminating
// semi-infinite waveguides.

#include "quadwg/quadrature.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace quadwg {

/// Which profile the FWHM refers to.
enum class FwhmOn { Amplitude, Density };

/// Real, non-negative sum-frequency amplitude f(ω̄) with ∫ f² dω̄ = 1.
class PulseShape {
public:
    enum class Kind { Gaussian, Lorentzian, Tabulated };

    static PulseShape gaussian(double center, double fwhm, FwhmOn on = FwhmOn::Amplitude);
    /// f ∝ 1/((ω̄ - center)² + a²).
    static PulseShape lorentzian(double center, double fwhm, FwhmOn on = FwhmOn::Amplitude);
    /// Linear interpolation of samples (ascending abscissae, non-negative
    /// values), zero outside; renormalized. Centre at the largest sample.
    static PulseShape tabulated(std::vector<double> omegabar, std::vector<double> values,
                                FwhmOn on = FwhmOn::Amplitude);

    double operator()(double omegabar) const;
    Kind kind() const { return kind_; }
    double center() const { return center_; }
    double fwhm() const { return fwhm_; }
    /// Width parameter used for quadrature panels.
    double scale() const { return scale_; }
    /// Support of a tabulated pulse; the whole line otherwise.
    std::pair<double, double> support() const;
    std::string name() const;

private:
    Kind kind_ = Kind::Gaussian;
    double center_ = 0.0;
    double fwhm_ = 0.0;
    double scale_ = 1.0;
    double norm_ = 1.0;
    std::vector<double> xs_;
    std::vector<double> ys_;
};

/// 1 - Γ/(Γ/2 + i(ω0 - ω̄)); unit modulus.
Complex mirror_bracket(double Gamma, double omega0, double omegabar);

/// f(ω̄) times the bracket: the reflected sum-frequency amplitude of a
/// matched two-photon input (common propagation phase dropped).
ComplexFn mirror_reflection(const PulseShape& f, double Gamma, double omega0 = 1.0);

struct GateOptions {
    double omega0 = 1.0;
    /// Finite quadrature window; the pulse must lie inside it.
    std::optional<std::pair<double, double>> window;
    /// Transmission probability t² of the beam splitters.
    double splitting = 0.5;
};

/// 1 + O = ∫ f² · 2i x/(Γ/2 + i x) dω̄ with x = ω0 - ω̄. Evaluated directly so
/// that O ≈ -1 keeps full relative accuracy.
Complex one_plus_overlap(const PulseShape& f, double Gamma, const GateOptions& opts = {});
/// O = ∫ f² · bracket dω̄.
Complex gate_overlap(const PulseShape& f, double Gamma, const GateOptions& opts = {});

struct WorstCase {
    double fidelity;
    double x_star;      // minimizing |d|²
    double infidelity;  // 1 - F without cancellation
};

/// min over x ∈ [0, 1] of |1 - x(1 + O)|². Takes 1 + O.
WorstCase worst_case_from_shift(Complex one_plus);
/// Same from O itself; |O| > 1 + 1e-6 throws InvalidOverlap.
WorstCase worst_case_fidelity(Complex overlap);

struct GateReport {
    Complex overlap;
    Complex one_plus;
    WorstCase worst;
};
GateReport evaluate_gate(const PulseShape& f, double Gamma, const GateOptions& opts = {});

/// Two photons in two modes, normalized Fock amplitudes.
struct TwoPhotonModes {
    Complex n20{}, n11{}, n02{};
    double norm2() const { return std::norm(n20) + std::norm(n11) + std::norm(n02); }
};

/// Beam splitter a† → t a† + i r b†, b† → i r a† + t b† with t² = splitting;
/// `inverse` applies its adjoint.
TwoPhotonModes beam_splitter(const TwoPhotonModes& in, double splitting, bool inverse = false);

struct TruthTable {
    Complex overlap;
    /// |00⟩, |01⟩, |10⟩ → themselves (single photons pass the emitters).
    std::array<Complex, 3> single;
    /// After the first splitter, reflected branches, and output of |1_c 1_s⟩.
    TwoPhotonModes split, reflected, output;
    Complex c11() const { return output.n11; }
};

TruthTable truth_table(const PulseShape& f, double Gamma, const GateOptions& opts = {});

struct InfidelityRow {
    double gamma_over_fwhm;
    GateReport gaussian;
    GateReport lorentzian;
};

/// Both shapes centred on ω0 with FWHM = Γ/ratio.
std::vector<InfidelityRow> infidelity_sweep(const std::vector<double>& gamma_over_fwhm,
                                            double Gamma = 0.004, FwhmOn on = FwhmOn::Amplitude,
                                            const GateOptions& opts = {}, unsigned threads = 1);

/// n points log-spaced over [10^lo, 10^hi].
std::vector<double> logspace(double lo, double hi, std::size_t n);

}  // namespace quadwg
