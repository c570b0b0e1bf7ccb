#pragma once

// Frequency-bin qubits from post-selected counter-propagating emission.

#include "quadwg/spectral.hpp"

#include <array>
#include <optional>
#include <vector>

namespace quadwg {

/// Two single-photon filter frequencies placed symmetrically around the
/// two-photon resonance: ω_a = ω0/2 - δ, ω_b = ω0/2 + δ, so the pair (a, b)
/// sums to ω0 and (a, a), (b, b) sit 2δ off resonance.
struct FilterPair {
    double omega_a = 0.0;
    double omega_b = 0.0;

    static FilterPair symmetric(double omega0, double delta);
    double detuning() const { return 0.5 * (omega_b - omega_a); }
    bool degenerate() const { return omega_a == omega_b; }
    /// Throws InvalidInput unless 0 < ω_a ≤ ω_b.
    void validate() const;
};

/// Amplitudes on |ω_i, ω_j⟩: first slot the + photon, second the - photon.
struct TwoQubitState {
    Complex aa{}, ab{}, ba{}, bb{};

    double norm2() const;
    TwoQubitState normalized() const;
    TwoQubitState times(Complex phase) const;
    /// Exchange the two slots and relabel a ↔ b.
    TwoQubitState swapped_relabelled() const;
};

/// Optional finite filter bandwidth: amplitudes are averaged over a square
/// box of this full width around each filter frequency.
struct FilterOptions {
    std::optional<double> box_width;
};

/// Evaluates the (+-) emitted amplitude at the four filter frequency pairs and
/// renormalizes. Degenerate filters give the single ket |ω_a, ω_a⟩.
TwoQubitState postselect_filtered_state(const Coupling& c, const FilterPair& filters,
                                        const FilterOptions& opts = {});

/// Eigenvalues (descending) of ρ1 = Tr_2 |ψ⟩⟨ψ| for a normalized state.
std::array<double, 2> reduced_eigenvalues(const TwoQubitState& s);

/// -Σ λ log2 λ over the reduced eigenvalues.
double entanglement_entropy(const TwoQubitState& s);

enum class BellTarget { PsiMinus, PhiPlus };

/// |⟨target|ψ⟩|² with ψ⁻ = (|aa⟩ - |bb⟩)/√2 and φ⁺ = (|ab⟩ + |ba⟩)/√2.
double bell_fidelity(const TwoQubitState& s, BellTarget target);

struct EntropyRow {
    double x;  // δ/Γ or β/Γ
    double entropy;
    double psi_minus;
    double phi_plus;
};

struct EntropySweeps {
    double Gamma;
    double fixed_beta_over_Gamma;   // used by the δ sweep
    double fixed_delta_over_Gamma;  // used by the β sweep
    std::vector<EntropyRow> vs_delta;
    std::vector<EntropyRow> vs_beta;
};

/// Isotropic coupling with Lorentzian envelope of width β; ω0 = 1.
EntropySweeps entropy_sweeps(double Gamma, const std::vector<double>& delta_over_Gamma,
                             const std::vector<double>& beta_over_Gamma,
                             double fixed_beta_over_Gamma = 0.125,
                             double fixed_delta_over_Gamma = 10.0, const FilterOptions& opts = {},
                             unsigned threads = 1);

}  // namespace quadwg
