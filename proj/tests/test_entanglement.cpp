#include <doctest.h>

#include "quadwg/emission.hpp"
#include "quadwg/entanglement.hpp"
#include "quadwg/errors.hpp"

#include <cmath>
#include <random>

using namespace quadwg;

namespace {

constexpr double kGamma = 0.004;

TwoQubitState emitted(double beta_ratio, double delta_ratio, FilterOptions opts = {})
{
    const auto c = Coupling::isotropic(kGamma, Envelope::lorentzian(beta_ratio * kGamma));
    return postselect_filtered_state(c, FilterPair::symmetric(1.0, delta_ratio * kGamma), opts);
}

double plateau_entropy(double r)
{
    const double lp = (1.0 + r) * (1.0 + r) / (2.0 * (1.0 + r * r));
    const double lm = 1.0 - lp;
    auto h = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
    return h(lp) + h(lm);
}

std::vector<double> logspace(double a, double b, int n)
{
    std::vector<double> v;
    for (int k = 0; k < n; ++k) {
        v.push_back(std::pow(10.0, a + (b - a) * k / (n - 1)));
    }
    return v;
}

}  // namespace

TEST_CASE("entropy of reference states")
{
    CHECK(std::abs(entanglement_entropy({0.5, 0.5, 0.5, 0.5})) < 1e-15);
    const double r = std::sqrt(0.5);
    CHECK(entanglement_entropy({r, 0.0, 0.0, -r}) == doctest::Approx(1.0).epsilon(1e-14));
    const double expected = -0.9 * std::log2(0.9) - 0.1 * std::log2(0.1);
    CHECK(entanglement_entropy({std::sqrt(0.9), 0.0, 0.0, std::sqrt(0.1)}) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(0.469).epsilon(1e-3));
    CHECK(entanglement_entropy({1.0, 0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("bell fidelities of reference states")
{
    const double r = std::sqrt(0.5);
    const TwoQubitState psi{r, 0.0, 0.0, -r};
    const TwoQubitState phi{0.0, r, r, 0.0};
    CHECK(bell_fidelity(psi, BellTarget::PsiMinus) == doctest::Approx(1.0));
    CHECK(bell_fidelity(psi, BellTarget::PhiPlus) == doctest::Approx(0.0));
    CHECK(bell_fidelity(phi, BellTarget::PhiPlus) == doctest::Approx(1.0));
    CHECK(bell_fidelity({0.5, 0.5, 0.5, 0.5}, BellTarget::PsiMinus) == doctest::Approx(0.0).scale(1e-15));
}

TEST_CASE("reduced eigenvalues on random states")
{
    std::mt19937 rng(11);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const TwoQubitState s = TwoQubitState{{N(rng), N(rng)}, {N(rng), N(rng)}, {N(rng), N(rng)}, {N(rng), N(rng)}}.normalized();
        CHECK(s.norm2() == doctest::Approx(1.0).epsilon(1e-12));
        const auto ev = reduced_eigenvalues(s);
        CHECK(ev[1] >= 0.0);
        CHECK(ev[0] >= ev[1]);
        CHECK(std::abs(ev[0] + ev[1] - 1.0) < 1e-12);
        const double S = entanglement_entropy(s);
        CHECK(S >= 0.0);
        CHECK(S <= 1.0);
        const Complex phase = std::polar(1.0, 6.28 * (k / 200.0));
        CHECK(entanglement_entropy(s.times(phase)) == doctest::Approx(S).epsilon(1e-12).scale(1e-14));
        CHECK(entanglement_entropy(s.swapped_relabelled()) == doctest::Approx(S).epsilon(1e-12).scale(1e-14));
        CHECK(bell_fidelity(s.times(phase), BellTarget::PhiPlus) == doctest::Approx(bell_fidelity(s, BellTarget::PhiPlus)));
    }
}

TEST_CASE("emitted state is exchange symmetric")
{
    for (double b : {0.01, 0.125, 1.0, 10.0}) {
        for (double d : {0.5, 3.0, 10.0}) {
            const auto s = emitted(b, d);
            CHECK(s.ab == s.ba);
            CHECK(s.norm2() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("degenerate filters give a single ket")
{
    const auto s = emitted(0.125, 0.0);
    CHECK(std::abs(s.aa) == doctest::Approx(1.0));
    CHECK(s.ab == Complex{});
    CHECK(entanglement_entropy(s) == 0.0);
}

TEST_CASE("bell limits")
{
    CHECK(bell_fidelity(emitted(1e-2, 10.0), BellTarget::PsiMinus) > 0.99);
    CHECK(bell_fidelity(emitted(1e2, 10.0), BellTarget::PhiPlus) > 0.99);
    CHECK(entanglement_entropy(emitted(1e-2, 10.0)) > 0.95);
    CHECK(entanglement_entropy(emitted(1e2, 10.0)) > 0.95);
    // Fig. 5(d) and (e) parameters.
    CHECK(bell_fidelity(emitted(0.125, 10.0), BellTarget::PsiMinus) > 0.9);
    CHECK(bell_fidelity(emitted(10.0, 10.0), BellTarget::PhiPlus) > 0.9);
}

TEST_CASE("far-detuned entropy follows the amplitude ratio β/Γ")
{
    for (double r : {0.05, 0.125, 0.5, 2.0, 8.0}) {
        CAPTURE(r);
        CHECK(entanglement_entropy(emitted(r, 100.0)) == doctest::Approx(plateau_entropy(r)).epsilon(1e-3));
    }
    // Equal widths: the filtered state is a product state at any detuning.
    for (double d : {0.3, 1.0, 10.0}) {
        CHECK(entanglement_entropy(emitted(1.0, d)) < 1e-10);
    }
}

TEST_CASE("entropy sweeps")
{
    std::vector<double> deltas;
    for (int k = 0; k <= 80; ++k) {
        deltas.push_back(0.25 * k);
    }
    const auto betas = logspace(-2.0, 2.0, 81);
    const auto sw = entropy_sweeps(kGamma, deltas, betas);
    for (std::size_t k = 1; k < sw.vs_delta.size(); ++k) {
        CHECK(sw.vs_delta[k].entropy >= sw.vs_delta[k - 1].entropy);
    }
    const auto n = sw.vs_delta.size();
    CHECK(std::abs(sw.vs_delta[n - 1].entropy - sw.vs_delta[n - 2].entropy) < 1e-3);
    std::size_t best = 0;
    for (std::size_t k = 0; k < sw.vs_beta.size(); ++k) {
        if (sw.vs_beta[k].entropy < sw.vs_beta[best].entropy) {
            best = k;
        }
    }
    CHECK(sw.vs_beta[best].x == doctest::Approx(1.0));
    CHECK(sw.vs_beta.front().entropy > 0.95);
    CHECK(sw.vs_beta.back().entropy > 0.95);
}

TEST_CASE("narrow box filters reproduce the delta filters")
{
    for (double b : {0.125, 10.0}) {
        const auto point = emitted(b, 10.0);
        const auto box = emitted(b, 10.0, {0.01 * kGamma});
        CHECK(std::abs(entanglement_entropy(box) - entanglement_entropy(point)) < 1e-3);
        CHECK(std::abs(std::abs(box.aa) - std::abs(point.aa)) < 1e-3);
    }
    // A wide box washes out the resonance structure.
    const auto wide = emitted(0.125, 10.0, {5.0 * kGamma});
    CHECK(std::abs(entanglement_entropy(wide) - entanglement_entropy(emitted(0.125, 10.0))) > 1e-3);
}

TEST_CASE("post-selection errors")
{
    const auto chiral = Coupling::chiral(kGamma, Envelope::lorentzian(kGamma));
    CHECK_THROWS_AS(postselect_filtered_state(chiral, FilterPair::symmetric(1.0, kGamma)), Error);
    CHECK_THROWS_AS(FilterPair::symmetric(1.0, 0.6), Error);
    // Envelope vanishing near Δ = 0: every filtered pair falls outside its support.
    const auto hollow = Coupling::isotropic(
        kGamma, Envelope::tabulated({0.0, 0.01, 0.011, 0.012, 0.013}, {0.0, 0.0, 1.0, 1.0, 0.0}));
    try {
        postselect_filtered_state(hollow, FilterPair::symmetric(1.0, 0.001), {});
        FAIL("expected EmptyPostselection");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyPostselection);
    }
}
