#include <doctest.h>

#include "quadwg/errors.hpp"
#include "quadwg/scattering.hpp"

#include <cmath>
#include <random>

using namespace quadwg;

namespace {

const DirectionPair PP = DirectionPair::pp;
const DirectionPair PM = DirectionPair::pm;
const DirectionPair MP = DirectionPair::mp;
const DirectionPair MM = DirectionPair::mm;

double max_abs_diff(const GridState& a, const GridState& b)
{
    double worst = 0.0;
    for (auto ch : kAllPairs) {
        for (std::size_t k = 0; k < a.channel(ch).data.size(); ++k) {
            worst = std::max(worst, std::abs(a.channel(ch).data[k] - b.channel(ch).data[k]));
        }
    }
    return worst;
}

double max_abs(const GridState& a)
{
    double m = 0.0;
    for (auto ch : kAllPairs) {
        for (auto v : a.channel(ch).data) {
            m = std::max(m, std::abs(v));
        }
    }
    return m;
}

}  // namespace

TEST_CASE("theta and chi values")
{
    const auto u = Envelope::gaussian(0.02);
    const double G = 0.004;
    const auto iso = Coupling::isotropic(G, u);
    const auto chiral = Coupling::chiral(G, u);
    for (auto a : kAllPairs) {
        for (auto b : kAllPairs) {
            CHECK(std::abs(theta(iso, a, b, 1.0) - Complex(-0.5, 0.0)) < 1e-15);
        }
    }
    CHECK(std::abs(theta(chiral, PP, PP, 1.0) - Complex(-2.0, 0.0)) < 1e-15);
    CHECK(std::abs(theta(iso, MM, PP, 1.0 + G / 2) - Complex(-0.25, -0.25)) < 1e-15);
    CHECK(std::abs(chi(chiral, PP, PP, 1.0) - Complex(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(chi(iso, MM, PP, 1.0) - Complex(-0.5, 0.0)) < 1e-15);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> w(1.0 - 10 * G, 1.0 + 10 * G);
    for (int k = 0; k < 50; ++k) {
        const double wb = w(rng);
        double s = 0.0;
        for (auto mu : kAllPairs) {
            s += std::norm(chi(iso, mu, PP, wb));
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("bounds for standard couplings")
{
    const auto u = Envelope::gaussian(0.02);
    auto b = bounds(Coupling::isotropic(1.0, u));
    CHECK(b.R_max == doctest::Approx(0.25));
    CHECK(b.S_max == doctest::Approx(0.5));
    CHECK(b.T_min == doctest::Approx(0.25));
    b = bounds(Coupling::copropagating(1.0, u));
    CHECK(b.R_max == doctest::Approx(1.0));
    CHECK(b.S_max == 0.0);
    CHECK(b.T_min == doctest::Approx(0.0));
    b = bounds(Coupling::chiral(1.0, u));
    CHECK(b.R_max == 0.0);
    CHECK(b.S_max == 0.0);
    CHECK(b.T_min == 1.0);
}

TEST_CASE("orthogonal input is transparent")
{
    const auto u = Envelope::gaussian(0.02);
    const auto c = Coupling::isotropic(0.004, u);
    const auto h0 = Profile::half_gaussian(0.05);
    const Profile orth = h0.minus(Profile::matched(u), envelope_overlap(u, h0));
    const SeparableState s{PP, Profile::gaussian(1.0, 1e-3), orth};
    const auto out = scatter(c, s);
    for (double wb : {0.999, 1.0, 1.002}) {
        for (double d : {0.0, 0.01, 0.05}) {
            CHECK(std::abs(out.amplitude(PP, wb, d) - s.amplitude(PP, wb, d)) < 1e-9);
            CHECK(std::abs(out.amplitude(MM, wb, d)) < 1e-9);
        }
    }
    const auto p = channel_probabilities(out, s);
    CHECK(p[PP] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(p[MM] < 1e-12);
}

TEST_CASE("matched narrow input reaches the isotropic bounds")
{
    const double G = 0.004;
    const auto u = Envelope::gaussian(0.02);
    const auto c = Coupling::isotropic(G, u);
    const SeparableState s{PP, Profile::gaussian(1.0, G / 1000), Profile::matched(u)};
    const auto p = channel_probabilities(scatter(c, s), s);
    CHECK(p.R() == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(p.S() == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(p.T() == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(p[PM] == p[MP]);
    CHECK(p.total() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("without splitting a matched pair is fully reflected")
{
    const double G = 0.004;
    const auto u = Envelope::gaussian(0.02);
    const auto c = Coupling::copropagating(G, u);
    const SeparableState s{PP, Profile::gaussian(1.0, G / 1000), Profile::matched(u)};
    const auto p = channel_probabilities(scatter(c, s), s);
    CHECK(p.R() > 0.999);
    CHECK(p.S() == 0.0);
}

TEST_CASE("random separable inputs conserve probability and respect the bound")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const double G = 0.001 + 0.01 * uni(rng);
        std::array<double, 4> r{uni(rng), 0.0, 0.0, uni(rng)};
        r[1] = r[2] = uni(rng);
        const double sum = r[0] + r[1] + r[2] + r[3];
        for (auto& x : r) {
            x *= G / sum;
        }
        const double beta = 0.005 + 0.05 * uni(rng);
        const Envelope env = uni(rng) < 0.5 ? Envelope::gaussian(beta) : Envelope::lorentzian(beta);
        const Coupling c(r, env);
        const SeparableState s{PP, Profile::gaussian(1.0 + (uni(rng) - 0.5) * 4 * G,
                                                     G * std::pow(10.0, 2 * uni(rng) - 2)),
                               Profile::half_gaussian(0.005 + 0.05 * uni(rng), 0.02 * uni(rng))};
        const auto p = channel_probabilities(scatter(c, s), s);
        CHECK(p.total() == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(p.R() <= bounds(c).R_max + 1e-6);
        CHECK(p.S() <= bounds(c).S_max + 1e-6);
        CHECK(p[PM] == p[MP]);
    }
}

TEST_CASE("grid path matches the separable path and is unitary")
{
    const double G = 0.004;
    const double alpha = 0.002;
    const auto c = Coupling::isotropic(G, Envelope::gaussian(0.02));
    const auto s = gaussian_pair_input(alpha, 0.5, 0.5);
    const auto grid = FrequencyGrid::make(1.0 - 12 * alpha, 1.0 + 12 * alpha, 401, 0.2, 401);
    const auto analytic = scatter(c, s);
    const auto gridded = scatter(c, s, {false, grid});
    CHECK(gridded.is_grid());
    const GridState a = analytic.on_grid(grid);
    const GridState& b = std::get<GridState>(gridded.output);
    CHECK(max_abs_diff(a, b) < 1e-7 * max_abs(a));

    const auto pa = channel_probabilities(analytic, s);
    const auto pb = channel_probabilities(gridded, s);
    for (auto ch : kAllPairs) {
        CHECK(pb[ch] == doctest::Approx(pa[ch]).epsilon(1e-7));
    }
    CHECK(norm2(b) == doctest::Approx(norm2(sample(s, grid))).epsilon(1e-12));
}

TEST_CASE("random grid input: unitarity and exchange symmetry")
{
    const double G = 0.004;
    const auto c = Coupling::isotropic(G, Envelope::lorentzian(0.01));
    const auto grid = FrequencyGrid::make(0.98, 1.02, 101, 0.5, 301);
    GridState s(grid);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0.0, 1.0);
    for (auto ch : {PP, MM, PM}) {
        for (auto& v : s.channel(ch).data) {
            v = {n(rng), n(rng)};
        }
    }
    s.channel(MP) = s.channel(PM);
    const auto out = scatter(c, s);
    const auto& g = std::get<GridState>(out.output);
    CHECK(norm2(g) == doctest::Approx(norm2(s)).epsilon(1e-6));
    CHECK(max_abs_diff([&] {
        GridState t = g;
        std::swap(t.channel(PM), t.channel(MP));
        return t;
    }(), g) < 1e-12);
    CHECK_FALSE(out.warnings.empty());  // Lorentzian tail beyond the Δ range
}

TEST_CASE("closed form agrees with the general formula")
{
    const double G = 0.004;
    const double a = 0.02;
    const auto c = Coupling::isotropic(G, Envelope::gaussian(a));
    const auto grid = FrequencyGrid::make(1.0 - 20 * G, 1.0 + 20 * G, 161, 0.2, 201);
    for (double split : {0.0, 0.01, 0.05}) {
        const auto s = gaussian_pair_input(a, 0.5 + split / 2, 0.5 - split / 2);
        const GridState ref = scatter(c, s).on_grid(grid);
        const auto closed = gaussian_closed_form(c, a, 0.5 + split / 2, 0.5 - split / 2, grid);
        CHECK(max_abs_diff(ref, std::get<GridState>(closed.output)) < 1e-8 * max_abs(ref));
    }
    CHECK(gaussian_pair_overlap(a, a, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(
        gaussian_closed_form(Coupling::isotropic(G, Envelope::lorentzian(a)), a, 0.5, 0.5, grid),
        Error);
}

TEST_CASE("closed form: reflected spectrum anticorrelated, transmitted correlated")
{
    const double G = 0.004;
    const double a = 0.02;
    const auto c = Coupling::isotropic(G, Envelope::gaussian(a));
    const auto grid = FrequencyGrid::make(1.0 - 20 * G, 1.0 + 20 * G, 321, 0.12, 241);
    const auto out = gaussian_closed_form(c, a, 0.5, 0.5, grid);
    const auto& g = std::get<GridState>(out.output);
    auto density = [&](DirectionPair ch) {
        std::vector<double> d;
        for (auto v : g.channel(ch).data) {
            d.push_back(std::norm(v));
        }
        return d;
    };
    CHECK(joint_correlation(grid, density(MM)) < -0.5);
    CHECK(joint_correlation(grid, density(PM)) < -0.5);
    CHECK(joint_correlation(grid, density(PP), 0.0) > 0.0);
}

TEST_CASE("far detuned input passes almost unchanged")
{
    const double G = 0.004;
    const auto c = Coupling::isotropic(G, Envelope::gaussian(0.02));
    const auto s = gaussian_pair_input(G / 100, 0.5 + 25 * G, 0.5 + 25 * G);
    const auto p = channel_probabilities(scatter(c, s), s);
    CHECK(std::abs(p[PP] - 1.0) < 1e-3);
    CHECK(p[MM] + p[PM] + p[MP] < 1e-3);
    // Amplitude-level deviation is |Θ| ≈ 1/(2 * detuning/Γ).
    const auto s2 = gaussian_pair_input(G / 100, 0.5 + 125 * G, 0.5 + 125 * G);
    const auto out = scatter(c, s2);
    const double ref = std::abs(s2.amplitude(PP, 1.0 + 250 * G, 0.0));
    CHECK(std::abs(out.amplitude(PP, 1.0 + 250 * G, 0.0) - s2.amplitude(PP, 1.0 + 250 * G, 0.0)) <
          1e-3 * ref);
}

TEST_CASE("reflection sweep")
{
    const double a = 0.02;
    const std::vector<double> ratios{0.25, 0.5, 1.0, 2.0, 4.0};
    const auto t = reflection_sweep(a, ratios, {0.004, 0.02, 2.0, 2000.0});
    // independent Voigt-type integral with scipy
    CHECK(t.reflection[0][2] == doctest::Approx(0.0289815599904684).epsilon(1e-8));
    CHECK(t.reflection[0][1] == doctest::Approx(0.02318524799237472).epsilon(1e-8));
    CHECK(t.reflection[0][3] == doctest::Approx(0.02318524799237472).epsilon(1e-8));
    for (const auto& row : t.reflection) {
        CHECK(row[0] < row[1]);
        CHECK(row[1] < row[2]);
        CHECK(row[2] > row[3]);
        CHECK(row[3] > row[4]);
    }
    CHECK(t.reflection[3][2] == doctest::Approx(0.25).epsilon(1e-5));
    const auto extreme = reflection_sweep(a, {1e-4, 1e4}, {2000.0});
    CHECK(extreme.reflection[0][0] < 1e-3);
    CHECK(extreme.reflection[0][1] < 1e-3);
}

TEST_CASE("matched filter maximizes reflection")
{
    const double G = 0.004;
    const double beta = 0.02;
    const auto c = Coupling::isotropic(G, Envelope::gaussian(beta));
    double best = 0.0;
    double arg = 0.0;
    for (double r = 0.5; r <= 2.0001; r += 0.05) {
        const SeparableState s{PP, Profile::gaussian(1.0, G / 50), Profile::half_gaussian(beta * r)};
        const double R = channel_probabilities(scatter(c, s), s).R();
        if (R > best) {
            best = R;
            arg = r;
        }
    }
    CHECK(arg == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("finite delta limit on a grid")
{
    const double G = 0.004;
    const auto c = Coupling::isotropic(G, Envelope::gaussian(0.02));
    const auto s = gaussian_pair_input(0.002, 0.5, 0.5);
    const auto grid = FrequencyGrid::make(0.97, 1.03, 121, 0.2, 201);
    const auto narrow = scatter(c, s, {false, grid});
    const auto finite = scatter(c, s, {true, grid});
    const auto pn = channel_probabilities(narrow, s);
    const auto pf = channel_probabilities(finite, s);
    CHECK(pf.R() == doctest::Approx(pn.R()).epsilon(1e-10));
    CHECK_THROWS_AS(scatter(c, s, {true, std::nullopt}), Error);
}

TEST_CASE("zero input is rejected")
{
    const auto c = Coupling::isotropic(0.004, Envelope::gaussian(0.02));
    GridState s(FrequencyGrid::make(0.9, 1.1, 11, 0.1, 11));
    CHECK_THROWS_AS(scatter(c, s), Error);
}
