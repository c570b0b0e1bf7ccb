#include <doctest.h>

#include "quadwg/errors.hpp"
#include "quadwg/gate.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace quadwg;

namespace {

constexpr double kGamma = 0.004;

// Brute-force minimum of |1 - x q|² over n + 1 equally spaced x in [0, 1].
std::pair<double, double> grid_minimum(Complex q, int n)
{
    double best = std::numeric_limits<double>::infinity();
    double arg = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double x = static_cast<double>(k) / n;
        const double v = std::norm(1.0 - x * q);
        if (v < best) {
            best = v;
            arg = x;
        }
    }
    return {best, arg};
}

// 1 + O for a Gaussian |f|² = exp(-ν²/s²)/(s√π), via
// ∫ e^{-x²/s²}/(x² + h²) dx = (π/h) e^{h²/s²} erfc(h/s).
double gaussian_shift(double s, double h)
{
    const double z = h / s;
    return 2.0 - 2.0 * std::sqrt(std::numbers::pi) * z * std::exp(z * z) * std::erfc(z);
}

}  // namespace

TEST_CASE("mirror bracket")
{
    CHECK(std::abs(mirror_bracket(kGamma, 1.0, 1.0) - Complex(-1.0, 0.0)) < 1e-15);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double nu = 50.0 * kGamma * U(rng);
        CHECK(std::abs(mirror_bracket(kGamma, 1.0, 1.0 + nu)) == doctest::Approx(1.0).epsilon(1e-14));
    }
    for (double s : {-10.0, 10.0}) {
        const Complex b = mirror_bracket(kGamma, 1.0, 1.0 + s * kGamma);
        // Unit modulus: the residual departure from +1 is a 0.1 rad phase.
        CHECK(std::abs(b.real() - 1.0) < 5e-3);
    }
    const auto f = PulseShape::gaussian(1.0, kGamma);
    const auto r = mirror_reflection(f, kGamma);
    CHECK(std::abs(r(1.0) + f(1.0)) < 1e-12);
}

TEST_CASE("pulse shapes are normalized with the requested FWHM")
{
    for (FwhmOn on : {FwhmOn::Amplitude, FwhmOn::Density}) {
        for (const auto& p : {PulseShape::gaussian(1.0, 0.01, on), PulseShape::lorentzian(1.0, 0.01, on)}) {
            auto d = [&](double w) { return p(w) * p(w); };
            const double n = quad::integrate_around(RealFn(d), 1.0, p.scale(), -INFINITY, INFINITY);
            CHECK(n == doctest::Approx(1.0).epsilon(1e-10));
            const double peak = on == FwhmOn::Amplitude ? p(1.0) : d(1.0);
            const double edge = on == FwhmOn::Amplitude ? p(1.005) : d(1.005);
            CHECK(edge == doctest::Approx(0.5 * peak).epsilon(1e-12));
        }
    }
    std::vector<double> xs, ys;
    const auto g = PulseShape::gaussian(1.0, 0.01);
    for (int k = -2000; k <= 2000; ++k) {
        xs.push_back(1.0 + 2e-5 * k);
        ys.push_back(g(xs.back()));
    }
    const auto t = PulseShape::tabulated(xs, ys);
    CHECK(t.fwhm() == doctest::Approx(0.01).epsilon(1e-4));
    CHECK(t.center() == doctest::Approx(1.0));
    CHECK(t(1.0) == doctest::Approx(g(1.0)).epsilon(1e-5));
    CHECK(std::abs(gate_overlap(t, kGamma) - gate_overlap(g, kGamma)) < 1e-5);
    CHECK_THROWS_AS(PulseShape::tabulated({0.0, 1.0}, {0.0, 0.0}), Error);
    CHECK_THROWS_AS(PulseShape::tabulated({1.0, 0.0}, {1.0, 1.0}), Error);
    CHECK_THROWS_AS(PulseShape::tabulated({0.0, 1.0}, {-1.0, 1.0}), Error);
    CHECK_THROWS_AS(PulseShape::gaussian(1.0, 0.0), Error);
}

TEST_CASE("lorentzian overlap matches its closed form")
{
    // 1 + O = 2a²/(a + Γ/2)² for f ∝ 1/(ν² + a²).
    for (double ratio : {0.1, 1.0, 3.0, 30.0, 1000.0}) {
        const auto p = PulseShape::lorentzian(1.0, kGamma / ratio);
        const double a = p.scale();
        const double expected = 2.0 * a * a / ((a + 0.5 * kGamma) * (a + 0.5 * kGamma));
        const Complex q = one_plus_overlap(p, kGamma);
        CAPTURE(ratio);
        CHECK(q.real() == doctest::Approx(expected).epsilon(1e-10));
        CHECK(std::abs(q.imag()) < 1e-14);
    }
    // Γ/fwhm = 1: q = 1/2, so F = 1/4.
    CHECK(evaluate_gate(PulseShape::lorentzian(1.0, kGamma), kGamma).worst.fidelity == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("gaussian overlap matches the erfc form and a dense trapezoid")
{
    for (double ratio : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const auto p = PulseShape::gaussian(1.0, kGamma / ratio);
        const double expected = gaussian_shift(p.scale(), 0.5 * kGamma);
        CAPTURE(ratio);
        CHECK(one_plus_overlap(p, kGamma).real() == doctest::Approx(expected).epsilon(1e-9));
    }
    const double fwhm = kGamma / 100.0;
    const auto p = PulseShape::gaussian(1.0, fwhm);
    const double step = fwhm / 1e4;
    Complex trap{};
    for (long k = -120000; k <= 120000; ++k) {
        const double w = 1.0 + step * static_cast<double>(k);
        trap += p(w) * p(w) * mirror_bracket(kGamma, 1.0, w) * step;
    }
    const Complex o = gate_overlap(p, kGamma);
    CHECK(std::abs(o - trap) < 1e-10);
    // Regression value.
    CHECK(o.real() == doctest::Approx(-0.99992787).epsilon(1e-8));
    CHECK(std::abs(o.imag()) < 1e-12);
}

TEST_CASE("overlap limits and bounds")
{
    CHECK(std::abs(gate_overlap(PulseShape::gaussian(1.0, 1e-4 * kGamma), kGamma) + 1.0) < 1e-7);
    CHECK(std::abs(gate_overlap(PulseShape::gaussian(1.0, 1e3 * kGamma), kGamma) - 1.0) < 5e-3);
    CHECK(std::abs(gate_overlap(PulseShape::lorentzian(1.0, 1e3 * kGamma), kGamma) - 1.0) < 5e-3);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> xs, ys;
        const double width = kGamma * std::pow(10.0, 2.0 * U(rng) - 1.0);
        const double offset = kGamma * (U(rng) - 0.5);
        for (int k = 0; k < 40; ++k) {
            xs.push_back(1.0 + offset + width * (k - 20) / 10.0);
            ys.push_back(U(rng));
        }
        const auto p = PulseShape::tabulated(xs, ys);
        CHECK(std::abs(gate_overlap(p, kGamma)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("quadrature window")
{
    const auto p = PulseShape::gaussian(1.0, kGamma);
    GateOptions opts;
    opts.window = std::make_pair(1.0 - 50.0 * kGamma, 1.0 + 50.0 * kGamma);
    CHECK(std::abs(gate_overlap(p, kGamma, opts) - gate_overlap(p, kGamma)) < 1e-9);
    opts.window = std::make_pair(1.0 + kGamma, 1.1);
    CHECK_THROWS_AS(gate_overlap(p, kGamma, opts), Error);
    opts.window = std::make_pair(1.0 - 0.2 * kGamma, 1.0 + 50.0 * kGamma);
    try {
        gate_overlap(p, kGamma, opts);
        FAIL("expected Truncation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Truncation);
    }
}

TEST_CASE("worst-case fidelity")
{
    auto w = worst_case_fidelity(-1.0);
    CHECK(w.fidelity == 1.0);
    CHECK(w.x_star == 1.0);
    w = worst_case_fidelity(1.0);
    CHECK(w.fidelity == doctest::Approx(0.0).scale(1e-15));
    CHECK(w.x_star == doctest::Approx(0.5));

    std::mt19937 rng(9);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<Complex> overlaps = {Complex(-0.9, 0.1), Complex(0.3, 0.0), Complex(0.0, 0.9)};
    for (int k = 0; k < 40; ++k) {
        overlaps.push_back(std::polar(std::sqrt(U(rng)), 6.283185307179586 * U(rng)));
    }
    for (Complex o : overlaps) {
        const auto wc = worst_case_fidelity(o);
        const auto [best, arg] = grid_minimum(1.0 + o, 100000);
        CAPTURE(o);
        CHECK(std::abs(wc.fidelity - best) < 1e-10);
        CHECK(wc.fidelity <= best + 1e-15);
        CHECK(wc.infidelity == doctest::Approx(1.0 - wc.fidelity).scale(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(worst_case_fidelity(Complex(1.1, 0.0)), Error);
}

TEST_CASE("only |d|² of the logical state matters")
{
    // Full-state fidelity |⟨ideal|actual⟩|² with ideal = (a, b, c, -d) and
    // actual = (a, b, c, O d) never drops below the worst case.
    std::mt19937 rng(13);
    std::normal_distribution<double> N(0.0, 1.0);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const Complex o(-0.8, 0.35);
    const auto wc = worst_case_fidelity(o);
    double lowest = 1.0;
    for (int k = 0; k < 20000; ++k) {
        std::array<Complex, 4> s;
        double n = 0.0;
        for (auto& z : s) {
            z = {N(rng), N(rng)};
            n += std::norm(z);
        }
        // |d|² uniform on [0, 1], the rest random.
        const double x = U(rng);
        const double rest = n - std::norm(s[3]);
        for (int i = 0; i < 3; ++i) {
            s[i] *= std::sqrt((1.0 - x) / rest);
        }
        s[3] *= std::sqrt(x / std::norm(s[3]));
        const Complex inner = std::norm(s[0]) + std::norm(s[1]) + std::norm(s[2]) + std::conj(-s[3]) * (o * s[3]);
        const double F = std::norm(inner);
        CHECK(F == doctest::Approx(std::norm(1.0 - std::norm(s[3]) * (1.0 + o))).epsilon(1e-12));
        CHECK(F >= wc.fidelity - 1e-12);
        lowest = std::min(lowest, F);
    }
    CHECK(lowest - wc.fidelity < 1e-3);
}

TEST_CASE("truth table")
{
    const auto p = PulseShape::gaussian(1.0, kGamma / 100.0);
    const auto tt = truth_table(p, kGamma);
    for (Complex s : tt.single) {
        CHECK(s == Complex(1.0, 0.0));
    }
    CHECK(std::abs(tt.split.n20) == doctest::Approx(std::sqrt(0.5)));
    CHECK(std::abs(tt.split.n02) == doctest::Approx(std::sqrt(0.5)));
    CHECK(std::abs(tt.split.n11) < 1e-15);
    CHECK(std::abs(tt.c11() - tt.overlap) < 1e-14);
    CHECK(tt.output.norm2() == doctest::Approx(std::norm(tt.overlap)).epsilon(1e-12));
    CHECK(std::abs(truth_table(PulseShape::gaussian(1.0, 1e-4 * kGamma), kGamma).c11() + 1.0) < 1e-7);

    GateOptions opts;
    opts.splitting = 0.3;
    const auto un = truth_table(p, kGamma, opts);
    const double t2 = 0.3, r2 = 0.7;
    CHECK(std::abs(un.c11() - (4.0 * t2 * r2 * un.overlap + (t2 - r2) * (t2 - r2))) < 1e-14);

    std::mt19937 rng(17);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const TwoPhotonModes s{{N(rng), N(rng)}, {N(rng), N(rng)}, {N(rng), N(rng)}};
        const double ratio = 0.5 + 0.5 * std::tanh(N(rng));
        const auto out = beam_splitter(s, ratio);
        CHECK(out.norm2() == doctest::Approx(s.norm2()).epsilon(1e-13));
        const auto back = beam_splitter(out, ratio, true);
        CHECK(std::abs(back.n20 - s.n20) + std::abs(back.n11 - s.n11) + std::abs(back.n02 - s.n02) < 1e-13);
    }
}

TEST_CASE("infidelity sweep")
{
    const auto ratios = logspace(0.0, 3.0, 31);
    const auto rows = infidelity_sweep(ratios);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].gaussian.worst.fidelity > rows[k - 1].gaussian.worst.fidelity);
        CHECK(rows[k].lorentzian.worst.fidelity > rows[k - 1].lorentzian.worst.fidelity);
        CHECK(rows[k].gaussian.worst.infidelity < rows[k - 1].gaussian.worst.infidelity);
    }
    for (const auto& r : rows) {
        if (r.gamma_over_fwhm >= 10.0) {
            CHECK(r.gaussian.worst.fidelity >= r.lorentzian.worst.fidelity);
        }
    }
    CHECK(rows.back().gaussian.worst.infidelity < 1e-3);
    CHECK(rows.back().lorentzian.worst.infidelity < 1e-3);
    // Endpoint regressions.
    CHECK(rows.back().gaussian.worst.infidelity == doctest::Approx(1.4427e-6).epsilon(1e-3));
    CHECK(rows.back().lorentzian.worst.infidelity == doctest::Approx(3.992e-6).epsilon(1e-3));
    CHECK(rows.front().lorentzian.worst.fidelity == doctest::Approx(0.25).epsilon(1e-10));
}
