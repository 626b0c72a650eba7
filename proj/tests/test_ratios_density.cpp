#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ffmoments/density.hpp"
#include "ffmoments/errors.hpp"
#include "ffmoments/ratios.hpp"

using namespace ffm;

namespace {

const SweepCache& cache_q3g3() {
    static const SweepCache c = run_sweep(SweepConfig{3, 3, SampleSpec{0, 0, SampleMode::Exhaustive}});
    return c;
}

// Two-term one-ratio conjecture, written out directly. `one_ratio_form` picks
// the one-ratio Euler product for A_D instead of the general closed form.
cplx one_ratio_oracle(cplx a, cplx c, std::uint32_t q, int g, const EulerProductTable& t, bool one_ratio_form) {
    const double Q = q;
    auto zeta = [&](cplx s) { return 1.0 / (1.0 - std::pow(Q, 1.0 - s)); };
    auto A = [&](cplx x) { return one_ratio_form ? a_d_one_ratio(x, c, t) : a_ratios({x}, {c}, t); };
    const cplx first = zeta(1.0 + 2.0 * a) / zeta(1.0 + a + c) * A(a);
    // |D|^-a X(1/2 + a), |D| = q^(2g+1), X(s) = q^(s - 1/2)
    const cplx x = std::pow(Q, -(2.0 * g + 1.0) * a) * std::pow(Q, a);
    const cplx second = x * zeta(1.0 - 2.0 * a) / zeta(1.0 - a + c) * A(-a);
    return (Q - 1.0) * std::pow(Q, 2.0 * g) * (first + second);
}

}  // namespace

TEST_SUITE("ratios-density") {

TEST_CASE("alpha = gamma gives #H on both sides") {
    const SweepCache& c = cache_q3g3();
    const double h = c.params().size_f();
    EulerProductTable t(3);
    for (double r : {0.05, 0.1, 0.2}) {
        RatiosSpec s{{cplx(r, 0.0)}, {cplx(r, 0.0)}};
        CHECK(ratios_empirical(c, s) == cplx(h, 0.0));
        const cplx rhs = ratios_rhs(s, 3, 3, t);
        CHECK(std::abs(rhs - h) <= 1e-12 * h);
    }
    RatiosSpec two{{cplx(0.1, 0.2), cplx(0.05, 0.0)}, {cplx(0.05, 0.0), cplx(0.1, 0.2)}};
    CHECK(ratios_empirical(c, two) == cplx(h, 0.0));
}

TEST_CASE("K = Q = 1 matches the two-term form") {
    for (std::uint32_t q : {3u, 5u}) {
        EulerProductTable t(q);
        for (int g : {2, 4}) {
            for (auto [a, c] : {std::pair{cplx(0.1, 0.0), cplx(0.1, 0.05)}, std::pair{cplx(-0.07, 0.3), cplx(0.12, -0.2)},
                                std::pair{cplx(0.2, -0.5), cplx(0.03, 0.0)}}) {
                const cplx got = ratios_rhs(RatiosSpec{{a}, {c}}, q, g, t);
                const cplx want = one_ratio_oracle(a, c, q, g, t, false);
                CHECK(std::abs(got - want) <= 1e-12 * std::abs(want));
                // the two Euler products differ only by truncation
                const cplx alt = one_ratio_oracle(a, c, q, g, t, true);
                CHECK(std::abs(got - alt) <= 1e-10 * std::abs(alt));
            }
        }
    }
}

TEST_CASE("relabeling and conjugation") {
    EulerProductTable t(3);
    const RatiosSpec s{{cplx(0.1, 0.2), cplx(-0.05, 0.1)}, {cplx(0.15, -0.1), cplx(0.2, 0.0)}};
    const RatiosSpec swapped{{s.alpha[1], s.alpha[0]}, {s.gamma[1], s.gamma[0]}};
    const cplx v = ratios_rhs(s, 3, 3, t);
    CHECK(std::abs(ratios_rhs(swapped, 3, 3, t) - v) <= 1e-12 * std::abs(v));
    CHECK(std::abs(ratios_rhs(s.conj(), 3, 3, t) - std::conj(v)) <= 1e-12 * std::abs(v));

    const SweepCache& c = cache_q3g3();
    const cplx e = ratios_empirical(c, s);
    CHECK(std::abs(ratios_empirical(c, s.conj()) - std::conj(e)) <= 1e-12 * std::abs(e));
}

TEST_CASE("shift validation") {
    EulerProductTable t(3);
    CHECK_THROWS_AS(ratios_rhs(RatiosSpec{{}, {}}, 3, 2, t), DomainError);
    CHECK_THROWS_AS(ratios_rhs(RatiosSpec{{0.1, 0.1, 0.1}, {0.1}}, 3, 2, t), DomainError);
    CHECK_THROWS_AS(ratios_rhs(RatiosSpec{{0.1}, {-0.1}}, 3, 2, t), DomainError);
    CHECK_THROWS_AS(ratios_rhs(RatiosSpec{{0.3}, {0.1}}, 3, 2, t), DomainError);
    CHECK_THROWS_AS(ratios_rhs(RatiosSpec{{cplx(0.1, 3.0)}, {0.1}}, 3, 2, t), DomainError);
}

TEST_CASE("one-ratio empirical at q = 3, g = 3") {
    EulerProductTable t(3);
    const RatiosSpec s{{cplx(0.1, 0.0)}, {cplx(0.1, 0.05)}};
    const cplx e = ratios_empirical(cache_q3g3(), s);
    const cplx r = ratios_rhs(s, 3, 3, t);
    CHECK(std::abs(e / r - 1.0) <= 0.15);
}

TEST_CASE("log-derivative theory") {
    EulerProductTable t(3);
    const int g = 3;
    for (double r : {0.1, 0.15, 0.2}) {
        const double th = logderiv_theory(r, 3, g, t);
        CHECK(std::isfinite(th));
        // d/d alpha of the ratios side at alpha = gamma = r
        const double h = 1e-5;
        const cplx up = ratios_rhs(RatiosSpec{{r + h}, {r}}, 3, g, t);
        const cplx dn = ratios_rhs(RatiosSpec{{r - h}, {r}}, 3, g, t);
        const cplx fd = (up - dn) / (2.0 * h);
        CHECK(std::abs(fd.imag()) <= 1e-8 * std::abs(th));
        CHECK(std::abs(fd.real() - th) <= 1e-8 * std::abs(th));
    }
    const LogDerivPair p = logderiv_pair(0.1, cache_q3g3(), t);
    CHECK(std::isfinite(p.empirical));
    CHECK(std::abs(p.empirical / p.theory - 1.0) <= 0.25);
    CHECK_THROWS_AS(logderiv_theory(0.01, 3, g, t), DomainError);
    CHECK_THROWS_AS(logderiv_theory(0.25, 3, g, t), DomainError);
}

TEST_CASE("test function parsing and kinds") {
    for (const char* spec : {"fejer:1", "trig:1,0.5,-0.25", "indicator:1,0.1"}) {
        const TestFunction h = TestFunction::parse(spec);
        CHECK(h.to_string() == spec);
        CHECK(TestFunction::parse(h.to_string()).params() == h.params());
    }
    CHECK_THROWS_AS(TestFunction::parse("fejer"), std::invalid_argument);
    CHECK_THROWS_AS(TestFunction::parse("fejer:x"), std::invalid_argument);
    CHECK_THROWS_AS(TestFunction::parse("fejer:1,2"), std::invalid_argument);
    CHECK_THROWS_AS(TestFunction::parse("gauss:1"), std::invalid_argument);
    CHECK_THROWS_AS(TestFunction::fejer(0.0), std::invalid_argument);

    const double L = std::log(5.0);
    const TestFunction trig = TestFunction::trig_poly({1.0, 0.5});
    for (double t : {0.0, 0.3, 1.1}) {
        CHECK(trig.unscaled(t, 5, 4) == doctest::Approx(trig.unscaled(t + 2.0 * std::numbers::pi / L, 5, 4)));
        CHECK(trig.unscaled(-t, 5, 4) == trig.unscaled(t, 5, 4));
    }
    const TestFunction fe = TestFunction::fejer(1.0);
    CHECK(fe.scaled(0.0, 5, 4) == 1.0);
    CHECK(fe.scaled(1.0, 5, 4) <= 1e-30);
    // tau = t 2g ln q / (2 pi)
    CHECK(fe.unscaled(0.1, 5, 4) == doctest::Approx(fe.scaled(0.1 * 8.0 * L / (2.0 * std::numbers::pi), 5, 4)));
}

TEST_CASE("density: h = 1 counts every zero") {
    const SweepCache& c = cache_q3g3();
    CHECK(density_empirical(c, TestFunction::trig_poly({1.0})) == 6.0);
    for (std::uint32_t q : {3u, 5u}) {
        EulerProductTable t(q);
        for (int g : {2, 3}) CHECK(density_theory(TestFunction::trig_poly({1.0}), q, g, t) == doctest::Approx(2.0 * g).epsilon(1e-9));
    }
}

TEST_CASE("density: angle flip") {
    SweepCache c = cache_q3g3();
    const TestFunction h = TestFunction::indicator(0.7, 0.2);
    const double before = density_empirical(c, h);
    for (auto& rec : c.records)
        for (auto& th : rec.angles) th = -th;
    CHECK(density_empirical(c, h) == doctest::Approx(before).epsilon(1e-14));
}

TEST_CASE("density integrand") {
    for (std::uint32_t q : {3u, 5u}) {
        EulerProductTable t(q);
        const int g = 3;
        for (double x : {0.01, 0.2, 0.55}) {
            const cplx a = density_integrand(x, q, g, t), b = density_integrand(-x, q, g, t);
            CHECK(std::abs(a - std::conj(b)) <= 1e-10 * std::max(1.0, std::abs(a)));
        }
        // two-term series model near t = 0
        const auto s = density_series(q, g, t);
        for (double x : {1e-4, -1e-4}) {
            const cplx d = density_integrand(x, q, g, t, false);
            CHECK(std::isfinite(d.real()));
            CHECK(std::abs(d - (s[0] + s[1] * x)) <= 10.0 * std::abs(s[2]) * x * x + 1e-9);
        }
        // periodic in pi / ln q
        const double P = std::numbers::pi / std::log(static_cast<double>(q));
        CHECK(std::abs(density_integrand(0.2, q, g, t) - density_integrand(0.2 + P, q, g, t)) <= 1e-10);
    }
}

TEST_CASE("density theory and random-matrix limit") {
    const TestFunction fe = TestFunction::fejer(1.0);
    CHECK(rmt_limit(fe) == doctest::Approx(0.5).epsilon(1e-9));
    for (const char* spec : {"fejer:0.5", "fejer:2", "indicator:1,0.1", "indicator:0.3,0.05"})
        CHECK(rmt_limit(TestFunction::parse(spec)) >= 0.0);
    CHECK_THROWS_AS(rmt_limit(TestFunction::trig_poly({1.0})), DomainError);

    EulerProductTable t(5);
    const double d3 = density_theory(fe, 5, 3, t), d6 = density_theory(fe, 5, 6, t);
    CHECK(std::isfinite(d3));
    CHECK(std::abs(d6 - 0.5) < std::abs(d3 - 0.5));
    CHECK(density_theory(TestFunction::indicator(1.0, 0.1), 5, 3, t) >= 0.0);
}

TEST_CASE("density report on a sample") {
    const SweepCache c = run_sweep(SweepConfig{5, 3, SampleSpec{400, 7, SampleMode::WithoutReplacement}});
    EulerProductTable t(5);
    const DensityReport r = density_report(c, TestFunction::fejer(1.0), t);
    CHECK(r.count == 400);
    CHECK(std::isfinite(r.empirical));
    CHECK(r.std_error > 0.0);
    CHECK(std::abs(r.empirical - r.theory) <= 4.0 * r.std_error + 0.02);
    CHECK(r.rmt == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::isnan(density_report(c, TestFunction::trig_poly({1.0, 0.5}), t).rmt));
}

}  // TEST_SUITE
