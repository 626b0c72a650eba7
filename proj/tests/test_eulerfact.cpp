#include <doctest.h>

#include <cmath>

#include "ffmoments/eulerfact.hpp"
#include "oracles.hpp"

using namespace ffm;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_SUITE("eulerfact") {

TEST_CASE("zeta_A closed form and Laurent data") {
    ZetaA z(3);
    CHECK(std::abs(z(2.0) - 1.5) < 1e-15);
    CHECK_THROWS_AS(z(1.0), DomainError);
    CHECK_THROWS_AS(z(cplx(1.0, 2 * M_PI / std::log(3.0))), DomainError);
    CHECK(z.inverse(1.0) == cplx(0.0));
    const double L = std::log(3.0);
    for (double h : {1e-4, 1e-6}) CHECK(std::abs(h * z(1.0 + h) - 1.0 / L) < 2 * h);
    auto c = z.shifted_laurent(3);
    REQUIRE(c.size() == 5);
    CHECK(c[0] == doctest::Approx(1.0 / L));
    CHECK(c[1] == 0.5);
    CHECK(c[2] == doctest::Approx(L / 12.0).epsilon(1e-14));
    CHECK(c[3] == 0.0);
    CHECK(c[4] == doctest::Approx(-std::pow(L, 3) / 720.0).epsilon(1e-14));
    for (double ang = 0.0; ang < 6.2; ang += 0.7) {
        const cplx s = 1e-3 * std::polar(1.0, ang);
        const cplx model = c[0] / s + c[1] + c[2] * s;
        CHECK(std::abs(z(1.0 + s) - model) < 1e-9);
        // log-derivative against a centered difference
        const cplx w = cplx(1.3, 0.4) + s;
        const double h = 1e-5;
        const cplx fd = (std::log(z(w + h)) - std::log(z(w - h))) / (2 * h);
        CHECK(std::abs(z.log_deriv(w) - fd) < 1e-8);
    }
}

TEST_CASE("a_shift against the enumerated product") {
    const FieldCtx F(3);
    EulerProductTable t6(3, 6);
    const std::vector<std::vector<cplx>> shifts{
        {0.0}, {cplx(0.1, 0.2)}, {cplx(-0.05, 0.3), cplx(0.07, -0.1)},
        {0.02, cplx(0.0, 0.25), cplx(-0.1, 0.05)}};
    for (const auto& z : shifts) {
        const cplx want = oracle::product_over_primes(
            F, 6, [&](double X) { return oracle::a_shift_factor(X, z); });
        CHECK(rel(a_shift(z, t6), want) < 1e-12);
    }
    EulerProductTable t(3);
    const std::vector<cplx> z{cplx(0.1, 0.2), cplx(-0.05, 0.1), 0.03};
    const cplx a = a_shift(z, t);
    CHECK(rel(a_shift({z[2], z[0], z[1]}, t), a) < 1e-14);
    CHECK(rel(a_shift({z[1], z[2], z[0]}, t), a) < 1e-14);
    CHECK_THROWS_AS(a_shift({0.6}, t), DomainError);
}

TEST_CASE("P(1) suite") {
    for (std::uint32_t q : {3u, 5u, 7u}) {
        EulerProductTable t(q);
        P1Suite s = p1_suite(t);
        CHECK(s.p1 > 0.0);
        CHECK(s.p1 < 1.0);
        CHECK(std::abs(a_shift({0.0}, t).real() - s.p1) < 1e-12);
        CHECK(s.a_prime == doctest::Approx(s.p1 * 2 * t.log_q() * s.s));
        // A'(1/2; 0) by a centered difference of a_shift
        const double h = 1e-4;
        const double fd = (a_shift({h}, t) - a_shift({-h}, t)).real() / (2 * h);
        CHECK(std::abs(fd - s.a_prime) < 1e-6);
    }
    const FieldCtx F(3);
    EulerProductTable t6(3, 6);
    const double s_enum = oracle::sum_over_primes(
        F, 6, [](double X, int d) { return d / (X * (X + 1.0) - 1.0); });
    CHECK(std::abs(p1_suite(t6).s - s_enum) < 1e-12);
    CHECK(p1_suite(EulerProductTable(3)).tail_log_p1 < 1e-12);
}

TEST_CASE("moment constants, two evaluations") {
    for (std::uint32_t q : {3u, 5u, 7u}) {
        EulerProductTable t(q, 30);
        for (int k = 1; k <= 3; ++k) {
            MomentConstant m = moment_constant(k, t);
            CHECK(std::abs(m.generic - m.closed_form) < 1e-10);
            CHECK(m.generic > 0.0);
            CHECK(m.generic < 1.0);
        }
        CHECK(moment_constant(1, t).generic == doctest::Approx(p1_suite(t).p1).epsilon(1e-13));
    }
}

TEST_CASE("Y factor") {
    ZetaA z(3);
    const cplx a(0.1, 0.05), g(0.07, -0.02);
    CHECK(rel(y_factor({a}, {g}, z), z(1.0 + 2.0 * a) / z(1.0 + a + g)) < 1e-14);
    CHECK(std::abs(y_factor({a}, {a}, z) - (z(1.0 + 2.0 * a) / z(1.0 + 2.0 * a))) < 1e-14);
    CHECK(rel(y_factor({a}, {}, z), z(1.0 + 2.0 * a)) < 1e-15);
    // second ratios term at alpha = gamma: 1/zeta_A(1) = 0 keeps Y finite
    CHECK(std::abs(y_factor({-a}, {a}, z)) == 0.0);
    CHECK_THROWS_AS(y_factor({0.0}, {}, z), DomainError);
}

TEST_CASE("A_D closed form and one-ratio form") {
    EulerProductTable t(3);
    const std::vector<std::pair<cplx, cplx>> pts{
        {0.1, cplx(0.1, 0.05)}, {cplx(-0.07, 0.2), 0.15}, {cplx(0.0, 0.3), cplx(0.0, -0.3)}};
    for (auto [a, g] : pts) CHECK(rel(a_ratios({a}, {g}, t), a_d_one_ratio(a, g, t)) < 1e-12);
    for (double r : {0.05, 0.1}) {
        CHECK(std::abs(a_ratios({r}, {r}, t) - 1.0) < 1e-12);
        CHECK(std::abs(a_d_one_ratio(r, r, t) - 1.0) < 1e-12);
    }
    CHECK(std::abs(a_d_one_ratio(0.0, 0.0, t) - 1.0) < 1e-12);

    const FieldCtx F(3);
    EulerProductTable t6(3, 6);
    const cplx al(0.05, 0.1), ga(0.12, -0.04), al2(-0.03, 0.0);
    const cplx want = oracle::product_over_primes(
        F, 6, [&](double X) { return oracle::a_ratios_factor(X, {al, al2}, {ga}); });
    CHECK(rel(a_ratios({al, al2}, {ga}, t6), want) < 1e-12);
    // no gammas, one alpha at 0: the k = 1 moment factor
    const cplx want0 = oracle::product_over_primes(
        F, 6, [](double X) { return 1.0 - 1.0 / ((X + 1.0) * X); });
    CHECK(rel(a_ratios({0.0}, {}, t6), want0) < 1e-12);
    CHECK_THROWS_AS(a_ratios({0.3}, {0.1}, t), DomainError);
}

TEST_CASE("one-ratio suite") {
    EulerProductTable t(3);
    for (double r : {0.02, 0.1, 0.2}) {
        OneRatioSuite s = one_ratio_suite(r, r, r, t);
        CHECK(std::abs(s.a_d - 1.0) < 1e-12);
        CHECK(s.a_d_prime.real() > 0.0);
        CHECK(std::abs(s.a_d_prime.imag()) < 1e-15);
        const double h = 1e-5;
        const cplx fd = (a_d_one_ratio(r + h, r, t) - a_d_one_ratio(r - h, r, t)) / (2 * h);
        CHECK(std::abs(fd - s.a_d_prime) < 1e-6);
    }
    const FieldCtx F(3);
    EulerProductTable t6(3, 6);
    const double r = 0.1;
    const double want = oracle::sum_over_primes(F, 6, [&](double X, int d) {
        return d * std::log(3.0) / ((std::pow(X, 1 + 2 * r) - 1.0) * (X + 1.0));
    });
    CHECK(std::abs(a_d_prime(r, t6).real() - want) < 1e-12);
    // A_D(-it; it) factor is 1 + (1 - |P|^(2it)) / (|P|^2 - 1)
    const double tt = 0.7;
    const cplx wantm = oracle::product_over_primes(F, 6, [&](double X) {
        return 1.0 + (1.0 - std::exp(cplx(0, 2 * tt * std::log(X)))) / (X * X - 1.0);
    });
    CHECK(rel(a_d_one_ratio(cplx(0, -tt), cplx(0, tt), t6), wantm) < 1e-12);
}

TEST_CASE("tail bounds") {
    for (int k = 1; k <= 3; ++k) {
        double prev = 1e300;
        for (int N = 10; N <= 40; N += 5) {
            EulerProductTable t(3, N), t10(3, N + 10);
            const double b = moment_tail_bound(k, t);
            CHECK(b < prev);
            prev = b;
            const double diff = std::abs(std::log(moment_constant(k, t).closed_form) -
                                         std::log(moment_constant(k, t10).closed_form));
            CHECK(diff <= b + 4e-16);
        }
    }
    CHECK(moment_tail_bound(1, EulerProductTable(3, 30)) < 1e-12);
    CHECK(shift_tail_bound(2, 0.5, EulerProductTable(3, 30)) == INFINITY);
}

TEST_CASE("a_m is multiplicative over coprime moduli") {
    const FieldCtx F(3);
    CHECK(a_constant(PolyFq::constant(F, 1)) == 1.0);
    CHECK(a_constant(PolyFq::x(F)) == 0.0);
    CHECK(a_constant(PolyFq::monomial(F, 2)) == doctest::Approx(0.75));
    for (int d1 = 0; d1 <= 4; ++d1)
        for (const auto& m1 : oracle::all_monic(F, d1))
            for (int d2 = 0; d1 + d2 <= 4; ++d2)
                for (const auto& m2 : oracle::all_monic(F, d2)) {
                    if (!gcd(m1, m2).is_one()) continue;
                    CHECK(a_constant(m1 * m2) ==
                          doctest::Approx(a_constant(m1) * a_constant(m2)).epsilon(1e-15));
                }
}

}  // TEST_SUITE
