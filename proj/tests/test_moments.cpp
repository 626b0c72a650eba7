#include <doctest.h>

#include <cmath>

#include "ffmoments/moments.hpp"

using namespace ffm;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const SweepCache& cache_q3(int g) {
    static std::vector<SweepCache> caches(8);
    auto& c = caches.at(static_cast<std::size_t>(g));
    if (c.records.empty()) c = run_sweep(SweepConfig{3, g, SampleSpec{0, 0, SampleMode::Exhaustive}});
    return c;
}

}  // namespace

TEST_SUITE("moments") {

TEST_CASE("closed-form Q_1") {
    for (std::uint32_t q : {3u, 5u, 7u}) {
        EulerProductTable t(q);
        const MomentPolynomial Q = q1_closed(t);
        const P1Suite s = p1_suite(t);
        REQUIRE(Q.degree() == 1);
        CHECK(Q.leading() == 0.5 * s.p1);
        CHECK(Q.coeffs[0] == doctest::Approx(0.5 * s.p1 * (1 + 4 * s.s)).epsilon(1e-15));
        CHECK(Q.coeffs[0] > 0.0);
        CHECK(leading_coeff(1, t) == doctest::Approx(Q.leading()).epsilon(1e-15));
    }
    CHECK(leading_coeff(2, EulerProductTable(3)) ==
          doctest::Approx(moment_constant(2, EulerProductTable(3)).generic / 24).epsilon(1e-15));
}

TEST_CASE("contour Q_1 and Q_2") {
    for (std::uint32_t q : {3u, 5u, 7u}) {
        EulerProductTable t(q, 30);
        const MomentPolynomial c = q1_closed(t), Q1 = qk_contour(1, t);
        REQUIRE(Q1.degree() == 1);
        for (int m = 0; m <= 1; ++m) CHECK(rel(Q1.coeffs[m], c.coeffs[m]) < 1e-8);

        const MomentPolynomial Q2 = qk_contour(2, t);
        REQUIRE(Q2.degree() == 3);
        CHECK(rel(Q2.leading(), moment_constant(2, t).generic / 24) < 1e-6);
        for (std::size_t m = 0; m < Q2.coeffs.size(); ++m)
            CHECK(std::abs(Q2.imag_residue[m]) <= 1e-8 * std::abs(Q2.coeffs[m]) + 1e-12);

        // node doubling and a second set of radii
        const MomentPolynomial Q2n = qk_contour(2, t, ContourSpec::defaults(2, q, 128));
        ContourSpec wide{2, 64, {0.08, 0.11}};
        const MomentPolynomial Q2r = qk_contour(2, t, wide);
        for (std::size_t m = 0; m < Q2.coeffs.size(); ++m) {
            CHECK(rel(Q2n.coeffs[m], Q2.coeffs[m]) < 1e-9);
            CHECK(rel(Q2r.coeffs[m], Q2.coeffs[m]) < 1e-8);
        }
        ContourSpec wide1{1, 64, {0.15}};
        CHECK(rel(qk_contour(1, t, wide1).coeffs[0], c.coeffs[0]) < 1e-8);
    }
}

TEST_CASE("contour Q_3") {
    EulerProductTable t(3, 30);
    const MomentPolynomial Q3 = qk_contour(3, t, ContourSpec::defaults(3, 3, 32));
    REQUIRE(Q3.degree() == 6);
    CHECK(rel(Q3.leading(), moment_constant(3, t).generic / 2880) < 1e-4);
    CHECK(rel(Q3.leading(), leading_coeff(3, t)) < 1e-4);
    const MomentPolynomial Q3n = qk_contour(3, t, ContourSpec::defaults(3, 3, 64));
    for (std::size_t m = 0; m < Q3.coeffs.size(); ++m) {
        CHECK(Q3.coeffs[m] > 0.0);
        CHECK(rel(Q3n.coeffs[m], Q3.coeffs[m]) < 1e-9);
    }
}

TEST_CASE("contour spec validation") {
    EulerProductTable t(3);
    CHECK_THROWS_AS(qk_contour(2, t, ContourSpec{2, 64, {0.05, 0.04}}), std::invalid_argument);
    CHECK_THROWS_AS(qk_contour(2, t, ContourSpec{2, 64, {0.05, 0.05}}), std::invalid_argument);
    CHECK_THROWS_AS(qk_contour(1, t, ContourSpec{1, 64, {0.3}}), std::invalid_argument);
    CHECK_THROWS_AS(qk_contour(1, t, ContourSpec{2, 64, {0.01, 0.02}}), std::invalid_argument);
    CHECK_THROWS_AS(qk_contour(5, t, ContourSpec::defaults(5, 3)), std::invalid_argument);
    CHECK(ContourSpec::max_radius(3) == doctest::Approx(0.225));
    CHECK(ContourSpec::max_radius(1048573) < 0.225);
    const ContourSpec d = ContourSpec::defaults(3, 5);
    CHECK(d.radii[0] == doctest::Approx(0.04 / std::log(5.0) * (1 + 1 / 6.0)));
    CHECK_NOTHROW(d.validate(5));
}

TEST_CASE("empirical moments") {
    EulerProductTable t(3);
    const SweepCache& c1 = cache_q3(1);
    REQUIRE(c1.records.size() == 18);
    const MomentReport r0 = empirical_moment(c1, moment_polynomial(0, t));
    CHECK(r0.ratio == 1.0);
    CHECK(r0.empirical_sum == 18.0);
    CHECK(r0.predicted == 18.0);
    std::vector<MomentPolynomial> qs;
    for (int k = 0; k <= 3; ++k) qs.push_back(moment_polynomial(k, t));
    for (int g = 1; g <= 3; ++g)
        for (int k = 1; k <= 3; ++k) {
            const MomentPolynomial& Q = qs[k];
            const MomentReport f = empirical_moment(cache_q3(g), Q), e = empirical_moment(cache_q3(g), Q, true);
            CHECK(e.empirical_mean == doctest::Approx(f.empirical_mean).epsilon(1e-12));
            CHECK(f.ratio > 0.0);
            CHECK(f.predicted == doctest::Approx(f.h_size * Q(2 * g + 1)));
        }
    // the first moment sits close to its prediction already at g = 3
    const MomentReport r1 = empirical_moment(cache_q3(3), q1_closed(t));
    CHECK(std::abs(r1.ratio - 1) < 0.1);
    // a sampled cache scales its mean by #H
    SweepCache s = run_sweep(SweepConfig{3, 2, SampleSpec{40, 1, SampleMode::WithReplacement}});
    const MomentReport rs = empirical_moment(s, q1_closed(t));
    CHECK(rs.empirical_sum == doctest::Approx(rs.empirical_mean * 162).epsilon(1e-13));
    CHECK_THROWS_AS(empirical_moment(SweepCache{}, q1_closed(t)), std::invalid_argument);
}

TEST_CASE("shifted moments") {
    EulerProductTable t(3);
    const cplx a(0.1), b(0.13, 0.02), c(-0.07, 0.05);
    const cplx v = shifted_conjecture({a, b, c}, 3, 3, t);
    CHECK(std::abs(shifted_conjecture({c, a, b}, 3, 3, t) - v) < 1e-10 * std::abs(v));
    CHECK(std::abs(shifted_conjecture({b, c, a}, 3, 3, t) - v) < 1e-10 * std::abs(v));
    // the sign sum is even in each shift
    CHECK(std::abs(shifted_conjecture({-a, b, c}, 3, 3, t) - v) < 1e-10 * std::abs(v));
    CHECK_THROWS_AS(shifted_conjecture({0.0}, 3, 3, t), DomainError);
    CHECK_THROWS_AS(shifted_conjecture({0.1, -0.1}, 3, 3, t), DomainError);
    CHECK_THROWS_AS(shifted_conjecture({0.1, 0.1}, 3, 3, t), DomainError);

    // alpha = (s, 2s, ..) -> 0 recovers #H Q_k(2g + 1)
    for (int k = 1; k <= 2; ++k) {
        const MomentPolynomial Q = moment_polynomial(k, t);
        const double want = 1458.0 * Q(7);
        double prev = 1e300;
        for (double s : {1e-2, 1e-3, 1e-4}) {
            std::vector<cplx> al;
            for (int j = 1; j <= k; ++j) al.push_back(j * s);
            const cplx got = shifted_conjecture(al, 3, 3, t);
            const double err = std::abs(got - want) / want;
            CHECK(err < prev);
            CHECK(std::abs(got.imag()) < 1e-9 * want);
            prev = err;
        }
        CHECK(prev < 1e-5);
    }

    const SweepCache& c3 = cache_q3(3);
    const cplx emp = shifted_empirical(c3, {0.1});
    const cplx con = shifted_conjecture({0.1}, 3, 3, t);
    CHECK(std::abs(emp / con - 1.0) < 0.15);
    // Z_L(1/2 + it) is real, and so is the conjecture for imaginary shifts
    CHECK(std::abs(shifted_empirical(c3, {cplx(0, 0.3)}).imag()) < 1e-9);
    CHECK(std::abs(shifted_conjecture({cplx(0, 0.3)}, 3, 3, t).imag()) < 1e-9);
}

}  // TEST_SUITE
