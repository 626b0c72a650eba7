#include "ffmoments/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/factorials.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ffmoments/errors.hpp"
#include "ffmoments/parallel.hpp"

namespace ffm {

namespace mp = boost::multiprecision;
using lcplx = std::complex<long double>;

ContourSpec ContourSpec::defaults(int k, std::uint32_t q, int nodes) {
    ContourSpec s;
    s.k = k;
    s.nodes = nodes;
    const double base = 0.04 / std::log(static_cast<double>(q));
    for (int j = 1; j <= k; ++j) s.radii.push_back(base * (1.0 + j / (2.0 * k)));
    return s;
}

double ContourSpec::max_radius(std::uint32_t q) {
    return 0.9 * std::min(0.25, std::numbers::pi / (2.0 * std::log(static_cast<double>(q))));
}

void ContourSpec::validate(std::uint32_t q) const {
    if (k < 1 || k > kMaxContourK)
        throw std::invalid_argument("contour: k must be in 1.." + std::to_string(kMaxContourK));
    if (nodes < 4) throw std::invalid_argument("contour: need at least 4 nodes per circle");
    if (radii.size() != static_cast<std::size_t>(k)) throw std::invalid_argument("contour: need k radii");
    for (std::size_t j = 0; j < radii.size(); ++j) {
        if (!(radii[j] > 0.0)) throw std::invalid_argument("contour: radii must be positive");
        if (j && !(radii[j - 1] < radii[j])) throw std::invalid_argument("contour: radii must increase");
    }
    if (!(radii.back() < max_radius(q)))
        throw std::invalid_argument("contour: radius " + std::to_string(radii.back()) + " exceeds " +
                                    std::to_string(max_radius(q)));
}

double MomentPolynomial::operator()(double x) const {
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
    return v;
}

MomentPolynomial q1_closed(const EulerProductTable& t) {
    const P1Suite s = p1_suite(t);
    MomentPolynomial Q;
    Q.k = 1;
    Q.coeffs = {0.5 * s.p1 * (1.0 + 4.0 * s.s), 0.5 * s.p1};
    Q.imag_residue = {0.0, 0.0};
    Q.cutoff = t.cutoff();
    return Q;
}

MomentPolynomial qk_contour(int k, const EulerProductTable& t, const ContourSpec& spec, int threads) {
    if (spec.k != k) throw std::invalid_argument("qk_contour: spec is for a different k");
    spec.validate(t.q());
    const int M = spec.nodes;
    const int deg = k * (k + 1) / 2;
    const double L = t.log_q();
    const ZetaA zeta(t.q());

    // (-1)^(k(k-1)/2) 2^k / k!
    const double prefactor =
        ((k * (k - 1) / 2) % 2 ? -1.0 : 1.0) * std::ldexp(1.0, k) / boost::math::factorial<double>(k);

    // Per circle and node: z, q^(-z/2) z^(2-2k). The z^(2-2k) combines 1/z^(2k-1)
    // with the dz = i z dtheta of the trapezoid rule.
    std::vector<std::vector<cplx>> z(k), w(k);
    for (int j = 0; j < k; ++j) {
        for (int n = 0; n < M; ++n) {
            const double th = 2.0 * std::numbers::pi * (n + 0.5) / M;
            const cplx zj = std::polar(spec.radii[j], th);
            z[j].push_back(zj);
            w[j].push_back(std::exp(-0.5 * L * zj) * std::pow(zj, 2 - 2 * k));
        }
    }
    std::vector<double> inv_fact(deg + 1);
    for (int m = 0; m <= deg; ++m) inv_fact[m] = 1.0 / boost::math::factorial<double>(m);

    std::size_t inner = 1;
    for (int j = 1; j < k; ++j) inner *= static_cast<std::size_t>(M);
    // One partial sum per node of the first circle, reduced in order below.
    std::vector<std::vector<lcplx>> partial(static_cast<std::size_t>(M), std::vector<lcplx>(deg + 1));
    parallel_for(static_cast<std::size_t>(M), threads, [&](std::size_t n0) {
        std::vector<int> idx(k, 0);
        std::vector<cplx> zz(k);
        auto& acc = partial[n0];
        for (std::size_t r = 0; r < inner; ++r) {
            idx[0] = static_cast<int>(n0);
            std::size_t rest = r;
            for (int j = 1; j < k; ++j) {
                idx[j] = static_cast<int>(rest % M);
                rest /= M;
            }
            cplx val = prefactor;
            cplx sum = 0.0;
            for (int j = 0; j < k; ++j) {
                zz[j] = z[j][idx[j]];
                val *= w[j][idx[j]];
                sum += zz[j];
            }
            for (int i = 0; i < k; ++i)
                for (int j = i; j < k; ++j) {
                    val *= zeta(1.0 + zz[i] + zz[j]);
                    if (j > i) {
                        const cplx d = zz[j] * zz[j] - zz[i] * zz[i];
                        val *= d * d;
                    }
                }
            val *= a_shift(zz, t);
            // q^(x/2 sum z) = sum_m x^m ((L/2) sum z)^m / m!
            const cplx e = 0.5 * L * sum;
            cplx pw = 1.0;
            for (int m = 0; m <= deg; ++m) {
                acc[m] += lcplx(val * pw * inv_fact[m]);
                pw *= e;
            }
        }
    });

    std::vector<lcplx> total(deg + 1);
    for (const auto& p : partial)
        for (int m = 0; m <= deg; ++m) total[m] += p[m];
    const long double norm = std::pow(static_cast<long double>(M), k);

    MomentPolynomial Q;
    Q.k = k;
    Q.cutoff = t.cutoff();
    Q.nodes = M;
    Q.radii = spec.radii;
    for (int m = 0; m <= deg; ++m) {
        const double re = static_cast<double>(total[m].real() / norm);
        const double im = static_cast<double>(total[m].imag() / norm);
        if (std::abs(im) > 1e-8 * std::abs(re) + 1e-12)
            throw NumericalFailure("qk_contour: coefficient " + std::to_string(m) + " has imaginary part " +
                                   std::to_string(im));
        Q.coeffs.push_back(re);
        Q.imag_residue.push_back(im);
    }
    if (!(Q.leading() > 0.0)) throw NumericalFailure("qk_contour: leading coefficient is not positive");
    return Q;
}

MomentPolynomial qk_contour(int k, const EulerProductTable& t, int threads) {
    return qk_contour(k, t, ContourSpec::defaults(k, t.q()), threads);
}

MomentPolynomial moment_polynomial(int k, const EulerProductTable& t, int threads) {
    if (k < 0) throw std::invalid_argument("moment_polynomial: k must be >= 0");
    if (k == 0) {
        MomentPolynomial Q;
        Q.coeffs = {1.0};
        Q.imag_residue = {0.0};
        Q.cutoff = t.cutoff();
        return Q;
    }
    if (k == 1) return q1_closed(t);
    return qk_contour(k, t, threads);
}

double leading_coeff(int k, const EulerProductTable& t) {
    if (k < 1) throw std::invalid_argument("leading_coeff: k must be >= 1");
    double f = 1.0;
    for (int j = 1; j <= k; ++j)
        f *= boost::math::factorial<double>(j) / boost::math::factorial<double>(2 * j);
    return moment_constant(k, t).generic * f;
}

double sum_scale(const SweepCache& cache) {
    if (cache.records.empty()) throw std::invalid_argument("empty cache");
    return cache.params().size_f() / static_cast<double>(cache.records.size());
}

namespace {

// x^k for x = a + b sqrt(q), as (a, b).
std::pair<BigInt, BigInt> pow_sqrt(const BigInt& a, const BigInt& b, const BigInt& q, int k) {
    BigInt ra = 1, rb = 0;
    for (int i = 0; i < k; ++i) {
        BigInt na = ra * a + rb * b * q;
        rb = ra * b + rb * a;
        ra = std::move(na);
    }
    return {ra, rb};
}

}  // namespace

MomentReport empirical_moment(const SweepCache& cache, const MomentPolynomial& Q, bool exact) {
    if (cache.records.empty()) throw std::invalid_argument("empirical_moment: empty cache");
    const int k = Q.k;
    MomentReport r;
    r.q = cache.header.q;
    r.g = cache.header.g;
    r.k = k;
    r.count = cache.records.size();
    r.mode = cache.header.mode;
    r.seed = cache.header.seed;
    r.exact = exact;
    r.h_size = cache.params().size_f();

    std::vector<double> vals;
    vals.reserve(cache.records.size());
    for (const auto& rec : cache.records) vals.push_back(std::pow(rec.central, k));
    const Expectation e = expectation(vals);
    r.empirical_mean = e.mean;
    r.std_error = e.std_error;

    if (exact) {
        // L(1/2) = (o + e sqrt q) / (q^g sqrt q)
        const FieldCtx F = cache.field();
        const BigInt q = cache.header.q;
        BigInt A = 0, B = 0;
        for (const auto& rec : cache.records) {
            const CentralValue cv = central_value(rec.lpoly(F));
            auto [a, b] = pow_sqrt(cv.o_num, cv.e_num, q, k);
            A += a;
            B += b;
        }
        using Float = mp::cpp_bin_float_100;
        const Float s = mp::sqrt(Float(q));
        const Float den = mp::pow(mp::pow(Float(q), cache.header.g) * s, k);
        const Float mean = (Float(A) + Float(B) * s) / den / Float(static_cast<double>(r.count));
        r.empirical_mean = static_cast<double>(mean);
    }
    if (exact) {
        r.empirical_sum = r.empirical_mean * r.h_size;
    } else {
        CompensatedSum s;
        for (double v : vals) s.add(v);
        r.empirical_sum = s.value() * sum_scale(cache);
    }
    const double x = 2.0 * cache.header.g + 1.0;
    r.predicted = r.h_size * Q(x);
    r.ratio = r.empirical_mean / Q(x);
    if (!(r.ratio > 0.0)) throw NumericalFailure("empirical_moment: ratio is not positive");
    return r;
}

cplx shifted_conjecture(const std::vector<cplx>& alpha, std::uint32_t q, int g, const EulerProductTable& t) {
    const std::size_t k = alpha.size();
    if (k == 0 || k > 8) throw std::invalid_argument("shifted_conjecture: need 1..8 shifts");
    for (std::size_t i = 0; i < k; ++i) {
        if (std::abs(alpha[i]) < 1e-12) throw DomainError("shifted_conjecture: zero shift");
        for (std::size_t j = i + 1; j < k; ++j)
            if (std::abs(alpha[i] - alpha[j]) < 1e-12 || std::abs(alpha[i] + alpha[j]) < 1e-12)
                throw DomainError("shifted_conjecture: shifts collide");
    }
    const ZetaA zeta(q);
    const double L = std::log(static_cast<double>(q));
    const double logd = (2.0 * g + 1.0) * L;
    std::vector<cplx> b(k);
    lcplx total = 0.0L;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            b[j] = (mask >> j) & 1 ? -alpha[j] : alpha[j];
            s += b[j];
        }
        cplx term = std::exp(-0.5 * L * s + 0.5 * logd * s);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i; j < k; ++j) term *= zeta(1.0 + b[i] + b[j]);
        term *= a_shift(b, t);
        total += lcplx(term);
    }
    const double h = EnsembleParams(FieldCtx(q), g).size_f();
    return h * cplx(static_cast<double>(total.real()), static_cast<double>(total.imag()));
}

cplx shifted_empirical(const SweepCache& cache, const std::vector<cplx>& alpha) {
    if (cache.records.empty()) throw std::invalid_argument("shifted_empirical: empty cache");
    const FieldCtx F = cache.field();
    lcplx total = 0.0L;
    for (const auto& rec : cache.records) {
        const LPolynomial L = rec.lpoly(F);
        cplx v = 1.0;
        for (const auto& a : alpha) v *= z_value(L, 0.5 + a);
        total += lcplx(v);
    }
    return sum_scale(cache) * cplx(static_cast<double>(total.real()), static_cast<double>(total.imag()));
}

}  // namespace ffm
