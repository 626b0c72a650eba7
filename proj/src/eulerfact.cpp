#include "ffmoments/eulerfact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include "ffmoments/errors.hpp"

namespace ffm {

namespace detail {

cplx log1p(cplx d) {
    const double re = d.real(), im = d.imag();
    const double mag = 0.5 * std::log1p(2.0 * re + (re * re + im * im));
    return {mag, std::atan2(im, 1.0 + re)};
}

cplx expm1(cplx w) {
    const double a = w.real(), b = w.imag();
    const double em1 = std::expm1(a);
    const double s = std::sin(0.5 * b);
    // e^a cos b - 1 = expm1(a) cos b - 2 sin^2(b/2)
    return {em1 * std::cos(b) - 2.0 * s * s, (em1 + 1.0) * std::sin(b)};
}

}  // namespace detail

using detail::expm1;
using detail::log1p;

ZetaA::ZetaA(std::uint32_t q) : q_(q), L_(std::log(static_cast<double>(q))) {
    if (q < 2) throw std::invalid_argument("ZetaA: q must be >= 2");
}

cplx ZetaA::inverse(cplx s) const { return -expm1((1.0 - s) * L_); }

cplx ZetaA::operator()(cplx s) const {
    const cplx den = inverse(s);
    if (std::abs(den) < 1e-14)
        throw DomainError("zeta_A: s = " + std::to_string(s.real()) + "+" +
                          std::to_string(s.imag()) + "i is at a pole");
    return 1.0 / den;
}

cplx ZetaA::log_deriv(cplx s) const {
    const cplx x = (1.0 - s) * L_;
    const cplx den = -expm1(x);
    if (std::abs(den) < 1e-14) throw DomainError("zeta_A'/zeta_A: s is at a pole");
    return -L_ * std::exp(x) / den;
}

std::vector<double> ZetaA::shifted_laurent(int order) const {
    if (order < -1) throw std::invalid_argument("shifted_laurent: order must be >= -1");
    // 1/(1 - e^(-x)) = sum_n B_n^+ x^(n-1)/n!, B_1^+ = 1/2
    std::vector<double> c(static_cast<std::size_t>(order) + 2, 0.0);
    c[0] = 1.0 / L_;
    if (order >= 0) c[1] = 0.5;
    for (int n = 2; n <= order + 1; ++n) {
        if (n % 2) continue;
        const double b = boost::math::bernoulli_b2n<double>(n / 2);
        c[n] = b * std::pow(L_, n - 1) / boost::math::factorial<double>(n);
    }
    return c;
}

EulerProductTable::EulerProductTable(std::uint32_t q, int cutoff)
    : q_(q), L_(std::log(static_cast<double>(q))), N_(cutoff) {
    if (cutoff < 1) throw std::invalid_argument("EulerProductTable: cutoff must be >= 1");
    if (!is_prime_u32(q) || q < 3) throw std::invalid_argument("EulerProductTable: q must be an odd prime");
    counts_.assign(static_cast<std::size_t>(N_) + 1, 0.0);
    exact_.assign(static_cast<std::size_t>(N_) + 1, BigInt(0));
    for (int d = 1; d <= N_; ++d) {
        exact_[d] = prime_count(q, d);
        counts_[d] = exact_[d].convert_to<double>();
    }
}

namespace {

void require_re(const std::vector<cplx>& v, double bound, const char* who) {
    for (const auto& z : v)
        if (!(std::abs(z.real()) < bound) || !std::isfinite(z.imag()))
            throw DomainError(std::string(who) + ": shift real part " + std::to_string(z.real()) +
                              " outside (-" + std::to_string(bound) + ", " +
                              std::to_string(bound) + ")");
}

// Per-degree log of the closed-form ratios factor at |P| = X. xs[k] = X^(-1/2-alpha_k),
// ys[m] = X^(-1/2-gamma_m). With no gammas this is the A(1/2; z) factor.
cplx log_ratio_factor(double X, const cplx* xs, std::size_t K, const cplx* ys, std::size_t Q) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < K; ++j)
        for (std::size_t k = j; k < K; ++k) acc += log1p(-xs[j] * xs[k]);
    for (std::size_t m = 0; m < Q; ++m)
        for (std::size_t r = m + 1; r < Q; ++r) acc += log1p(-ys[m] * ys[r]);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t m = 0; m < Q; ++m) acc -= log1p(-xs[k] * ys[m]);

    // (1/2)(f(x) + f(-x)) = even part of prod(1 + y t) prod(1 - x t), over prod(1 - x^2).
    std::array<cplx, 16> r{};
    r[0] = 1.0;
    std::size_t deg = 0;
    auto mul_linear = [&](cplx c) {
        for (std::size_t i = deg + 1; i-- > 0;) r[i + 1] += c * r[i];
        ++deg;
    };
    for (std::size_t m = 0; m < Q; ++m) mul_linear(ys[m]);
    for (std::size_t k = 0; k < K; ++k) mul_linear(-xs[k]);
    cplx even = 0.0;
    for (std::size_t i = 2; i <= deg; i += 2) even += r[i];
    cplx lb = log1p(even);
    for (std::size_t k = 0; k < K; ++k) lb -= log1p(-xs[k] * xs[k]);
    // [mid + 1/X]/(1 + 1/X) = 1 + (mid - 1)/(1 + 1/X)
    acc += log1p(expm1(lb) / (1.0 + 1.0 / X));
    return acc;
}

cplx ratio_product(const std::vector<cplx>& alpha, const std::vector<cplx>& gamma,
                   const EulerProductTable& t) {
    const std::size_t K = alpha.size(), Q = gamma.size();
    if (K + Q > 15) throw std::invalid_argument("too many shifts");
    const double L = t.log_q();
    std::vector<cplx> bx(K), by(Q), xs(K, 1.0), ys(Q, 1.0);
    for (std::size_t k = 0; k < K; ++k) bx[k] = std::exp(-L * (0.5 + alpha[k]));
    for (std::size_t m = 0; m < Q; ++m) by[m] = std::exp(-L * (0.5 + gamma[m]));
    double X = 1.0;
    std::complex<long double> total = 0.0L;
    for (int d = 1; d <= t.cutoff(); ++d) {
        X *= t.q();
        for (std::size_t k = 0; k < K; ++k) xs[k] *= bx[k];
        for (std::size_t m = 0; m < Q; ++m) ys[m] *= by[m];
        const cplx lf = log_ratio_factor(X, xs.data(), K, ys.data(), Q);
        total += std::complex<long double>(t.count(d)) * std::complex<long double>(lf);
    }
    return std::exp(cplx(static_cast<double>(total.real()), static_cast<double>(total.imag())));
}

}  // namespace

cplx a_shift(const std::vector<cplx>& z, const EulerProductTable& t, double margin) {
    require_re(z, 0.5 - margin, "a_shift");
    return ratio_product(z, {}, t);
}

P1Suite p1_suite(const EulerProductTable& t) {
    long double log_p1 = 0.0L, s = 0.0L;
    double X = 1.0;
    for (int d = 1; d <= t.cutoff(); ++d) {
        X *= t.q();
        log_p1 += t.count(d) * std::log1p(-1.0 / ((X + 1.0) * X));
        s += t.count(d) * d / (X * (X + 1.0) - 1.0);
    }
    P1Suite out{};
    out.p1 = std::exp(static_cast<double>(log_p1));
    out.s = static_cast<double>(s);
    out.a_prime = out.p1 * 2.0 * t.log_q() * out.s;
    out.tail_log_p1 = tail_bound(t, 2.0, 2.0);
    // pi(d) d / (X(X+1) - 1) <= 2/X
    double tail = 0.0, Xn = std::pow(static_cast<double>(t.q()), t.cutoff());
    for (int d = t.cutoff() + 1; d < t.cutoff() + 200; ++d) {
        Xn *= t.q();
        tail += 2.0 / Xn;
    }
    out.tail_s = tail;
    return out;
}

MomentConstant moment_constant(int k, const EulerProductTable& t) {
    if (k < 1) throw std::invalid_argument("moment_constant: k must be >= 1");
    MomentConstant out{};
    out.generic = a_shift(std::vector<cplx>(static_cast<std::size_t>(k), 0.0), t).real();
    if (k > 3) {
        out.closed_form = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    long double acc = 0.0L;
    double X = 1.0;
    for (int d = 1; d <= t.cutoff(); ++d) {
        X *= t.q();
        const double y = 1.0 / X;
        double num = 0.0;
        switch (k) {
            case 1: num = 1.0; break;
            case 2: num = 4.0 - 3.0 * y + y * y; break;
            default:
                num = 12.0 + y * (-23.0 + y * (23.0 + y * (-15.0 + y * (6.0 - y))));
        }
        acc += t.count(d) * std::log1p(-y * y * num / (1.0 + y));
    }
    out.closed_form = std::exp(static_cast<double>(acc));
    return out;
}

cplx y_factor(const std::vector<cplx>& alpha, const std::vector<cplx>& gamma, const ZetaA& z) {
    std::vector<cplx> num, den;
    for (std::size_t j = 0; j < alpha.size(); ++j)
        for (std::size_t k = j; k < alpha.size(); ++k) num.push_back(1.0 + alpha[j] + alpha[k]);
    for (std::size_t m = 0; m < gamma.size(); ++m)
        for (std::size_t r = m + 1; r < gamma.size(); ++r) num.push_back(1.0 + gamma[m] + gamma[r]);
    for (const auto& a : alpha)
        for (const auto& c : gamma) den.push_back(1.0 + a + c);
    // identical arguments cancel exactly, so alpha = gamma gives 1 without rounding
    for (auto d = den.begin(); d != den.end();) {
        auto n = std::find(num.begin(), num.end(), *d);
        if (n == num.end()) {
            ++d;
            continue;
        }
        num.erase(n);
        d = den.erase(d);
    }
    cplx v = 1.0;
    for (const auto& s : num) v *= z(s);
    for (const auto& s : den) v *= z.inverse(s);
    return v;
}

cplx a_ratios(const std::vector<cplx>& alpha, const std::vector<cplx>& gamma,
              const EulerProductTable& t) {
    require_re(alpha, 0.25 + 1e-12, "a_ratios");
    require_re(gamma, 0.25 + 1e-12, "a_ratios");
    return ratio_product(alpha, gamma, t);
}

cplx a_d_one_ratio(cplx alpha, cplx gamma, const EulerProductTable& t) {
    require_re({alpha, gamma}, 0.25 + 1e-12, "a_d_one_ratio");
    const double L = t.log_q();
    std::complex<long double> total = 0.0L;
    double X = 1.0;
    for (int d = 1; d <= t.cutoff(); ++d) {
        X *= t.q();
        const double dl = d * L;
        const cplx p_ag = std::exp(-dl * (1.0 + alpha + gamma));  // |P|^(-1-a-g)
        const cplx p_2a = std::exp(-dl * (1.0 + 2.0 * alpha));    // |P|^(-1-2a)
        const cplx p_ag0 = std::exp(-dl * (alpha + gamma));       // |P|^(-a-g)
        const cplx lf = -log1p(-p_ag) + log1p(-(p_2a + p_ag0) / (X + 1.0));
        total += std::complex<long double>(t.count(d)) * std::complex<long double>(lf);
    }
    return std::exp(cplx(static_cast<double>(total.real()), static_cast<double>(total.imag())));
}

cplx a_d_prime(cplx r, const EulerProductTable& t) {
    require_re({r}, 0.25 + 1e-12, "a_d_prime");
    const double L = t.log_q();
    std::complex<long double> total = 0.0L;
    double X = 1.0;
    for (int d = 1; d <= t.cutoff(); ++d) {
        X *= t.q();
        const cplx term = d * L / ((std::exp(d * L * (1.0 + 2.0 * r)) - 1.0) * (X + 1.0));
        total += std::complex<long double>(t.count(d)) * std::complex<long double>(term);
    }
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

OneRatioSuite one_ratio_suite(cplx alpha, cplx gamma, cplx r, const EulerProductTable& t) {
    return {a_d_one_ratio(alpha, gamma, t), a_d_one_ratio(-r, r, t), a_d_prime(r, t)};
}

double tail_bound(const EulerProductTable& t, double c, double decay) {
    if (decay <= 1.0) return std::numeric_limits<double>::infinity();
    const double q = t.q();
    double sum = 0.0;
    for (int d = t.cutoff() + 1; d < t.cutoff() + 2000; ++d) {
        const double term = c * std::exp(d * std::log(q) * (1.0 - decay)) / d;
        sum += term;
        if (term < 1e-40 || term < sum * 1e-17) break;
    }
    return sum;
}

double moment_tail_bound(int k, const EulerProductTable& t) {
    static constexpr double lead[] = {0.0, 1.0, 4.0, 12.0};
    if (k >= 1 && k <= 3) return tail_bound(t, 2.0 * lead[k], 2.0);
    return shift_tail_bound(static_cast<std::size_t>(k), 0.0, t);
}

double shift_tail_bound(std::size_t n_shifts, double sigma, const EulerProductTable& t) {
    const double n = static_cast<double>(n_shifts);
    return tail_bound(t, 2.0 * (n + 1.0) * (n + 1.0), 2.0 - 2.0 * std::abs(sigma));
}

double a_constant(const PolyFq& m) {
    if (m.is_zero() || !m.is_monic()) throw std::invalid_argument("a_constant: m must be monic");
    double a = 1.0;
    for (const auto& [P, e] : factor(m).factors) {
        if (e % 2) return 0.0;
        a /= 1.0 + 1.0 / P.poly().norm();
    }
    return a;
}

}  // namespace ffm
