#include "ffmoments/ratios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ffmoments/errors.hpp"

namespace ffm {

using lcplx = std::complex<long double>;

void RatiosSpec::validate(std::uint32_t q) const {
    if (alpha.size() > kMaxRatioShifts || gamma.size() > kMaxRatioShifts)
        throw DomainError("ratios: at most 2 numerator and 2 denominator shifts");
    if (alpha.empty() && gamma.empty()) throw DomainError("ratios: no shifts");
    const double im_max = std::numbers::pi / std::log(static_cast<double>(q));
    auto check = [&](const cplx& s) {
        if (!(std::abs(s.real()) < 0.25)) throw DomainError("ratios: shift real part must lie in (-1/4, 1/4)");
        if (!(std::abs(s.imag()) <= im_max)) throw DomainError("ratios: shift imaginary part exceeds pi/ln q");
    };
    for (const auto& a : alpha) check(a);
    for (const auto& c : gamma) {
        check(c);
        if (!(c.real() > 0.0)) throw DomainError("ratios: denominator shifts need positive real part");
    }
}

RatiosSpec RatiosSpec::conj() const {
    RatiosSpec s = *this;
    for (auto& a : s.alpha) a = std::conj(a);
    for (auto& c : s.gamma) c = std::conj(c);
    return s;
}

cplx ratios_rhs(const RatiosSpec& spec, std::uint32_t q, int g, const EulerProductTable& t) {
    spec.validate(q);
    if (t.q() != q) throw std::invalid_argument("ratios_rhs: table is for a different q");
    const ZetaA zeta(q);
    const double L = t.log_q();
    const double logd = (2.0 * g + 1.0) * L;
    const std::size_t K = spec.alpha.size();
    std::vector<cplx> b(K);
    lcplx total = 0.0L;
    for (std::uint32_t mask = 0; mask < (1u << K); ++mask) {
        cplx expo = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            const cplx a = spec.alpha[k];
            b[k] = (mask >> k) & 1 ? -a : a;
            // |D|^((b - a)/2) X(1/2 + (a - b)/2), X(s) = q^(s - 1/2)
            expo += 0.5 * logd * (b[k] - a) + 0.5 * L * (a - b[k]);
        }
        const cplx y = y_factor(b, spec.gamma, zeta);
        if (y == cplx(0.0)) continue;
        total += lcplx(std::exp(expo) * y * a_ratios(b, spec.gamma, t));
    }
    const double h = EnsembleParams(FieldCtx(q), g).size_f();
    return h * cplx(static_cast<double>(total.real()), static_cast<double>(total.imag()));
}

cplx ratios_empirical(const SweepCache& cache, const RatiosSpec& spec) {
    if (cache.records.empty()) throw std::invalid_argument("ratios_empirical: empty cache");
    spec.validate(cache.header.q);
    std::vector<cplx> num = spec.alpha, den;
    for (const auto& c : spec.gamma) {
        auto it = std::find(num.begin(), num.end(), c);
        if (it != num.end())
            num.erase(it);
        else
            den.push_back(c);
    }
    const FieldCtx F = cache.field();
    lcplx total = 0.0L;
    for (const auto& rec : cache.records) {
        const LPolynomial L = rec.lpoly(F);
        cplx v = 1.0;
        for (const auto& a : num) v *= evaluate(L, 0.5 + a);
        for (const auto& c : den) {
            const cplx d = evaluate(L, 0.5 + c);
            if (std::abs(d) < 1e-12) throw NumericalFailure("ratios_empirical: denominator vanishes");
            v /= d;
        }
        total += lcplx(v);
    }
    const long double n = static_cast<long double>(cache.records.size());
    const cplx mean(static_cast<double>(total.real() / n), static_cast<double>(total.imag() / n));
    return cache.params().size_f() * mean;
}

double logderiv_theory(double r, std::uint32_t q, int g, const EulerProductTable& t) {
    const double L = std::log(static_cast<double>(q));
    const double lo = kLogDerivFloor / (2.0 * g * L);
    if (!(r > lo && r < 0.25))
        throw DomainError("logderiv: r = " + std::to_string(r) + " outside (" + std::to_string(lo) + ", 1/4)");
    if (t.q() != q) throw std::invalid_argument("logderiv: table is for a different q");
    const ZetaA zeta(q);
    const OneRatioSuite s = one_ratio_suite(r, r, r, t);
    // |D|^-r X(1/2 + r) = q^(-(2g+1) r) q^r
    const double dx = std::exp(-2.0 * g * r * L);
    const cplx v = zeta.log_deriv(1.0 + 2.0 * r) + s.a_d_prime - L * dx * zeta(1.0 - 2.0 * r) * s.a_d_minus;
    return EnsembleParams(FieldCtx(q), g).size_f() * v.real();
}

LogDerivPair logderiv_pair(double r, const SweepCache& cache, const EulerProductTable& t) {
    if (cache.records.empty()) throw std::invalid_argument("logderiv_pair: empty cache");
    LogDerivPair p;
    p.theory = logderiv_theory(r, cache.header.q, cache.header.g, t);
    const FieldCtx F = cache.field();
    long double total = 0.0L;
    for (const auto& rec : cache.records) total += log_derivative(rec.lpoly(F), 0.5 + r).real();
    p.empirical = cache.params().size_f() * static_cast<double>(total / static_cast<long double>(cache.records.size()));
    return p;
}

}  // namespace ffm
