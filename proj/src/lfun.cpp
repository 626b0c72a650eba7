#include "ffmoments/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_int.hpp>

#include "ffmoments/errors.hpp"

namespace ffm {

namespace mp = boost::multiprecision;

LPolynomial::LPolynomial(Discriminant d, std::vector<BigInt> coeffs)
    : d_(std::move(d)), a_(std::move(coeffs)) {
    if (a_.size() != static_cast<std::size_t>(2 * d_.genus() + 1))
        throw std::invalid_argument("LPolynomial: need 2g+1 coefficients");
    af_.reserve(a_.size());
    for (const auto& c : a_) af_.push_back(c.convert_to<double>());
}

LPolynomial lpoly_charsum(const Discriminant& D, std::uint64_t budget) {
    const int g = D.genus();
    checked_count(D.field().q(), 2 * g, budget);
    std::vector<BigInt> a(static_cast<std::size_t>(2 * g) + 1);
    for (int n = 0; n <= 2 * g; ++n) {
        std::int64_t s = 0;
        for_each_monic(
            D.field(), n, [&](std::uint64_t, const PolyFq& f) { s += chi(D, f); }, budget);
        a[n] = s;
    }
    return LPolynomial(D, std::move(a));
}

PointCounter::PointCounter(const FieldCtx& field, int g, std::uint64_t table_bound) : field_(field) {
    if (g < 1) throw std::invalid_argument("PointCounter: g must be >= 1");
    ext_.reserve(static_cast<std::size_t>(g));
    for (int n = 1; n <= g; ++n) ext_.emplace_back(field, n, table_bound);
}

std::int64_t PointCounter::char_sum(const Discriminant& D, int n) const {
    if (n < 1 || n > g()) throw std::out_of_range("PointCounter: extension degree out of range");
    return ext_[static_cast<std::size_t>(n - 1)].char_sum(D.poly());
}

BigInt PointCounter::count(const Discriminant& D, int n) const {
    return mp::pow(BigInt(field_.q()), n) + 1 + char_sum(D, n);
}

BigInt point_count(const Discriminant& D, int n) {
    ExtFieldCtx E(D.field(), n);
    return mp::pow(BigInt(D.field().q()), n) + 1 + E.char_sum(D.poly());
}

LPolynomial lpoly_pointcount(const Discriminant& D, const PointCounter& pc) {
    const int g = D.genus();
    if (pc.field().q() != D.field().q() || pc.g() < g)
        throw std::invalid_argument("lpoly_pointcount: point counter does not cover D");
    const BigInt q = D.field().q();
    std::vector<BigInt> p(static_cast<std::size_t>(g) + 1);
    for (int n = 1; n <= g; ++n) p[n] = -BigInt(pc.char_sum(D, n));  // q^n + 1 - N_n
    std::vector<BigInt> a(static_cast<std::size_t>(2 * g) + 1);
    a[0] = 1;
    for (int n = 1; n <= g; ++n) {
        BigInt s = 0;
        for (int i = 1; i <= n; ++i) s -= p[i] * a[n - i];
        if (s % n != 0)
            throw NumericalFailure("Newton identity division not exact at n=" + std::to_string(n) +
                                   " for D = " + D.poly().to_string());
        a[n] = s / n;
    }
    for (int n = 0; n < g; ++n) a[2 * g - n] = mp::pow(q, g - n) * a[n];
    return LPolynomial(D, std::move(a));
}

LPolynomial lpoly_pointcount(const Discriminant& D) {
    return lpoly_pointcount(D, PointCounter(D.field(), D.genus()));
}

bool fe_check(const LPolynomial& L) {
    const int g = L.genus();
    const BigInt q = L.q();
    for (int n = 0; n <= 2 * g; ++n) {
        const BigInt& lhs = L.coeff(2 * g - n);
        if (n <= g) {
            if (lhs != mp::pow(q, g - n) * L.coeff(n)) return false;
        } else if (lhs * mp::pow(q, n - g) != L.coeff(n)) {
            return false;
        }
    }
    return true;
}

cplx evaluate_u(const LPolynomial& L, cplx u) {
    const auto& a = L.coeffs_f();
    std::complex<long double> acc = 0.0L, uu(u.real(), u.imag());
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * uu + static_cast<long double>(a[i]);
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

cplx evaluate(const LPolynomial& L, cplx s) {
    return evaluate_u(L, std::exp(-s * std::log(static_cast<double>(L.q()))));
}

cplx log_derivative(const LPolynomial& L, cplx s) {
    const double lq = std::log(static_cast<double>(L.q()));
    const cplx u = std::exp(-s * lq);
    const auto& a = L.coeffs_f();
    cplx val = 0.0, der = 0.0;
    for (std::size_t i = a.size(); i-- > 0;) {
        der = der * u + val;
        val = val * u + a[i];
    }
    if (std::abs(val) < 1e-12) throw DomainError("log_derivative: L(s) vanishes");
    return -u * lq * der / val;
}

double CentralValue::value() const {
    const long double e = e_num.convert_to<long double>();
    const long double o = o_num.convert_to<long double>();
    const long double qg = std::pow(static_cast<long double>(q), g);
    return static_cast<double>((e + o / std::sqrt(static_cast<long double>(q))) / qg);
}

CentralValue central_value(const LPolynomial& L) {
    const int g = L.genus();
    const BigInt q = L.q();
    CentralValue cv;
    cv.g = g;
    cv.q = L.q();
    for (int n = 0; n <= 2 * g; ++n) {
        const BigInt w = mp::pow(q, g - n / 2);  // q^(g - floor(n/2))
        (n % 2 ? cv.o_num : cv.e_num) += L.coeff(n) * w;
    }
    return cv;
}

cplx fe_x(std::uint32_t q, cplx s) { return std::exp((s - 0.5) * std::log(static_cast<double>(q))); }

cplx fe_xd(std::uint32_t q, int g, cplx s) {
    return std::exp(static_cast<double>(g) * (1.0 - 2.0 * s) * std::log(static_cast<double>(q)));
}

cplx z_value(const LPolynomial& L, cplx s) {
    const double lq = std::log(static_cast<double>(L.q()));
    return std::exp(-0.5 * L.genus() * (1.0 - 2.0 * s) * lq) * evaluate(L, s);
}

double fe_identity_residual(const LPolynomial& L, cplx s) {
    const int g = L.genus();
    const double lq = std::log(static_cast<double>(L.q()));
    const auto& a = L.coeffs_f();
    const cplx u = std::exp(-s * lq), w = std::exp((s - 1.0) * lq);
    cplx first = 0.0, second = 0.0, pu = 1.0, pw = 1.0;
    double scale = 0.0, au = 1.0;
    for (int j = 0; j <= g; ++j) {
        first += a[j] * pu;
        if (j <= g - 1) second += a[j] * pw;
        pu *= u;
        pw *= w;
    }
    for (int n = 0; n <= 2 * g; ++n) {
        scale += std::abs(a[n]) * au;
        au *= std::abs(u);
    }
    const cplx rhs = first + fe_xd(L.q(), g, s) * second;
    const cplx lhs = evaluate_u(L, u);
    return std::abs(lhs - rhs) / std::max(scale, std::abs(lhs));
}

namespace {

using Rational = mp::cpp_rational;
using RPoly = std::vector<Rational>;  // ascending, no trailing zeros

void rtrim(RPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RPoly rderiv(const RPoly& p) {
    RPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<int>(i));
    rtrim(d);
    return d;
}

std::pair<RPoly, RPoly> rdivmod(const RPoly& a, const RPoly& b) {
    RPoly r = a, qv;
    const int nb = static_cast<int>(b.size()) - 1;
    if (static_cast<int>(r.size()) - 1 < nb) return {qv, r};
    qv.assign(r.size() - b.size() + 1, 0);
    for (int i = static_cast<int>(r.size()) - 1; i >= nb; --i) {
        const Rational c = r[i] / b.back();
        qv[i - nb] = c;
        for (int j = 0; j <= nb; ++j) r[i - nb + j] -= c * b[j];
    }
    r.resize(static_cast<std::size_t>(nb));
    rtrim(r);
    rtrim(qv);
    return {qv, r};
}

RPoly rmonic(RPoly p) {
    const Rational l = p.back();
    for (auto& c : p) c /= l;
    return p;
}

RPoly rgcd(RPoly a, RPoly b) {
    while (!b.empty()) {
        RPoly r = rdivmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return rmonic(a);
}

RPoly rsub(RPoly a, const RPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    rtrim(a);
    return a;
}

// Yun's square-free decomposition over Q.
std::vector<std::pair<RPoly, int>> yun(const RPoly& f) {
    std::vector<std::pair<RPoly, int>> out;
    const RPoly fp = rderiv(f);
    RPoly a0 = rgcd(f, fp);
    RPoly b = rdivmod(f, a0).first;
    RPoly c = rdivmod(fp, a0).first;
    RPoly d = rsub(c, rderiv(b));
    for (int i = 1; b.size() > 1; ++i) {
        RPoly a = rgcd(b, d);
        if (a.size() > 1) out.emplace_back(a, i);
        b = rdivmod(b, a).first;
        c = rdivmod(d, a).first;
        d = rsub(c, rderiv(b));
    }
    return out;
}

// Square-free over Q if square-free modulo a large prime that keeps the degree.
bool squarefree_mod_p(const std::vector<BigInt>& a) {
    static const FieldCtx P(1048573);
    std::vector<Residue> c;
    for (const auto& v : a) {
        BigInt r = v % P.q();
        if (r < 0) r += P.q();
        c.push_back(r.convert_to<Residue>());
    }
    PolyFq f(P, c);
    if (f.degree() != static_cast<int>(a.size()) - 1) return false;
    return gcd(f, f.derivative()).degree() == 0;
}

using CLD = std::complex<long double>;

std::vector<CLD> roots_of(const std::vector<long double>& monic_v) {
    const int n = static_cast<int>(monic_v.size()) - 1;
    std::vector<CLD> roots;
    if (n == 1) {
        roots.emplace_back(-monic_v[0], 0.0L);
        return roots;
    }
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -static_cast<double>(monic_v[i]);
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    if (es.info() != Eigen::Success) throw NumericalFailure("zeros: eigenvalue iteration failed");
    for (int i = 0; i < n; ++i) {
        CLD z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
        // Newton polish on the (square-free) factor
        for (int it = 0; it < 50; ++it) {
            CLD val = 0.0L, der = 0.0L;
            for (int k = n; k >= 0; --k) {
                der = der * z + val;
                val = val * z + monic_v[k];
            }
            if (der == CLD(0.0L)) break;
            const CLD step = val / der;
            z -= step;
            if (std::abs(step) <= 1e-18L * std::abs(z)) break;
        }
        roots.push_back(z);
    }
    return roots;
}

}  // namespace

ZeroSet zeros(const LPolynomial& L) {
    const int g = L.genus();
    std::vector<std::pair<RPoly, int>> parts;
    if (squarefree_mod_p(L.coeffs())) {
        RPoly f;
        for (const auto& c : L.coeffs()) f.emplace_back(c);
        parts.emplace_back(std::move(f), 1);
    } else {
        RPoly f;
        for (const auto& c : L.coeffs()) f.emplace_back(c);
        parts = yun(f);
    }

    const long double sq = std::sqrt(static_cast<long double>(L.q()));
    std::vector<long double> upper, lower, real_angles;
    ZeroSet zs;
    int total = 0;
    for (const auto& [f, mult] : parts) {
        // v = sqrt(q) u puts the roots on the unit circle
        const int n = static_cast<int>(f.size()) - 1;
        std::vector<long double> v(static_cast<std::size_t>(n) + 1);
        long double scale = 1.0L;
        for (int k = 0; k <= n; ++k) {
            v[k] = f[k].convert_to<long double>() / scale;
            scale *= sq;
        }
        const long double lead = v[n];
        for (auto& c : v) c /= lead;
        for (const CLD& z : roots_of(v)) {
            zs.max_radius_deviation =
                std::max(zs.max_radius_deviation, static_cast<double>(std::abs(std::abs(z) - 1.0L)));
            const long double th = std::arg(z);
            for (int m = 0; m < mult; ++m) {
                ++total;
                if (std::abs(th) < 1e-7L)
                    real_angles.push_back(0.0L);
                else if (std::abs(th) > std::numbers::pi_v<long double> - 1e-7L)
                    real_angles.push_back(std::numbers::pi_v<long double>);
                else
                    (th > 0 ? upper : lower).push_back(th > 0 ? th : -th);
            }
        }
    }
    if (total != 2 * g) throw NumericalFailure("zeros: root count mismatch");
    if (zs.max_radius_deviation > 1e-6)
        throw NumericalFailure("zeros: root off the circle |u| = q^(-1/2) by " +
                               std::to_string(zs.max_radius_deviation) + " for D = " +
                               L.discriminant().poly().to_string());
    if (upper.size() != lower.size())
        throw NumericalFailure("zeros: roots not closed under conjugation");
    std::sort(upper.begin(), upper.end());
    std::sort(lower.begin(), lower.end());
    for (std::size_t i = 0; i < upper.size(); ++i) {
        const double th = static_cast<double>(0.5L * (upper[i] + lower[i]));
        zs.angles.push_back(th);
        zs.angles.push_back(-th);
    }
    for (long double t : real_angles) zs.angles.push_back(static_cast<double>(t));
    std::sort(zs.angles.begin(), zs.angles.end());
    return zs;
}

}  // namespace ffm
