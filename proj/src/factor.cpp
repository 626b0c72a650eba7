#include "ffmoments/factor.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "ffmoments/errors.hpp"

namespace ffm {

namespace {

std::vector<int> prime_divisors(int n) {
    std::vector<int> out;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

// x^(q^k) mod f, by repeated q-th powering.
PolyFq frobenius_power(const PolyFq& f, int k) {
    PolyFq h = PolyFq::x(f.field()) % f;
    for (int i = 0; i < k; ++i) h = powmod(h, std::uint64_t{f.q()}, f);
    return h;
}

// p-th root of a polynomial whose derivative vanishes (all exponents divisible by q).
PolyFq pth_root(const PolyFq& f) {
    const auto q = f.q();
    std::vector<Residue> c;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(q)) c.push_back(f.coeff(i));
    return PolyFq(f.field(), std::move(c));
}

void squarefree_decompose(const PolyFq& f, int mult, std::vector<std::pair<PolyFq, int>>& out) {
    if (f.degree() < 1) return;
    PolyFq c = gcd(f, f.derivative());
    PolyFq w = f / c;
    int i = 1;
    while (!w.is_one()) {
        PolyFq y = gcd(w, c);
        PolyFq fac = w / y;
        if (!fac.is_one()) out.emplace_back(fac.monic(), i * mult);
        w = y;
        c = c / y;
        ++i;
    }
    if (!c.is_one()) squarefree_decompose(pth_root(c).monic(), mult * static_cast<int>(f.q()), out);
}

void equal_degree_split(const PolyFq& f, int d, std::mt19937_64& rng, std::vector<PolyFq>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    const FieldCtx& F = f.field();
    const BigInt e = (boost::multiprecision::pow(BigInt(f.q()), d) - 1) / 2;
    const PolyFq one = PolyFq::constant(F, 1);
    for (;;) {
        std::vector<Residue> c(static_cast<std::size_t>(f.degree()));
        for (auto& v : c) v = static_cast<Residue>(rng() % f.q());
        PolyFq a(F, std::move(c));
        if (a.degree() < 1) continue;
        PolyFq g = gcd(a, f);
        if (g.degree() < 1) g = gcd(powmod(a, e, f) - one, f);
        if (g.degree() >= 1 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace

bool is_irreducible(const PolyFq& f) {
    if (f.degree() < 1) return false;
    PolyFq m = f.monic();
    const int n = m.degree();
    if (n == 1) return true;
    const PolyFq x = PolyFq::x(m.field());
    if (frobenius_power(m, n) != x % m) return false;
    for (int p : prime_divisors(n)) {
        PolyFq h = frobenius_power(m, n / p);
        if (!gcd(h - x, m).is_one()) return false;
    }
    return true;
}

PrimePoly::PrimePoly(PolyFq p) : p_(std::move(p)) {
    if (!p_.is_monic() || !is_irreducible(p_))
        throw std::invalid_argument("PrimePoly: " + p_.to_string() + " is not monic irreducible");
}

PolyFq Factorization::product(const FieldCtx& field) const {
    PolyFq r = PolyFq::constant(field, unit);
    for (const auto& [p, e] : factors)
        for (int i = 0; i < e; ++i) r = r * p.poly();
    return r;
}

bool is_squarefree(const PolyFq& f) {
    if (f.is_zero()) throw std::domain_error("is_squarefree: zero polynomial");
    if (f.degree() < 1) return true;
    PolyFq d = f.derivative();
    if (d.is_zero()) return false;
    return gcd(f, d).degree() == 0;
}

Factorization factor(const PolyFq& f, std::uint64_t seed) {
    if (f.is_zero()) throw std::domain_error("factor: zero polynomial");
    Factorization out;
    out.unit = f.lead();
    PolyFq m = f.monic();
    std::mt19937_64 rng(seed);
    std::vector<std::pair<PolyFq, int>> sqf;
    squarefree_decompose(m, 1, sqf);

    std::map<PolyFq, int> acc;
    for (auto& [part, mult] : sqf) {
        PolyFq rest = part;
        PolyFq h = PolyFq::x(rest.field());
        for (int d = 1; 2 * d <= rest.degree(); ++d) {
            h = powmod(h, std::uint64_t{rest.q()}, rest);
            PolyFq g = gcd(h - PolyFq::x(rest.field()), rest);
            if (g.is_one()) continue;
            std::vector<PolyFq> pieces;
            equal_degree_split(g, d, rng, pieces);
            for (auto& p : pieces) acc[p] += mult;
            rest = rest / g;
            h = h % rest;
        }
        if (rest.degree() >= 1) acc[rest] += mult;
    }
    for (auto& [p, e] : acc) out.factors.emplace_back(PrimePoly::trusted(p), e);
    return out;
}

int mobius(const PolyFq& f) {
    if (f.is_zero()) throw std::domain_error("mobius: zero polynomial");
    Factorization fz = factor(f);
    for (const auto& [p, e] : fz.factors)
        if (e > 1) return 0;
    return fz.factors.size() % 2 ? -1 : 1;
}

BigInt prime_count(std::uint32_t q, int d) {
    if (d < 1) throw std::invalid_argument("prime_count: d must be >= 1");
    BigInt sum = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        // Mobius of the integer e.
        int mu = 1, n = e;
        for (int p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            n /= p;
            if (n % p == 0) {
                mu = 0;
                break;
            }
            mu = -mu;
        }
        if (mu != 0 && n > 1) mu = -mu;
        if (mu == 0) continue;
        BigInt term = boost::multiprecision::pow(BigInt(q), d / e);
        sum += mu > 0 ? term : BigInt(-term);
    }
    return sum / d;
}

std::uint64_t checked_count(std::uint32_t q, int n, std::uint64_t budget) {
    if (n < 0) throw std::invalid_argument("negative degree");
    std::uint64_t c = 1;
    for (int i = 0; i < n; ++i) {
        if (c > budget / q)
            throw BudgetExceeded("enumeration of q^" + std::to_string(n) + " items (q=" +
                                 std::to_string(q) + ") exceeds budget " +
                                 std::to_string(budget));
        c *= q;
    }
    if (c > budget) throw BudgetExceeded("enumeration exceeds budget");
    return c;
}

PolyFq monic_at(const FieldCtx& field, int n, std::uint64_t index) {
    std::vector<Residue> c(static_cast<std::size_t>(n) + 1, 0);
    c[n] = 1;
    for (int i = n - 1; i >= 0; --i) {
        c[i] = static_cast<Residue>(index % field.q());
        index /= field.q();
    }
    return PolyFq(field, std::move(c));
}

std::vector<PolyFq> monic_enumerate(const FieldCtx& field, int n, std::uint64_t budget) {
    const std::uint64_t count = checked_count(field.q(), n, budget);
    std::vector<PolyFq> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(monic_at(field, n, i));
    return out;
}

void for_each_monic(const FieldCtx& field, int n,
                    const std::function<void(std::uint64_t, const PolyFq&)>& fn,
                    std::uint64_t budget) {
    const std::uint64_t count = checked_count(field.q(), n, budget);
    for (std::uint64_t i = 0; i < count; ++i) fn(i, monic_at(field, n, i));
}

std::vector<std::vector<PrimePoly>> irreducible_enumerate(const FieldCtx& field, int max_deg,
                                                          std::uint64_t budget) {
    if (max_deg < 1) throw std::invalid_argument("irreducible_enumerate: max_deg must be >= 1");
    checked_count(field.q(), max_deg, budget);
    std::vector<std::vector<PrimePoly>> out(static_cast<std::size_t>(max_deg) + 1);
    for (int d = 1; d <= max_deg; ++d)
        for_each_monic(
            field, d,
            [&](std::uint64_t, const PolyFq& f) {
                if (is_irreducible(f)) out[d].push_back(PrimePoly::trusted(f));
            },
            budget);
    return out;
}

PrimePoly first_irreducible(const FieldCtx& field, int n) {
    if (n < 1) throw std::invalid_argument("first_irreducible: n must be >= 1");
    for (std::uint64_t i = 0;; ++i) {
        PolyFq f = monic_at(field, n, i);
        if (is_irreducible(f)) return PrimePoly::trusted(std::move(f));
    }
}

}  // namespace ffm
