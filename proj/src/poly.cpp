#include "ffmoments/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ffm {

void require_same_field(const PolyFq& a, const PolyFq& b) {
    if (a.q() != b.q())
        throw std::invalid_argument("polynomials over different fields (q=" +
                                    std::to_string(a.q()) + " vs q=" + std::to_string(b.q()) +
                                    ")");
}

PolyFq::PolyFq(const FieldCtx& field, std::vector<Residue> coeffs)
    : field_(field), c_(std::move(coeffs)) {
    for (auto& c : c_) c %= field_.q();
    trim();
}

PolyFq::PolyFq(const FieldCtx& field, std::initializer_list<std::int64_t> coeffs) : field_(field) {
    c_.reserve(coeffs.size());
    for (auto c : coeffs) c_.push_back(field_.reduce(c));
    trim();
}

PolyFq PolyFq::constant(const FieldCtx& field, Residue c) { return PolyFq(field, {c}); }

PolyFq PolyFq::monomial(const FieldCtx& field, int degree, Residue c) {
    std::vector<Residue> v(static_cast<std::size_t>(degree) + 1, 0);
    v.back() = c;
    return PolyFq(field, std::move(v));
}

void PolyFq::trim() noexcept {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyFq PolyFq::monic() const {
    if (is_zero()) throw std::domain_error("monic(): zero polynomial");
    return scaled(field_.inv(lead()));
}

PolyFq PolyFq::scaled(Residue c) const {
    PolyFq r(field_);
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_.mul(c_[i], c);
    r.trim();
    return r;
}

PolyFq PolyFq::derivative() const {
    PolyFq r(field_);
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_[i - 1] = field_.mul(c_[i], static_cast<Residue>(i % field_.q()));
    r.trim();
    return r;
}

Residue PolyFq::eval(Residue x) const noexcept {
    Residue acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
    return acc;
}

PolyFq& PolyFq::operator+=(const PolyFq& o) {
    require_same_field(*this, o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_.add(c_[i], o.c_[i]);
    trim();
    return *this;
}

PolyFq& PolyFq::operator-=(const PolyFq& o) {
    require_same_field(*this, o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_.sub(c_[i], o.c_[i]);
    trim();
    return *this;
}

PolyFq operator*(const PolyFq& a, const PolyFq& b) {
    require_same_field(a, b);
    PolyFq r(a.field_);
    if (a.is_zero() || b.is_zero()) return r;
    const std::uint64_t q = a.q();
    std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            acc[i + j] += static_cast<std::uint64_t>(a.c_[i]) * b.c_[j];
            if (acc[i + j] >= (1ull << 62)) acc[i + j] %= q;
        }
    }
    r.c_.resize(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) r.c_[i] = static_cast<Residue>(acc[i] % q);
    r.trim();
    return r;
}

DivMod divmod(const PolyFq& a, const PolyFq& b) {
    require_same_field(a, b);
    if (b.is_zero()) throw std::domain_error("divmod: division by the zero polynomial");
    const FieldCtx& F = a.field();
    if (a.degree() < b.degree()) return {PolyFq(F), a};
    std::vector<Residue> rem(a.coeffs().begin(), a.coeffs().end());
    const int db = b.degree();
    const Residue inv_lead = F.inv(b.lead());
    std::vector<Residue> quo(static_cast<std::size_t>(a.degree() - db) + 1, 0);
    auto bc = b.coeffs();
    for (int i = a.degree(); i >= db; --i) {
        Residue c = F.mul(rem[i], inv_lead);
        if (c == 0) continue;
        quo[i - db] = c;
        for (int j = 0; j <= db; ++j) rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, bc[j]));
    }
    rem.resize(static_cast<std::size_t>(db));
    return {PolyFq(F, std::move(quo)), PolyFq(F, std::move(rem))};
}

PolyFq operator%(const PolyFq& a, const PolyFq& b) { return divmod(a, b).remainder; }
PolyFq operator/(const PolyFq& a, const PolyFq& b) { return divmod(a, b).quotient; }

PolyFq gcd(const PolyFq& a, const PolyFq& b) {
    require_same_field(a, b);
    PolyFq x = a, y = b;
    while (!y.is_zero()) {
        PolyFq r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.monic();
}

PolyFq mulmod(const PolyFq& a, const PolyFq& b, const PolyFq& m) { return (a * b) % m; }

PolyFq powmod(const PolyFq& base, const BigInt& e, const PolyFq& m) {
    require_same_field(base, m);
    if (m.degree() < 1) throw std::domain_error("powmod: modulus must be nonconstant");
    if (e < 0) throw std::domain_error("powmod: negative exponent");
    PolyFq result = PolyFq::constant(m.field(), 1);
    PolyFq b = base % m;
    const auto bits = e == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(e)) + 1;
    for (unsigned i = bits; i-- > 0;) {
        result = mulmod(result, result, m);
        if (boost::multiprecision::bit_test(e, i)) result = mulmod(result, b, m);
    }
    return result;
}

PolyFq powmod(const PolyFq& base, std::uint64_t e, const PolyFq& m) {
    return powmod(base, BigInt(e), m);
}

std::strong_ordering operator<=>(const PolyFq& a, const PolyFq& b) {
    if (auto c = a.q() <=> b.q(); c != 0) return c;
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.c_.begin(), a.c_.end(), b.c_.begin(),
                                                  b.c_.end());
}

std::string PolyFq::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Residue c = c_[i];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c != 1) os << c;
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

std::size_t PolyHash::operator()(const PolyFq& p) const noexcept {
    std::size_t h = std::hash<std::uint32_t>{}(p.q());
    for (Residue c : p.coeffs()) h = h * 1000003u ^ std::hash<Residue>{}(c);
    return h;
}

}  // namespace ffm
