#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ffmoments/field.hpp"

namespace ffm {

using BigInt = boost::multiprecision::cpp_int;

// Polynomial over F_q. Coefficients ascending by degree, no trailing zeros;
// the zero polynomial has no coefficients and degree -1.
class PolyFq {
  public:
    explicit PolyFq(const FieldCtx& field) : field_(field) {}
    PolyFq(const FieldCtx& field, std::vector<Residue> coeffs);
    PolyFq(const FieldCtx& field, std::initializer_list<std::int64_t> coeffs);

    static PolyFq constant(const FieldCtx& field, Residue c);
    static PolyFq monomial(const FieldCtx& field, int degree, Residue c = 1);
    static PolyFq x(const FieldCtx& field) { return monomial(field, 1); }

    const FieldCtx& field() const noexcept { return field_; }
    std::uint32_t q() const noexcept { return field_.q(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
    Residue lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
    Residue coeff(int i) const noexcept {
        return i >= 0 && static_cast<std::size_t>(i) < c_.size() ? c_[i] : 0;
    }
    std::span<const Residue> coeffs() const noexcept { return c_; }

    // |f| = q^deg f, and |0| = 0.
    double norm() const noexcept { return is_zero() ? 0.0 : field_.norm(degree()); }

    PolyFq monic() const;
    PolyFq scaled(Residue c) const;
    PolyFq derivative() const;
    Residue eval(Residue x) const noexcept;

    PolyFq& operator+=(const PolyFq& o);
    PolyFq& operator-=(const PolyFq& o);
    friend PolyFq operator+(PolyFq a, const PolyFq& b) { return a += b; }
    friend PolyFq operator-(PolyFq a, const PolyFq& b) { return a -= b; }
    friend PolyFq operator*(const PolyFq& a, const PolyFq& b);
    friend PolyFq operator%(const PolyFq& a, const PolyFq& b);
    friend PolyFq operator/(const PolyFq& a, const PolyFq& b);

    // Canonical order: by degree, then lexicographic on the ascending
    // coefficient vector.
    friend std::strong_ordering operator<=>(const PolyFq& a, const PolyFq& b);
    friend bool operator==(const PolyFq& a, const PolyFq& b) {
        return a.q() == b.q() && a.c_ == b.c_;
    }

    std::string to_string() const;

  private:
    void trim() noexcept;

    FieldCtx field_;
    std::vector<Residue> c_;
};

struct DivMod {
    PolyFq quotient;
    PolyFq remainder;
};

// a = quotient * b + remainder with deg remainder < deg b. Throws on b == 0
// or on mismatched fields.
DivMod divmod(const PolyFq& a, const PolyFq& b);
// Monic gcd; gcd(0, 0) = 0.
PolyFq gcd(const PolyFq& a, const PolyFq& b);
// base^e mod m, for m nonconstant.
PolyFq powmod(const PolyFq& base, const BigInt& e, const PolyFq& m);
PolyFq powmod(const PolyFq& base, std::uint64_t e, const PolyFq& m);
PolyFq mulmod(const PolyFq& a, const PolyFq& b, const PolyFq& m);

void require_same_field(const PolyFq& a, const PolyFq& b);

struct PolyHash {
    std::size_t operator()(const PolyFq& p) const noexcept;
};

}  // namespace ffm
