#pragma once

#include <cstdint>
#include <vector>

#include "ffmoments/factor.hpp"

namespace ffm {

inline constexpr std::uint64_t kDefaultSquareTableBound = std::uint64_t{1} << 24;

// Element of F_{q^n}: the coefficients of its representative polynomial mod
// the modulus, packed as base-q digits with c_0 least significant.
using ExtElem = std::uint32_t;

// F_{q^n} = F_q[x]/(M), M the first monic irreducible of degree n in canonical
// order. When q^n <= table_bound, log/antilog/Zech tables built from a
// primitive element are materialized; squares are then exactly the elements of
// even log. Otherwise quad_char falls back to Euler's criterion.
class ExtFieldCtx {
  public:
    ExtFieldCtx(const FieldCtx& base, int n, std::uint64_t table_bound = kDefaultSquareTableBound);

    const FieldCtx& base() const noexcept { return base_; }
    int n() const noexcept { return n_; }
    std::uint32_t size() const noexcept { return size_; }
    const PrimePoly& modulus() const noexcept { return modulus_; }
    bool has_tables() const noexcept { return !exp_.empty(); }

    ExtElem from_base(Residue a) const noexcept { return a; }
    ExtElem from_digits(const std::vector<Residue>& c) const;
    std::vector<Residue> digits(ExtElem e) const;

    ExtElem add(ExtElem a, ExtElem b) const noexcept;
    ExtElem sub(ExtElem a, ExtElem b) const noexcept;
    ExtElem mul(ExtElem a, ExtElem b) const;
    ExtElem pow(ExtElem a, std::uint64_t e) const;
    ExtElem eval(const PolyFq& f, ExtElem pt) const;
    int quad_char(ExtElem e) const;

    // Sum over all c in F_{q^n} of quad_char(f(c)).
    std::int64_t char_sum(const PolyFq& f) const;

  private:
    ExtElem mul_generic(ExtElem a, ExtElem b) const;

    FieldCtx base_;
    int n_;
    std::uint32_t size_;
    PrimePoly modulus_;
    std::vector<Residue> pow_q_;          // q^i
    std::vector<Residue> reduce_x_n_;     // x^n mod M as coefficients
    std::vector<std::uint32_t> exp_;      // exp_[i] = g^i, i < size-1
    std::vector<std::uint32_t> log_;      // log_[e], e != 0
    std::vector<std::uint32_t> zech_;     // g^zech_[i] = 1 + g^i; kZero if that sum is 0
};

}  // namespace ffm
