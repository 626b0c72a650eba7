#pragma once

#include <cmath>
#include <cstdint>

namespace ffm {

using Residue = std::uint32_t;

// The prime field F_q, q an odd prime with 3 <= q <= 2^20.
class FieldCtx {
  public:
    explicit FieldCtx(std::uint32_t q);

    std::uint32_t q() const noexcept { return q_; }
    double log_q() const noexcept { return log_q_; }

    Residue reduce(std::int64_t a) const noexcept {
        std::int64_t r = a % static_cast<std::int64_t>(q_);
        return static_cast<Residue>(r < 0 ? r + q_ : r);
    }
    Residue add(Residue a, Residue b) const noexcept {
        Residue s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + q_ - b; }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : q_ - a; }
    Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % q_);
    }
    Residue pow(Residue a, std::uint64_t e) const noexcept;
    // Multiplicative inverse; a must be nonzero.
    Residue inv(Residue a) const;
    // Legendre symbol (a/q) in {-1, 0, 1}.
    int legendre(Residue a) const noexcept;

    // |f| = q^deg for a nonzero polynomial of the given degree.
    double norm(int degree) const noexcept { return std::pow(static_cast<double>(q_), degree); }

    friend bool operator==(const FieldCtx& a, const FieldCtx& b) noexcept { return a.q_ == b.q_; }

  private:
    std::uint32_t q_;
    double log_q_;
};

bool is_prime_u32(std::uint32_t n) noexcept;

}  // namespace ffm
