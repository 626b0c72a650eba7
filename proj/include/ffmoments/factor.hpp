#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ffmoments/errors.hpp"
#include "ffmoments/poly.hpp"

namespace ffm {

// Default cap on the number of polynomials any enumeration may produce.
inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 24;

// Rabin's test. Constants are not irreducible.
bool is_irreducible(const PolyFq& f);

// Monic irreducible polynomial.
class PrimePoly {
  public:
    // Throws std::invalid_argument unless p is monic and irreducible.
    explicit PrimePoly(PolyFq p);
    static PrimePoly trusted(PolyFq p) { return PrimePoly(std::move(p), 0); }

    const PolyFq& poly() const noexcept { return p_; }
    int degree() const noexcept { return p_.degree(); }

    friend auto operator<=>(const PrimePoly& a, const PrimePoly& b) { return a.p_ <=> b.p_; }
    friend bool operator==(const PrimePoly& a, const PrimePoly& b) { return a.p_ == b.p_; }

  private:
    PrimePoly(PolyFq p, int) : p_(std::move(p)) {}
    PolyFq p_;
};

struct Factorization {
    Residue unit = 1;
    std::vector<std::pair<PrimePoly, int>> factors;  // sorted canonically

    PolyFq product(const FieldCtx& field) const;
};

bool is_squarefree(const PolyFq& f);
// Deterministic for a fixed seed; the result does not depend on the seed.
Factorization factor(const PolyFq& f, std::uint64_t seed = 0x5eed);
int mobius(const PolyFq& f);

// Number of monic irreducibles of degree d over F_q.
BigInt prime_count(std::uint32_t q, int d);

// q^n with overflow reported as BudgetExceeded beyond `budget`.
std::uint64_t checked_count(std::uint32_t q, int n, std::uint64_t budget);

// The i-th monic polynomial of degree n in canonical order: the ascending
// coefficient vector (c_0, ..., c_{n-1}) read as base-q digits, c_0 most
// significant.
PolyFq monic_at(const FieldCtx& field, int n, std::uint64_t index);
std::vector<PolyFq> monic_enumerate(const FieldCtx& field, int n,
                                    std::uint64_t budget = kDefaultEnumerationBudget);
// Calls fn(index, poly) for every monic polynomial of degree n.
void for_each_monic(const FieldCtx& field, int n,
                    const std::function<void(std::uint64_t, const PolyFq&)>& fn,
                    std::uint64_t budget = kDefaultEnumerationBudget);

// result[d] lists the primes of degree d, d = 1..max_deg (result[0] empty).
std::vector<std::vector<PrimePoly>> irreducible_enumerate(
    const FieldCtx& field, int max_deg, std::uint64_t budget = kDefaultEnumerationBudget);

// First monic irreducible of degree n in canonical order.
PrimePoly first_irreducible(const FieldCtx& field, int n);

}  // namespace ffm
