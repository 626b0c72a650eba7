#pragma once

#include "ffmoments/factor.hpp"

namespace ffm {

// Monic square-free D of odd degree 2g+1 >= 3.
class Discriminant {
  public:
    explicit Discriminant(PolyFq d);
    // Skips validation; for polynomials already known to qualify.
    static Discriminant trusted(PolyFq d) { return Discriminant(std::move(d), 0); }

    const PolyFq& poly() const noexcept { return d_; }
    int genus() const noexcept { return (d_.degree() - 1) / 2; }
    const FieldCtx& field() const noexcept { return d_.field(); }

    friend auto operator<=>(const Discriminant& a, const Discriminant& b) { return a.d_ <=> b.d_; }
    friend bool operator==(const Discriminant& a, const Discriminant& b) { return a.d_ == b.d_; }

  private:
    Discriminant(PolyFq d, int) : d_(std::move(d)) {}
    PolyFq d_;
};

// (f/P) by Euler's criterion f^((|P|-1)/2) mod P.
int residue_symbol(const PolyFq& f, const PrimePoly& P);

// (f/Q) for monic Q: product over the factorization of Q.
int jacobi_reference(const PolyFq& f, const PolyFq& Q);
// Same, with Q given by its factorization (unit 1).
int jacobi_reference(const PolyFq& f, const Factorization& Q);
// Same contract, by the reciprocity ladder; never factors.
int jacobi(const PolyFq& f, const PolyFq& Q);

// chi_D(f) = (D/f) for monic f. Nonmonic f is rejected.
int chi(const Discriminant& D, const PolyFq& f);

}  // namespace ffm
