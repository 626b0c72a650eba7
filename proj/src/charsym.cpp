#include "ffmoments/charsym.hpp"

#include <stdexcept>

#include "ffmoments/errors.hpp"

namespace ffm {

namespace {

void require_monic_modulus(const PolyFq& Q, const char* who) {
    if (Q.is_zero()) throw std::domain_error(std::string(who) + ": zero modulus");
    if (!Q.is_monic()) throw std::invalid_argument(std::string(who) + ": modulus must be monic");
}

// (a/Q) = legendre(a)^deg Q for a nonzero constant a.
int scalar_symbol(const FieldCtx& F, Residue a, int degQ) {
    const int l = F.legendre(a);
    if (l == 0) return 0;
    return (l == -1 && degQ % 2 == 1) ? -1 : 1;
}

}  // namespace

Discriminant::Discriminant(PolyFq d) : d_(std::move(d)) {
    if (!d_.is_monic() || d_.degree() < 3 || d_.degree() % 2 == 0)
        throw std::invalid_argument("Discriminant: need monic of odd degree >= 3, got " +
                                    d_.to_string());
    if (!is_squarefree(d_))
        throw std::invalid_argument("Discriminant: " + d_.to_string() + " is not square-free");
}

int residue_symbol(const PolyFq& f, const PrimePoly& P) {
    require_same_field(f, P.poly());
    PolyFq r = f % P.poly();
    if (r.is_zero()) return 0;
    const BigInt e = (boost::multiprecision::pow(BigInt(f.q()), P.degree()) - 1) / 2;
    PolyFq v = powmod(r, e, P.poly());
    if (v.is_one()) return 1;
    if (v.degree() == 0 && v.lead() == f.q() - 1) return -1;
    throw NumericalFailure("residue_symbol: Euler criterion gave " + v.to_string() + "; modulus " +
                           P.poly().to_string() + " is not irreducible");
}

int jacobi_reference(const PolyFq& f, const PolyFq& Q) {
    require_monic_modulus(Q, "jacobi_reference");
    require_same_field(f, Q);
    return jacobi_reference(f, factor(Q));
}

int jacobi_reference(const PolyFq& f, const Factorization& Q) {
    if (Q.unit != 1) throw std::invalid_argument("jacobi_reference: modulus must be monic");
    int degQ = 0;
    for (const auto& [P, e] : Q.factors) degQ += P.degree() * e;
    if (degQ == 0) return 1;
    if (f.degree() <= 0) return scalar_symbol(f.field(), f.lead(), degQ);
    int s = 1;
    for (const auto& [P, e] : Q.factors) {
        const int r = residue_symbol(f, P);
        if (r == 0) return 0;
        if (r == -1 && e % 2 == 1) s = -s;
    }
    return s;
}

int jacobi(const PolyFq& f, const PolyFq& Q) {
    require_monic_modulus(Q, "jacobi");
    require_same_field(f, Q);
    const FieldCtx& F = f.field();
    // (-1)^((q-1)/2) decides whether reciprocity ever flips a sign.
    const bool odd_half = ((F.q() - 1) / 2) % 2 == 1;
    int sign = 1;
    PolyFq a = f, b = Q;
    for (;;) {
        if (b.degree() == 0) return sign;
        a = a % b;
        if (a.is_zero()) return 0;
        const Residue c = a.lead();
        if (c != 1) {
            if (F.legendre(c) == -1 && b.degree() % 2 == 1) sign = -sign;
            a = a.scaled(F.inv(c));
        }
        if (a.degree() == 0) return sign;
        // (A/B) = (B/A) (-1)^((q-1)/2 deg A deg B) for monic A, B
        if (odd_half && (a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -sign;
        std::swap(a, b);
    }
}

int chi(const Discriminant& D, const PolyFq& f) {
    if (f.is_zero() || !f.is_monic())
        throw std::invalid_argument("chi: argument must be monic, got " + f.to_string());
    return jacobi(D.poly(), f);
}

}  // namespace ffm
