#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ffmoments/charsym.hpp"
#include "ffmoments/extfield.hpp"

namespace ffm {

using cplx = std::complex<double>;

// L(u, chi_D) = sum_{n=0}^{2g} A_D(n) u^n, exact coefficients.
class LPolynomial {
  public:
    LPolynomial(Discriminant d, std::vector<BigInt> coeffs);

    const Discriminant& discriminant() const noexcept { return d_; }
    int genus() const noexcept { return d_.genus(); }
    std::uint32_t q() const noexcept { return d_.field().q(); }
    const std::vector<BigInt>& coeffs() const noexcept { return a_; }
    const BigInt& coeff(int n) const { return a_.at(static_cast<std::size_t>(n)); }
    const std::vector<double>& coeffs_f() const noexcept { return af_; }

  private:
    Discriminant d_;
    std::vector<BigInt> a_;
    std::vector<double> af_;
};

// A_D(n) = sum of chi_D(f) over monic f of degree n. Needs q^(2g) within budget.
LPolynomial lpoly_charsum(const Discriminant& D, std::uint64_t budget = kDefaultEnumerationBudget);

// Point counts over F_{q^n}, n = 1..g, sharing extension-field tables.
class PointCounter {
  public:
    PointCounter(const FieldCtx& field, int g, std::uint64_t table_bound = kDefaultSquareTableBound);

    int g() const noexcept { return static_cast<int>(ext_.size()); }
    const FieldCtx& field() const noexcept { return field_; }
    // sum over c in F_{q^n} of quad_char(D(c))
    std::int64_t char_sum(const Discriminant& D, int n) const;
    // N_n = q^n + 1 + char_sum
    BigInt count(const Discriminant& D, int n) const;

  private:
    FieldCtx field_;
    std::vector<ExtFieldCtx> ext_;
};

BigInt point_count(const Discriminant& D, int n);

// Newton's identities on p_n = q^n + 1 - N_n, n <= g; the rest by the functional equation.
LPolynomial lpoly_pointcount(const Discriminant& D, const PointCounter& pc);
LPolynomial lpoly_pointcount(const Discriminant& D);

// A(2g-n) = q^(g-n) A(n) for all n.
bool fe_check(const LPolynomial& L);

cplx evaluate_u(const LPolynomial& L, cplx u);
// L(s) = L(u = q^-s)
cplx evaluate(const LPolynomial& L, cplx s);
// L'(s)/L(s), derivative in s.
cplx log_derivative(const LPolynomial& L, cplx s);

// L(1/2) = (e_num + o_num q^(-1/2)) / q^g exactly.
struct CentralValue {
    BigInt e_num;
    BigInt o_num;
    int g = 0;
    std::uint32_t q = 0;
    double value() const;
};
CentralValue central_value(const LPolynomial& L);

// X(s) = q^(-1/2+s); X_D(s) = q^(g(1-2s)).
cplx fe_x(std::uint32_t q, cplx s);
cplx fe_xd(std::uint32_t q, int g, cplx s);
// Z(s) = X_D(s)^(-1/2) L(s), principal branch q^(-g(1-2s)/2).
cplx z_value(const LPolynomial& L, cplx s);

// Relative residual of the exact formula
// L(s) = sum_{deg n<=g} chi(n)|n|^-s + X_D(s) sum_{deg m<=g-1} chi(m)|m|^(s-1).
double fe_identity_residual(const LPolynomial& L, cplx s);

struct ZeroSet {
    std::vector<double> angles;  // 2g angles of sqrt(q) u_j in (-pi, pi], sorted
    double max_radius_deviation = 0.0;
};
// Throws NumericalFailure if any root is off the circle by more than 1e-6.
ZeroSet zeros(const LPolynomial& L);

}  // namespace ffm
