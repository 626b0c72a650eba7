#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ffmoments/factor.hpp"

namespace ffm {

using cplx = std::complex<double>;

inline constexpr int kDefaultCutoff = 30;

// zeta_A(s) = 1/(1 - q^(1-s)).
class ZetaA {
  public:
    explicit ZetaA(std::uint32_t q);

    std::uint32_t q() const noexcept { return q_; }
    double log_q() const noexcept { return L_; }

    // Throws DomainError within 1e-14 of a pole.
    cplx operator()(cplx s) const;
    // 1/zeta_A(s) = 1 - q^(1-s); zero at the poles.
    cplx inverse(cplx s) const;
    // zeta_A'/zeta_A(s) = -ln q q^(1-s)/(1 - q^(1-s)).
    cplx log_deriv(cplx s) const;
    // c[0] s^-1 + c[1] + c[2] s + ... for zeta_A(1+s), through s^order.
    std::vector<double> shifted_laurent(int order) const;

  private:
    std::uint32_t q_;
    double L_;
};

// Prime-polynomial counts pi_q(d), d = 1..N, for degree-indexed products.
class EulerProductTable {
  public:
    EulerProductTable(std::uint32_t q, int cutoff = kDefaultCutoff);

    std::uint32_t q() const noexcept { return q_; }
    double log_q() const noexcept { return L_; }
    int cutoff() const noexcept { return N_; }
    // pi_q(d) as a double (exact for the sizes used), d in 1..N.
    double count(int d) const { return counts_.at(static_cast<std::size_t>(d)); }
    const BigInt& exact_count(int d) const { return exact_.at(static_cast<std::size_t>(d)); }

  private:
    std::uint32_t q_;
    double L_;
    int N_;
    std::vector<double> counts_;
    std::vector<BigInt> exact_;
};

// A(1/2; z_1..z_k). Requires |Re z_j| < 1/2 - margin.
cplx a_shift(const std::vector<cplx>& z, const EulerProductTable& t, double margin = 0.01);

struct P1Suite {
    double p1;        // P(1) = A(1/2; 0)
    double s;         // sum over P of deg P / (|P|(|P|+1) - 1)
    double a_prime;   // P(1) * 2 ln q * S
    double tail_log_p1;
    double tail_s;
};
P1Suite p1_suite(const EulerProductTable& t);

struct MomentConstant {
    double generic;      // a_shift at the origin
    double closed_form;  // per-prime rational function (k = 1, 2, 3)
};
MomentConstant moment_constant(int k, const EulerProductTable& t);

// zeta-factor quotient Y(alpha; gamma). 1/zeta_A(1) counts as 0; a factor
// appearing in both numerator and denominator cancels before evaluation.
cplx y_factor(const std::vector<cplx>& alpha, const std::vector<cplx>& gamma, const ZetaA& z);

// A_D(alpha; gamma) from the closed-form per-prime factor. All |Re| <= 1/4.
cplx a_ratios(const std::vector<cplx>& alpha, const std::vector<cplx>& gamma,
              const EulerProductTable& t);

// A_D(alpha; gamma) for one alpha and one gamma, straight from its one-ratio form.
cplx a_d_one_ratio(cplx alpha, cplx gamma, const EulerProductTable& t);
// A_D'(r; r) = sum ln|P| / ((|P|^(1+2r) - 1)(|P| + 1)).
cplx a_d_prime(cplx r, const EulerProductTable& t);

struct OneRatioSuite {
    cplx a_d;        // A_D(alpha; gamma)
    cplx a_d_minus;  // A_D(-r; r)
    cplx a_d_prime;  // A_D'(r; r)
};
OneRatioSuite one_ratio_suite(cplx alpha, cplx gamma, cplx r, const EulerProductTable& t);

// Bound on |log(full product) - log(truncated product)| when the per-prime
// log is at most c * |P|^(-decay): sum over d > N of pi_q(d) c q^(-decay d),
// with pi_q(d) <= q^d / d.
double tail_bound(const EulerProductTable& t, double c, double decay);
// Tail bound for A(1/2; 0,..,0) with k zeros.
double moment_tail_bound(int k, const EulerProductTable& t);
// Tail bound for A(1/2; z) or A_D with n shifts of real part at most sigma.
double shift_tail_bound(std::size_t n_shifts, double sigma, const EulerProductTable& t);

// a_m = prod over P | m of (1 + 1/|P|)^-1 if m is a square, else 0.
double a_constant(const PolyFq& m);

namespace detail {
// log(1 + d) and exp(w) - 1 without cancellation for small arguments.
cplx log1p(cplx d);
cplx expm1(cplx w);
}  // namespace detail

}  // namespace ffm
