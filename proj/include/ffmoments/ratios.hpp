#pragma once

#include <vector>

#include "ffmoments/eulerfact.hpp"
#include "ffmoments/sweep.hpp"

namespace ffm {

inline constexpr std::size_t kMaxRatioShifts = 2;
// logderiv_pair needs r > kLogDerivFloor / (2g ln q).
inline constexpr double kLogDerivFloor = 0.5;

// Numerator shifts alpha_k and denominator shifts gamma_m.
struct RatiosSpec {
    std::vector<cplx> alpha;
    std::vector<cplx> gamma;

    // Throws DomainError unless K, Q <= 2, Re gamma > 0, every |Re| < 1/4 and
    // every |Im| <= pi / ln q.
    void validate(std::uint32_t q) const;
    RatiosSpec conj() const;
};

// #H sum over e in {+-1}^K of |D|^((1/2) sum(e_k a_k - a_k)) prod X(1/2 + (a_k - e_k a_k)/2)
// Y(e a; gamma) A_D(e a; gamma).
cplx ratios_rhs(const RatiosSpec& spec, std::uint32_t q, int g, const EulerProductTable& t);

// Sum over D of prod L(1/2 + a_k) / prod L(1/2 + c_m); #H times the mean for samples.
// Equal numerator and denominator shifts cancel before evaluation.
cplx ratios_empirical(const SweepCache& cache, const RatiosSpec& spec);

struct LogDerivPair {
    double empirical = 0.0;
    double theory = 0.0;
};

// Sum over D of L'/L(1/2 + r) against
// #H (zeta_A'/zeta_A(1 + 2r) + A_D'(r; r) - ln q |D|^-r X(1/2 + r) zeta_A(1 - 2r) A_D(-r; r)).
double logderiv_theory(double r, std::uint32_t q, int g, const EulerProductTable& t);
LogDerivPair logderiv_pair(double r, const SweepCache& cache, const EulerProductTable& t);

}  // namespace ffm
