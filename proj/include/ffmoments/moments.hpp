#pragma once

#include <cstdint>
#include <vector>

#include "ffmoments/eulerfact.hpp"
#include "ffmoments/sweep.hpp"

namespace ffm {

inline constexpr int kDefaultNodes = 64;
inline constexpr int kMaxContourK = 4;

// Circles |z_j| = radii[j] with `nodes` trapezoid points each.
struct ContourSpec {
    int k = 1;
    int nodes = kDefaultNodes;
    std::vector<double> radii;

    // r_j = (0.04 / ln q)(1 + j/(2k)), j = 1..k.
    static ContourSpec defaults(int k, std::uint32_t q, int nodes = kDefaultNodes);
    // Largest admissible radius: 0.9 min(1/4, pi/(2 ln q)).
    static double max_radius(std::uint32_t q);
    // Throws std::invalid_argument unless the radii are increasing, positive and admissible.
    void validate(std::uint32_t q) const;
};

// Q_k(x) = sum c_m x^m with x = log_q |D|.
struct MomentPolynomial {
    int k = 0;
    std::vector<double> coeffs;
    std::vector<double> imag_residue;  // from the contour sum; zeros for closed forms
    int cutoff = 0;
    int nodes = 0;
    std::vector<double> radii;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double leading() const { return coeffs.back(); }
    double operator()(double x) const;
};

// 1/2 P(1) (x + 1 + 4S).
MomentPolynomial q1_closed(const EulerProductTable& t);

// Coefficients of Q_k from one pass over the k-fold trapezoid grid. Throws
// NumericalFailure when a coefficient keeps an imaginary part above
// 1e-8 |c| + 1e-12.
MomentPolynomial qk_contour(int k, const EulerProductTable& t, const ContourSpec& spec, int threads = 1);
MomentPolynomial qk_contour(int k, const EulerProductTable& t, int threads = 1);

// Q_0 = 1, Q_1 closed form, contour otherwise.
MomentPolynomial moment_polynomial(int k, const EulerProductTable& t, int threads = 1);

// A(1/2; 0,..,0) prod_{j<=k} j!/(2j)!.
double leading_coeff(int k, const EulerProductTable& t);

struct MomentReport {
    std::uint32_t q = 0;
    int g = 0;
    int k = 0;
    std::uint64_t count = 0;
    SampleMode mode = SampleMode::Exhaustive;
    std::uint64_t seed = 0;
    bool exact = false;
    double h_size = 0.0;         // #H
    double empirical_mean = 0.0;  // over the cached D
    double empirical_sum = 0.0;   // the full sum, or #H times the mean for samples
    double std_error = 0.0;       // of the mean
    double predicted = 0.0;       // #H Q_k(2g+1)
    double ratio = 0.0;
};

// Sum of L(1/2, chi_D)^k against #H Q_k(2g+1). With exact = true the k-th
// powers are summed exactly in Z[sqrt q] from the cached coefficients.
MomentReport empirical_moment(const SweepCache& cache, const MomentPolynomial& Q, bool exact = false);

// #H sum over signs e of prod_j q^(-e_j a_j / 2) prod_{i<=j} zeta_A(1 + e_i a_i + e_j a_j)
// A(1/2; e a) |D|^(sum e_j a_j / 2). Shifts must be nonzero with a_i +- a_j != 0.
cplx shifted_conjecture(const std::vector<cplx>& alpha, std::uint32_t q, int g, const EulerProductTable& t);
// Sum over D of prod_j Z_L(1/2 + a_j); #H times the mean for sampled caches.
cplx shifted_empirical(const SweepCache& cache, const std::vector<cplx>& alpha);

// #H when every D is present, else #H / count, so a mean scales to a sum.
double sum_scale(const SweepCache& cache);

}  // namespace ffm
