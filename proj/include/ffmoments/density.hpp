#pragma once

#include <string>
#include <vector>

#include "ffmoments/eulerfact.hpp"
#include "ffmoments/sweep.hpp"

namespace ffm {

// Even, real test function. Zeros are scaled as tau = t (2g ln q) / (2 pi)
// with t = -theta / ln q in [-pi/ln q, pi/ln q).
//   fejer:s          h(tau) = (sin(pi s tau) / (pi s tau))^2, Fourier support [-s, s]
//   trig:a0,a1,..    f(t) = sum a_n cos(n t ln q), periodic in t
//   indicator:a,w    h(tau) = (erf((tau + a)/w) - erf((tau - a)/w)) / 2
// The tau-native kinds are read on one period of t; trig is read in tau
// through the same linear map.
class TestFunction {
  public:
    enum class Kind { Fejer, TrigPoly, Indicator };

    static TestFunction fejer(double sigma);
    static TestFunction trig_poly(std::vector<double> coeffs);
    static TestFunction indicator(double half_width, double smoothing);
    // "fejer:1.0", "trig:1,0.5", "indicator:1,0.1"
    static TestFunction parse(const std::string& spec);
    std::string to_string() const;

    Kind kind() const noexcept { return kind_; }
    const std::vector<double>& params() const noexcept { return p_; }

    double scaled(double tau, std::uint32_t q, int g) const;
    double unscaled(double t, std::uint32_t q, int g) const;
    // Integrable over the real tau line; the trig kind is not.
    bool integrable() const noexcept { return kind_ != Kind::TrigPoly; }

  private:
    TestFunction(Kind k, std::vector<double> p) : kind_(k), p_(std::move(p)) {}
    double tau_native(double tau) const;
    Kind kind_;
    std::vector<double> p_;
};

struct DensityReport {
    std::uint32_t q = 0;
    int g = 0;
    std::uint64_t count = 0;
    std::string test;
    double empirical = 0.0;
    double std_error = 0.0;
    double theory = 0.0;
    double rmt = 0.0;  // NaN when the test function is not integrable on the line
};

// Mean over D of sum_j h(tau_j).
double density_empirical(const SweepCache& cache, const TestFunction& h);

// ln|D| - X'/X(1/2 - it) + 2(zeta_A'/zeta_A(1 + 2it) + A_D'(it; it)
//   - ln q |D|^-it X(1/2 + it) zeta_A(1 - 2it) A_D(-it; it)).
// The bracket has period pi/ln q. Within 1e-3/ln q of a multiple of the period
// it is replaced by its Taylor series, where two poles cancel.
cplx density_integrand(double t, std::uint32_t q, int g, const EulerProductTable& tab, bool series_patch = true);
// Taylor coefficients at t = 0 of the bracket above.
std::vector<cplx> density_series(std::uint32_t q, int g, const EulerProductTable& tab, int order = 4);

// (1/2pi) integral over one period of f(t) times the integrand. Throws
// NumericalFailure if doubling the panels moves the result by more than 1e-6.
double density_theory(const TestFunction& h, std::uint32_t q, int g, const EulerProductTable& tab);

// Integral over the real line of h(tau) (1 - sin(2 pi tau) / (2 pi tau)).
// Throws DomainError for test functions that are not integrable.
double rmt_limit(const TestFunction& h);

DensityReport density_report(const SweepCache& cache, const TestFunction& h, const EulerProductTable& tab);

}  // namespace ffm
