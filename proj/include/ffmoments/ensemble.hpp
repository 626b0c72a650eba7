#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffmoments/charsym.hpp"

namespace ffm {

// H_{2g+1,q}: monic square-free D of degree 2g+1.
class EnsembleParams {
  public:
    EnsembleParams(const FieldCtx& field, int g);

    const FieldCtx& field() const noexcept { return field_; }
    std::uint32_t q() const noexcept { return field_.q(); }
    int g() const noexcept { return g_; }
    int degree() const noexcept { return 2 * g_ + 1; }
    // |D| = q^(2g+1)
    double norm_d() const noexcept { return field_.norm(degree()); }
    // #H = (q-1) q^(2g)
    BigInt size() const;
    double size_f() const { return size().convert_to<double>(); }

  private:
    FieldCtx field_;
    int g_;
};

enum class SampleMode { Exhaustive, WithReplacement, WithoutReplacement };

const char* to_string(SampleMode m) noexcept;
SampleMode parse_sample_mode(const std::string& s);

struct SampleSpec {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::WithReplacement;
};

struct Sample {
    std::vector<Discriminant> items;
    std::uint64_t draws = 0;  // monic candidates drawn, accepted or not
};

// Canonical order; throws BudgetExceeded when q^(2g+1) exceeds the budget.
std::vector<Discriminant> enumerate(const EnsembleParams& p,
                                    std::uint64_t budget = kDefaultEnumerationBudget);
// Rejection sampling from uniform monic polynomials of degree 2g+1.
Sample sample(const EnsembleParams& p, const SampleSpec& spec);

// Uniform residue in [0, q) by rejection; identical on every platform, unlike
// std::uniform_int_distribution.
template <class Rng>
std::uint32_t uniform_residue(Rng& rng, std::uint32_t q) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % q;
    for (;;) {
        const std::uint64_t v = rng();
        if (v < limit) return static_cast<std::uint32_t>(v % q);
    }
}

struct Expectation {
    double mean = 0.0;
    double std_error = 0.0;  // of the mean; 0 for a single value
    std::size_t n = 0;
};
// Compensated summation in index order.
Expectation expectation(const std::vector<double>& values);

// Neumaier-compensated accumulator.
class CompensatedSum {
  public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + comp_; }

  private:
    double sum_ = 0.0, comp_ = 0.0;
};

struct CharAverage {
    double average = 0.0;    // (1/#H) sum over D of chi_D(m)
    double predicted = 0.0;  // a_m if m is a square, else 0
};
CharAverage char_average(const PolyFq& m, const EnsembleParams& p,
                         std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace ffm
