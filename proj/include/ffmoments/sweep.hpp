#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffmoments/ensemble.hpp"
#include "ffmoments/lfun.hpp"

namespace ffm {

inline constexpr int kCacheVersion = 1;

struct SweepHeader {
    int version = kCacheVersion;
    std::uint32_t q = 0;
    int g = 0;
    SampleMode mode = SampleMode::Exhaustive;
    std::uint64_t seed = 0;
    std::uint64_t count = 0;
};

// One discriminant: coefficients ascending, A_D(0..2g), L(1/2) and zero angles.
struct SweepRecord {
    std::uint64_t index = 0;
    std::vector<Residue> d;
    std::vector<BigInt> a;
    double central = 0.0;
    std::vector<double> angles;

    LPolynomial lpoly(const FieldCtx& field) const;
    friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

struct SweepCache {
    SweepHeader header;
    std::vector<SweepRecord> records;

    FieldCtx field() const { return FieldCtx(header.q); }
    EnsembleParams params() const { return EnsembleParams(field(), header.g); }
    // Throws std::invalid_argument if the header and rows disagree.
    void validate() const;
};

struct SweepConfig {
    std::uint32_t q = 3;
    int g = 1;
    SampleSpec sample{0, 0, SampleMode::Exhaustive};
    int threads = 1;
    // Also build every L-polynomial from character sums and require equality.
    bool cross_check = false;
    std::uint64_t budget = kDefaultEnumerationBudget;
};

// Raised when --cross-check finds two different L-polynomials.
class CrossCheckFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

SweepRecord sweep_record(const Discriminant& D, std::uint64_t index, const PointCounter& pc);
SweepCache run_sweep(const SweepConfig& cfg);

// "# ffmoments-cache v1; q=..; g=..; mode=..; seed=..; count=.." then
// "index,D,A,central,angles" rows, lists separated by ';'.
void write_cache(const SweepCache& c, std::ostream& os);
SweepCache read_cache(std::istream& is);
void write_cache_file(const SweepCache& c, const std::string& path);
SweepCache read_cache_file(const std::string& path);

// Shortest decimal that reads back to the same double.
std::string format_double(double v);
double parse_double(const std::string& s);

}  // namespace ffm
