#include "ffmoments/ensemble.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "ffmoments/errors.hpp"
#include "ffmoments/eulerfact.hpp"

namespace ffm {

EnsembleParams::EnsembleParams(const FieldCtx& field, int g) : field_(field), g_(g) {
    if (g < 1) throw std::invalid_argument("EnsembleParams: genus must be >= 1");
}

BigInt EnsembleParams::size() const {
    return BigInt(q() - 1) * boost::multiprecision::pow(BigInt(q()), 2 * g_);
}

const char* to_string(SampleMode m) noexcept {
    switch (m) {
        case SampleMode::Exhaustive: return "exhaustive";
        case SampleMode::WithReplacement: return "with-replacement";
        case SampleMode::WithoutReplacement: return "without-replacement";
    }
    return "?";
}

SampleMode parse_sample_mode(const std::string& s) {
    if (s == "exhaustive") return SampleMode::Exhaustive;
    if (s == "with-replacement") return SampleMode::WithReplacement;
    if (s == "without-replacement") return SampleMode::WithoutReplacement;
    throw std::invalid_argument("unknown sample mode '" + s + "'");
}

std::vector<Discriminant> enumerate(const EnsembleParams& p, std::uint64_t budget) {
    std::vector<Discriminant> out;
    for_each_monic(
        p.field(), p.degree(),
        [&](std::uint64_t, const PolyFq& f) {
            if (is_squarefree(f)) out.push_back(Discriminant::trusted(f));
        },
        budget);
    return out;
}

Sample sample(const EnsembleParams& p, const SampleSpec& spec) {
    if (spec.mode == SampleMode::Exhaustive) {
        Sample s;
        s.items = enumerate(p);
        s.draws = s.items.size();
        if (spec.count != 0 && spec.count != s.items.size())
            throw std::invalid_argument("sample: exhaustive mode yields " +
                                        std::to_string(s.items.size()) + " items, not " +
                                        std::to_string(spec.count));
        return s;
    }
    if (spec.count == 0) throw std::invalid_argument("sample: count must be positive");
    if (spec.mode == SampleMode::WithoutReplacement && BigInt(spec.count) > p.size())
        throw std::invalid_argument("sample: without-replacement count " +
                                    std::to_string(spec.count) + " exceeds ensemble size");

    const int n = p.degree();
    const std::uint32_t q = p.q();
    std::mt19937_64 rng(spec.seed);
    Sample s;
    s.items.reserve(spec.count);
    std::unordered_set<PolyFq, PolyHash> seen;
    while (s.items.size() < spec.count) {
        std::vector<Residue> c(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i < n; ++i) c[i] = uniform_residue(rng, q);
        c[n] = 1;
        PolyFq f(p.field(), std::move(c));
        ++s.draws;
        if (!is_squarefree(f)) continue;
        if (spec.mode == SampleMode::WithoutReplacement && !seen.insert(f).second) continue;
        s.items.push_back(Discriminant::trusted(std::move(f)));
    }
    return s;
}

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

Expectation expectation(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("expectation: empty input");
    CompensatedSum s;
    for (double v : values) s.add(v);
    Expectation e;
    e.n = values.size();
    e.mean = s.value() / static_cast<double>(e.n);
    if (e.n > 1) {
        CompensatedSum ss;
        for (double v : values) ss.add((v - e.mean) * (v - e.mean));
        e.std_error = std::sqrt(ss.value() / static_cast<double>(e.n - 1) / static_cast<double>(e.n));
    }
    return e;
}

CharAverage char_average(const PolyFq& m, const EnsembleParams& p, std::uint64_t budget) {
    if (m.is_zero() || !m.is_monic()) throw std::invalid_argument("char_average: m must be monic");
    std::int64_t total = 0;
    std::uint64_t count = 0;
    for_each_monic(
        p.field(), p.degree(),
        [&](std::uint64_t, const PolyFq& f) {
            if (!is_squarefree(f)) return;
            ++count;
            total += jacobi(f, m);
        },
        budget);
    return {static_cast<double>(total) / static_cast<double>(count), a_constant(m)};
}

}  // namespace ffm
