#include "ffmoments/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "ffmoments/charsym.hpp"
#include "ffmoments/density.hpp"
#include "ffmoments/moments.hpp"
#include "ffmoments/ratios.hpp"

namespace ffm {

namespace {

// Every monic polynomial of degree n, coefficients read as base-q digits.
std::vector<PolyFq> monic(const FieldCtx& F, int n) {
    std::vector<PolyFq> out;
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= F.q();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<Residue> c(static_cast<std::size_t>(n) + 1, 0);
        std::uint64_t v = idx;
        for (int i = 0; i < n; ++i, v /= F.q()) c[static_cast<std::size_t>(i)] = static_cast<Residue>(v % F.q());
        c.back() = 1;
        out.emplace_back(F, std::move(c));
    }
    return out;
}

std::string dump(const SweepCache& c) {
    std::ostringstream os;
    write_cache(c, os);
    return os.str();
}

}  // namespace

std::vector<SelfCheck> run_selftest(int threads) {
    std::vector<SelfCheck> out;
    auto check = [&](const std::string& name, const std::function<std::string()>& body) {
        SelfCheck c{name, false, ""};
        try {
            c.detail = body();
            c.pass = c.detail.empty();
        } catch (const std::exception& e) {
            c.detail = std::string("exception: ") + e.what();
        }
        out.push_back(std::move(c));
    };

    check("ensemble size", [] {
        for (auto [q, g] : {std::pair{3u, 1}, std::pair{3u, 2}, std::pair{5u, 1}}) {
            const EnsembleParams p(FieldCtx(q), g);
            if (BigInt(enumerate(p).size()) != p.size()) return "count mismatch at q=" + std::to_string(q);
        }
        return std::string();
    });

    check("reciprocity", [] {
        const FieldCtx F(3);
        std::vector<PolyFq> fs{PolyFq(F)};
        for (int d = 0; d <= 2; ++d)
            for (const auto& m : monic(F, d))
                for (Residue c = 1; c < 3; ++c) fs.push_back(m * PolyFq::constant(F, c));
        for (int dq = 0; dq <= 2; ++dq)
            for (const auto& Q : monic(F, dq))
                for (const auto& f : fs)
                    if (jacobi(f, Q) != jacobi_reference(f, Q)) return std::string("jacobi disagrees");
        return std::string();
    });

    std::vector<SweepCache> small;
    check("dual L-polynomials", [&] {
        for (int g : {1, 2}) {
            SweepConfig cfg{3, g};
            cfg.cross_check = true;
            cfg.threads = threads;
            small.push_back(run_sweep(cfg));
        }
        return std::string();
    });

    check("functional equation and Weil bound", [&] {
        for (const auto& c : small) {
            const FieldCtx F = c.field();
            for (const auto& rec : c.records) {
                const LPolynomial L = rec.lpoly(F);
                if (!fe_check(L)) return std::string("coefficient symmetry fails");
                if (zeros(L).max_radius_deviation > 1e-9) return std::string("root off the circle");
                if (fe_identity_residual(L, cplx(0.3, 1.7)) > 1e-10) return std::string("identity residual");
            }
        }
        return std::string();
    });

    check("Q_1 contour", [&] {
        const EulerProductTable t(3);
        const MomentPolynomial a = q1_closed(t), b = qk_contour(1, t, threads);
        for (int m = 0; m <= 1; ++m)
            if (std::abs(a.coeffs[m] - b.coeffs[m]) > 1e-8 * std::abs(a.coeffs[m])) return std::string("coefficient differs");
        return std::string();
    });

    check("ratios pole cancellation", [&] {
        if (small.size() < 2) return std::string("no cache");
        const EulerProductTable t(3);
        const RatiosSpec s{{cplx(0.1, 0.0)}, {cplx(0.1, 0.0)}};
        const double h = small[1].params().size_f();
        if (ratios_empirical(small[1], s) != cplx(h, 0.0)) return std::string("empirical != #H");
        if (std::abs(ratios_rhs(s, 3, 2, t) - h) > 1e-12 * h) return std::string("rhs != #H");
        return std::string();
    });

    check("zero count", [&] {
        if (small.size() < 2) return std::string("no cache");
        const TestFunction one = TestFunction::trig_poly({1.0});
        if (density_empirical(small[1], one) != 4.0) return std::string("empirical count");
        const EulerProductTable t(3);
        if (std::abs(density_theory(one, 3, 2, t) - 4.0) > 1e-8) return std::string("theory count");
        return std::string();
    });

    check("cache round trip", [&] {
        if (small.empty()) return std::string("no cache");
        const std::string text = dump(small.back());
        std::istringstream is(text);
        const SweepCache back = read_cache(is);
        if (back.records != small.back().records || dump(back) != text) return std::string("records differ");
        return std::string();
    });

    check("thread independence", [&] {
        SweepConfig a{5, 2, SampleSpec{50, 1, SampleMode::WithoutReplacement}, 1};
        SweepConfig b = a;
        b.threads = std::max(2, threads);
        if (dump(run_sweep(a)) != dump(run_sweep(b))) return std::string("caches differ");
        return std::string();
    });

    return out;
}

}  // namespace ffm
