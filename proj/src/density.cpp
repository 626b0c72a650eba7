#include "ffmoments/density.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "ffmoments/errors.hpp"

namespace ffm {

namespace {

using std::numbers::pi;
using GL = boost::math::quadrature::gauss<double, 20>;

double logq(std::uint32_t q) { return std::log(static_cast<double>(q)); }

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw std::invalid_argument("test function: bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

// The bracket at complex w, no patching.
cplx bracket(cplx w, std::uint32_t q, int g, const EulerProductTable& tab) {
    const double L = logq(q);
    const ZetaA zeta(q);
    const cplx i(0.0, 1.0);
    const cplx r = i * w;
    // X(s) = q^(s - 1/2), so X'/X = ln q; |D|^-r X(1/2 + r) = q^(-2g r).
    // -X_D'/X_D = ln|D| - X'/X, which makes h = 1 count exactly 2g zeros.
    const cplx tail = L * std::exp(-2.0 * g * L * r) * zeta(1.0 - 2.0 * r) * a_d_one_ratio(-r, r, tab);
    return (2.0 * g + 1.0) * L - L + 2.0 * (zeta.log_deriv(1.0 + 2.0 * r) + a_d_prime(r, tab) - tail);
}

constexpr double kPatch = 1e-3;  // in units of 1/ln q
constexpr int kSeriesNodes = 32;

// Per-D sums of h(tau_j), with t = -theta/ln q and tau = t 2g ln q / (2 pi) = -theta g / pi.
std::vector<double> density_values(const SweepCache& cache, const TestFunction& h) {
    if (cache.records.empty()) throw std::invalid_argument("density: empty cache");
    const std::uint32_t q = cache.header.q;
    const int g = cache.header.g;
    std::vector<double> out;
    out.reserve(cache.records.size());
    for (const auto& rec : cache.records) {
        double s = 0.0;
        for (double th : rec.angles) s += h.scaled(-th * g / pi, q, g);
        out.push_back(s);
    }
    return out;
}

// Bracket at real t, using the Taylor coefficients near multiples of the period pi/L.
cplx patched_bracket(double t, std::uint32_t q, int g, const EulerProductTable& tab, const std::vector<cplx>& series) {
    const double L = logq(q);
    const double period = pi / L;
    const double tr = t - period * std::floor((t + 0.5 * period) / period);
    if (std::abs(tr) >= kPatch / L) return bracket(tr, q, g, tab);
    cplx v = 0.0;
    for (std::size_t n = series.size(); n-- > 0;) v = v * tr + series[n];
    return v;
}

}  // namespace

TestFunction TestFunction::fejer(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("fejer: sigma must be positive");
    return TestFunction(Kind::Fejer, {sigma});
}

TestFunction TestFunction::trig_poly(std::vector<double> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("trig: need at least one coefficient");
    for (double c : coeffs)
        if (!std::isfinite(c)) throw std::invalid_argument("trig: coefficients must be finite");
    return TestFunction(Kind::TrigPoly, std::move(coeffs));
}

TestFunction TestFunction::indicator(double half_width, double smoothing) {
    if (!(half_width > 0.0) || !(smoothing > 0.0)) throw std::invalid_argument("indicator: need a > 0 and w > 0");
    return TestFunction(Kind::Indicator, {half_width, smoothing});
}

TestFunction TestFunction::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("test function '" + spec + "': expected kind:params");
    const std::string kind = spec.substr(0, colon);
    const std::vector<double> p = parse_list(spec.substr(colon + 1));
    if (kind == "fejer") {
        if (p.size() != 1) throw std::invalid_argument("fejer takes one parameter");
        return fejer(p[0]);
    }
    if (kind == "trig") return trig_poly(p);
    if (kind == "indicator") {
        if (p.size() != 2) throw std::invalid_argument("indicator takes two parameters");
        return indicator(p[0], p[1]);
    }
    throw std::invalid_argument("unknown test function kind '" + kind + "'");
}

std::string TestFunction::to_string() const {
    std::string s = kind_ == Kind::Fejer ? "fejer:" : kind_ == Kind::TrigPoly ? "trig:" : "indicator:";
    for (std::size_t i = 0; i < p_.size(); ++i) s += (i ? "," : "") + format_double(p_[i]);
    return s;
}

double TestFunction::tau_native(double tau) const {
    if (kind_ == Kind::Fejer) {
        const double x = pi * p_[0] * tau;
        if (std::abs(x) < 1e-8) return 1.0 - x * x / 3.0;
        const double s = std::sin(x) / x;
        return s * s;
    }
    const double a = p_[0], w = p_[1];
    return 0.5 * (std::erf((tau + a) / w) - std::erf((tau - a) / w));
}

double TestFunction::unscaled(double t, std::uint32_t q, int g) const {
    const double L = logq(q);
    if (kind_ == Kind::TrigPoly) {
        double v = 0.0;
        for (std::size_t n = 0; n < p_.size(); ++n) v += p_[n] * std::cos(static_cast<double>(n) * L * t);
        return v;
    }
    // one period [-pi/L, pi/L), then tau
    const double period = 2.0 * pi / L;
    t -= period * std::floor((t + 0.5 * period) / period);
    return tau_native(t * 2.0 * g * L / (2.0 * pi));
}

double TestFunction::scaled(double tau, std::uint32_t q, int g) const {
    if (kind_ == Kind::TrigPoly) return unscaled(2.0 * pi * tau / (2.0 * g * logq(q)), q, g);
    return tau_native(tau);
}

double density_empirical(const SweepCache& cache, const TestFunction& h) {
    return expectation(density_values(cache, h)).mean;
}

std::vector<cplx> density_series(std::uint32_t q, int g, const EulerProductTable& tab, int order) {
    if (order < 1) throw std::invalid_argument("density_series: order must be >= 1");
    const double rho = 0.1 / logq(q);
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1, 0.0);
    for (int j = 0; j < kSeriesNodes; ++j) {
        const cplx w = std::polar(rho, 2.0 * pi * (j + 0.5) / kSeriesNodes);
        const cplx b = bracket(w, q, g, tab);
        cplx wn = 1.0;
        for (int n = 0; n <= order; ++n) {
            c[n] += b / wn;
            wn *= w;
        }
    }
    for (auto& v : c) v /= static_cast<double>(kSeriesNodes);
    return c;
}

cplx density_integrand(double t, std::uint32_t q, int g, const EulerProductTable& tab, bool series_patch) {
    if (!series_patch) {
        const double period = pi / logq(q);
        return bracket(t - period * std::floor((t + 0.5 * period) / period), q, g, tab);
    }
    return patched_bracket(t, q, g, tab, density_series(q, g, tab));
}

double density_theory(const TestFunction& h, std::uint32_t q, int g, const EulerProductTable& tab) {
    const double L = logq(q);
    const double T = pi / L;
    const auto series = density_series(q, g, tab);
    auto integrand = [&](double t) { return h.unscaled(t, q, g) * patched_bracket(t, q, g, tab, series).real(); };
    auto integrate = [&](int panels) {
        long double s = 0.0L;
        for (int p = 0; p < panels; ++p) s += GL::integrate(integrand, T * p / panels, T * (p + 1) / panels);
        // even integrand: (1/2pi) * 2 * integral over [0, pi/L]
        return static_cast<double>(s) / pi;
    };
    const int panels = std::max(64, 8 * g);
    const double a = integrate(panels), b = integrate(2 * panels);
    if (std::abs(a - b) > 1e-6 * std::max(1.0, std::abs(b)))
        throw NumericalFailure("density_theory: quadrature did not settle (" + format_double(a) + " vs " +
                               format_double(b) + ")");
    return b;
}

double rmt_limit(const TestFunction& h) {
    if (!h.integrable()) throw DomainError("rmt_limit: " + h.to_string() + " is not integrable on the line");
    auto f = [&](double tau) {
        const double x = 2.0 * pi * tau;
        const double k = std::abs(x) < 1e-4 ? x * x / 6.0 : 1.0 - std::sin(x) / x;
        return h.scaled(tau, 3, 1) * k;  // q and g only matter for the trig kind
    };
    const double width = h.kind() == TestFunction::Kind::Fejer ? 0.5 / std::max(1.0, h.params()[0]) : 0.5;
    constexpr double T = 4096.0;
    long double half = 0.0L, full = 0.0L;
    const long n = static_cast<long>(T / width);
    for (long p = 0; p < n; ++p) {
        full += GL::integrate(f, p * width, (p + 1) * width);
        if (p + 1 == n / 2) half = full;
    }
    // tails decay like C/T: remove it by comparing T/2 and T
    const double i_half = 2.0 * static_cast<double>(half), i_full = 2.0 * static_cast<double>(full);
    if (std::abs(i_full - i_half) > 1e-3) throw DomainError("rmt_limit: tail does not converge");
    return 2.0 * i_full - i_half;
}

DensityReport density_report(const SweepCache& cache, const TestFunction& h, const EulerProductTable& tab) {
    DensityReport r;
    r.q = cache.header.q;
    r.g = cache.header.g;
    r.count = cache.records.size();
    r.test = h.to_string();
    const std::vector<double> per_d = density_values(cache, h);
    const Expectation e = expectation(per_d);
    r.empirical = e.mean;
    r.std_error = e.std_error;
    r.theory = density_theory(h, r.q, r.g, tab);
    r.rmt = h.integrable() ? rmt_limit(h) : std::numeric_limits<double>::quiet_NaN();
    return r;
}

}  // namespace ffm
