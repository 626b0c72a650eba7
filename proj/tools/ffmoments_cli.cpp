// ffmoments: sweep the hyperelliptic ensemble and report moments, ratios and
// one-level densities against their conjectured values.
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffmoments/density.hpp"
#include "ffmoments/errors.hpp"
#include "ffmoments/moments.hpp"
#include "ffmoments/parallel.hpp"
#include "ffmoments/ratios.hpp"
#include "ffmoments/selftest.hpp"

using json = nlohmann::ordered_json;
using namespace ffm;

namespace {

struct Opts {
    std::uint32_t q = 3;
    int g = 1;
    int k = 1;
    int cutoff = kDefaultCutoff;
    int nodes = kDefaultNodes;
    std::uint64_t sample = 0;  // 0: every D
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
    std::string cache;
    bool cross_check = false;
    std::string alpha;
    std::string gamma;
    double r = 0.0;
    std::string test = "fejer:1.0";
    bool g_given = false;
    bool r_given = false;
};

double parse_real(const std::string& s, const std::string& whole) {
    if (s.empty() || s == "+" || s == "-") return s == "-" ? -1.0 : 1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument("bad complex number '" + whole + "'");
    return v;
}

// "0.1", "-0.2+0.05i", "0.3i"
cplx parse_complex(std::string s) {
    const std::string whole = s;
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw std::invalid_argument("empty complex number");
    if (s.back() != 'i') return {parse_real(s, whole), 0.0};
    s.pop_back();
    // last sign that does not belong to an exponent
    std::size_t cut = 0;
    for (std::size_t i = s.size(); i-- > 1;)
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            cut = i;
            break;
        }
    if (cut == 0) return {0.0, parse_real(s, whole)};
    return {parse_real(s.substr(0, cut), whole), parse_real(s.substr(cut), whole)};
}

std::vector<cplx> parse_shifts(const std::string& s) {
    std::vector<cplx> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
    return out;
}

json cjson(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

void emit(const json& j, const Opts& o) {
    const std::string text = j.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + o.out + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("write to '" + o.out + "' failed");
}

SweepCache load(const Opts& o) {
    if (o.cache.empty()) throw std::invalid_argument("this report needs --cache");
    SweepCache c = read_cache_file(o.cache);
    c.validate();
    return c;
}

json cache_params(const SweepCache& c) {
    return json{{"q", c.header.q},
                {"g", c.header.g},
                {"mode", to_string(c.header.mode)},
                {"seed", c.header.seed},
                {"count", c.header.count},
                {"h_size", c.params().size_f()}};
}

int cmd_sweep(const Opts& o) {
    SweepConfig cfg;
    cfg.q = o.q;
    cfg.g = o.g;
    cfg.threads = o.threads;
    cfg.cross_check = o.cross_check;
    cfg.sample = o.sample == 0 ? SampleSpec{0, o.seed, SampleMode::Exhaustive}
                               : SampleSpec{o.sample, o.seed, SampleMode::WithoutReplacement};
    const SweepCache c = run_sweep(cfg);
    if (o.out.empty())
        write_cache(c, std::cout);
    else
        write_cache_file(c, o.out);
    return 0;
}

int report_moments(const Opts& o) {
    const SweepCache c = load(o);
    const EulerProductTable t(c.header.q, o.cutoff);
    MomentPolynomial Q;
    if (o.k <= 1) {
        Q = moment_polynomial(o.k, t, o.threads);
    } else {
        Q = qk_contour(o.k, t, ContourSpec::defaults(o.k, c.header.q, o.nodes), o.threads);
    }
    const bool exact = c.header.mode == SampleMode::Exhaustive;
    const MomentReport r = empirical_moment(c, Q, exact);
    json p = cache_params(c);
    p["k"] = o.k;
    p["cutoff"] = o.cutoff;
    p["nodes"] = o.nodes;
    p["exact"] = r.exact;
    json j;
    j["params"] = p;
    j["predicted"] = {{"sum", r.predicted}, {"q_k", Q.coeffs}, {"x", 2.0 * c.header.g + 1.0}};
    j["empirical"] = {{"sum", r.empirical_sum}, {"mean", r.empirical_mean}};
    j["ratio"] = r.ratio;
    j["tolerances"] = {{"std_error", r.std_error}, {"imag_residue", Q.imag_residue}};
    j["tail_bounds"] = {{"moment", o.k == 0 ? 0.0 : moment_tail_bound(o.k, t)}};
    emit(j, o);
    return 0;
}

int report_ratios(const Opts& o) {
    const SweepCache c = load(o);
    const EulerProductTable t(c.header.q, o.cutoff);
    json j;
    j["params"] = cache_params(c);
    j["params"]["cutoff"] = o.cutoff;
    double sigma = o.r_given ? std::abs(o.r) : 0.0;
    std::size_t n_shifts = o.r_given ? 2 : 0;
    if (!o.alpha.empty() || !o.gamma.empty()) {
        const RatiosSpec s{parse_shifts(o.alpha), parse_shifts(o.gamma)};
        const cplx rhs = ratios_rhs(s, c.header.q, c.header.g, t);
        const cplx emp = ratios_empirical(c, s);
        for (const auto& v : {s.alpha, s.gamma})
            for (const auto& z : v) sigma = std::max(sigma, std::abs(z.real()));
        n_shifts = std::max(n_shifts, s.alpha.size() + s.gamma.size());
        j["params"]["alpha"] = o.alpha;
        j["params"]["gamma"] = o.gamma;
        j["predicted"]["ratios"] = cjson(rhs);
        j["empirical"]["ratios"] = cjson(emp);
        j["ratio"]["ratios"] = cjson(emp / rhs);
    }
    if (o.r_given) {
        const LogDerivPair p = logderiv_pair(o.r, c, t);
        j["params"]["r"] = o.r;
        j["predicted"]["logderiv"] = p.theory;
        j["empirical"]["logderiv"] = p.empirical;
        j["ratio"]["logderiv"] = p.empirical / p.theory;
    }
    if (!j.contains("predicted")) throw std::invalid_argument("ratios report needs --alpha/--gamma or --r");
    j["tolerances"] = {{"denominator_floor", 1e-12}};
    j["tail_bounds"] = {{"shift", shift_tail_bound(n_shifts, sigma, t)}};
    emit(j, o);
    return 0;
}

int report_density(const Opts& o) {
    const SweepCache c = load(o);
    const EulerProductTable t(c.header.q, o.cutoff);
    const TestFunction h = TestFunction::parse(o.test);
    const DensityReport r = density_report(c, h, t);
    json j;
    j["params"] = cache_params(c);
    j["params"]["test"] = r.test;
    j["params"]["cutoff"] = o.cutoff;
    j["predicted"] = {{"theory", r.theory}, {"rmt", std::isnan(r.rmt) ? json(nullptr) : json(r.rmt)}};
    j["empirical"] = {{"mean", r.empirical}};
    j["ratio"] = {{"theory", r.empirical / r.theory},
                  {"rmt", std::isnan(r.rmt) ? json(nullptr) : json(r.empirical / r.rmt)}};
    j["tolerances"] = {{"std_error", r.std_error}, {"quadrature", 1e-6}};
    j["tail_bounds"] = {{"shift", shift_tail_bound(2, 0.0, t)}};
    emit(j, o);
    return 0;
}

int report_conjecture(const Opts& o) {
    const EulerProductTable t(o.q, o.cutoff);
    MomentPolynomial Q;
    if (o.k <= 1)
        Q = moment_polynomial(o.k, t, o.threads);
    else
        Q = qk_contour(o.k, t, ContourSpec::defaults(o.k, o.q, o.nodes), o.threads);
    json j;
    j["params"] = {{"q", o.q}, {"k", o.k}, {"cutoff", o.cutoff}, {"nodes", Q.nodes}, {"radii", Q.radii}};
    j["predicted"] = {{"q_k", Q.coeffs}, {"leading_closed_form", o.k == 0 ? 1.0 : leading_coeff(o.k, t)}};
    if (o.g_given) {
        const double x = 2.0 * o.g + 1.0;
        const double h = EnsembleParams(FieldCtx(o.q), o.g).size_f();
        j["params"]["g"] = o.g;
        j["predicted"]["value"] = Q(x);
        j["predicted"]["sum"] = h * Q(x);
    }
    j["empirical"] = nullptr;
    j["ratio"] = nullptr;
    j["tolerances"] = {{"imag_residue", Q.imag_residue}};
    j["tail_bounds"] = {{"moment", o.k == 0 ? 0.0 : moment_tail_bound(o.k, t)}};
    emit(j, o);
    return 0;
}

int report_selftest(const Opts& o) {
    const auto checks = run_selftest(o.threads);
    bool ok = true;
    json list = json::array();
    for (const auto& c : checks) {
        ok = ok && c.pass;
        list.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    }
    json j;
    j["params"] = {{"threads", o.threads}};
    j["predicted"] = nullptr;
    j["empirical"] = {{"checks", list}};
    j["ratio"] = nullptr;
    j["tolerances"] = {{"weil", 1e-9}, {"identity", 1e-10}, {"q1", 1e-8}};
    j["tail_bounds"] = nullptr;
    j["pass"] = ok;
    emit(j, o);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moments and ratios of quadratic Dirichlet L-functions over F_q[x]"};
    app.require_subcommand(1);
    Opts o;

    auto common = [&](CLI::App* s) {
        s->add_option("--q", o.q, "odd prime field size")->check(CLI::PositiveNumber);
        s->add_option("--threads", o.threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
        s->add_option("--out", o.out, "output file (default stdout)");
    };

    auto* sweep = app.add_subcommand("sweep", "compute L-polynomials, central values and zeros into a cache");
    common(sweep);
    sweep->add_option("--g", o.g, "genus")->check(CLI::PositiveNumber);
    sweep->add_option("--sample", o.sample, "sample size without replacement, 0 for every D");
    sweep->add_option("--seed", o.seed, "sampling seed");
    sweep->add_flag("--cross-check", o.cross_check, "also build each L from character sums and compare");

    auto* report = app.add_subcommand("report", "JSON report");
    common(report);
    std::string kind;
    report->add_option("kind", kind, "moments | ratios | density | conjecture | selftest")
        ->required()
        ->check(CLI::IsMember({"moments", "ratios", "density", "conjecture", "selftest"}));
    auto* gopt = report->add_option("--g", o.g, "genus for conjecture values")->check(CLI::PositiveNumber);
    report->add_option("--k", o.k, "moment")->check(CLI::Range(0, kMaxContourK));
    report->add_option("--cutoff", o.cutoff, "Euler product degree cutoff")->check(CLI::PositiveNumber);
    report->add_option("--nodes", o.nodes, "contour nodes per circle")->check(CLI::PositiveNumber);
    report->add_option("--cache", o.cache, "sweep cache");
    report->add_option("--alpha", o.alpha, "numerator shifts, e.g. 0.1,0.05+0.2i");
    report->add_option("--gamma", o.gamma, "denominator shifts");
    auto* ropt = report->add_option("--r", o.r, "log-derivative point");
    report->add_option("--test", o.test, "test function, e.g. fejer:1.0, trig:1,0.5, indicator:1,0.1");
    // accepted everywhere so one config line drives both steps
    report->add_option("--seed", o.seed, "unused by reports");
    report->add_option("--sample", o.sample, "unused by reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    o.g_given = gopt->count() > 0;
    o.r_given = ropt->count() > 0;
    o.threads = resolve_threads(o.threads);

    try {
        if (*sweep) return cmd_sweep(o);
        if (kind == "moments") return report_moments(o);
        if (kind == "ratios") return report_ratios(o);
        if (kind == "density") return report_density(o);
        if (kind == "conjecture") return report_conjecture(o);
        return report_selftest(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
