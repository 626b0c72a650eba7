#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ffmoments/density.hpp"
#include "ffmoments/errors.hpp"
#include "ffmoments/moments.hpp"
#include "ffmoments/ratios.hpp"
#include "ffmoments/selftest.hpp"

namespace py = pybind11;
using namespace ffm;

namespace {

py::int_ to_py(const BigInt& v) { return py::int_(py::module_::import("builtins").attr("int")(v.str())); }

py::list to_py(const std::vector<BigInt>& v) {
    py::list out;
    for (const auto& x : v) out.append(to_py(x));
    return out;
}

LPolynomial lpoly_of(std::uint32_t q, const std::vector<Residue>& d, bool charsum) {
    const Discriminant D(PolyFq(FieldCtx(q), d));
    return charsum ? lpoly_charsum(D) : lpoly_pointcount(D);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Moments and ratios of quadratic Dirichlet L-functions over F_q[x]";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);
    py::register_exception<CrossCheckFailure>(m, "CrossCheckFailure", PyExc_RuntimeError);

    m.def("ensemble_size", [](std::uint32_t q, int g) { return to_py(EnsembleParams(FieldCtx(q), g).size()); },
          py::arg("q"), py::arg("g"));

    m.def(
        "lpoly",
        [](std::uint32_t q, const std::vector<Residue>& d, bool charsum) { return to_py(lpoly_of(q, d, charsum).coeffs()); },
        py::arg("q"), py::arg("d"), py::arg("charsum") = false,
        "Coefficients A_D(0..2g) for D given by ascending coefficients.");
    m.def(
        "zeros",
        [](std::uint32_t q, const std::vector<Residue>& d) { return zeros(lpoly_of(q, d, false)).angles; },
        py::arg("q"), py::arg("d"));
    m.def(
        "central_value",
        [](std::uint32_t q, const std::vector<Residue>& d) { return central_value(lpoly_of(q, d, false)).value(); },
        py::arg("q"), py::arg("d"));

    py::class_<SweepRecord>(m, "SweepRecord")
        .def_readonly("index", &SweepRecord::index)
        .def_readonly("d", &SweepRecord::d)
        .def_property_readonly("a", [](const SweepRecord& r) { return to_py(r.a); })
        .def_readonly("central", &SweepRecord::central)
        .def_readonly("angles", &SweepRecord::angles);

    py::class_<SweepCache>(m, "SweepCache")
        .def_property_readonly("q", [](const SweepCache& c) { return c.header.q; })
        .def_property_readonly("g", [](const SweepCache& c) { return c.header.g; })
        .def_property_readonly("mode", [](const SweepCache& c) { return std::string(to_string(c.header.mode)); })
        .def_property_readonly("seed", [](const SweepCache& c) { return c.header.seed; })
        .def_readonly("records", &SweepCache::records)
        .def("__len__", [](const SweepCache& c) { return c.records.size(); })
        .def("to_csv",
             [](const SweepCache& c) {
                 std::ostringstream os;
                 write_cache(c, os);
                 return os.str();
             })
        .def_static("from_csv", [](const std::string& s) {
            std::istringstream is(s);
            return read_cache(is);
        });

    m.def(
        "sweep",
        [](std::uint32_t q, int g, std::uint64_t sample, std::uint64_t seed, int threads, bool cross_check) {
            SweepConfig cfg{q, g};
            cfg.sample = sample == 0 ? SampleSpec{0, seed, SampleMode::Exhaustive}
                                     : SampleSpec{sample, seed, SampleMode::WithoutReplacement};
            cfg.threads = threads;
            cfg.cross_check = cross_check;
            py::gil_scoped_release release;
            return run_sweep(cfg);
        },
        py::arg("q"), py::arg("g"), py::arg("sample") = 0, py::arg("seed") = 0, py::arg("threads") = 1,
        py::arg("cross_check") = false);

    m.def(
        "moment_polynomial",
        [](int k, std::uint32_t q, int cutoff, int nodes, int threads) {
            const EulerProductTable t(q, cutoff);
            if (k <= 1) return moment_polynomial(k, t, threads).coeffs;
            return qk_contour(k, t, ContourSpec::defaults(k, q, nodes), threads).coeffs;
        },
        py::arg("k"), py::arg("q"), py::arg("cutoff") = kDefaultCutoff, py::arg("nodes") = kDefaultNodes,
        py::arg("threads") = 1);

    m.def(
        "moment_report",
        [](const SweepCache& c, int k, int threads) {
            const EulerProductTable t(c.header.q);
            const MomentReport r = empirical_moment(c, moment_polynomial(k, t, threads),
                                                    c.header.mode == SampleMode::Exhaustive);
            py::dict d;
            d["h_size"] = r.h_size;
            d["empirical_sum"] = r.empirical_sum;
            d["empirical_mean"] = r.empirical_mean;
            d["std_error"] = r.std_error;
            d["predicted"] = r.predicted;
            d["ratio"] = r.ratio;
            return d;
        },
        py::arg("cache"), py::arg("k"), py::arg("threads") = 1);

    m.def(
        "ratios_rhs",
        [](const std::vector<cplx>& alpha, const std::vector<cplx>& gamma, std::uint32_t q, int g) {
            return ratios_rhs(RatiosSpec{alpha, gamma}, q, g, EulerProductTable(q));
        },
        py::arg("alpha"), py::arg("gamma"), py::arg("q"), py::arg("g"));
    m.def(
        "ratios_empirical",
        [](const SweepCache& c, const std::vector<cplx>& alpha, const std::vector<cplx>& gamma) {
            return ratios_empirical(c, RatiosSpec{alpha, gamma});
        },
        py::arg("cache"), py::arg("alpha"), py::arg("gamma"));
    m.def(
        "logderiv_pair",
        [](const SweepCache& c, double r) {
            const LogDerivPair p = logderiv_pair(r, c, EulerProductTable(c.header.q));
            return py::make_tuple(p.empirical, p.theory);
        },
        py::arg("cache"), py::arg("r"));

    m.def(
        "density_report",
        [](const SweepCache& c, const std::string& test) {
            const DensityReport r = density_report(c, TestFunction::parse(test), EulerProductTable(c.header.q));
            py::dict d;
            d["test"] = r.test;
            d["empirical"] = r.empirical;
            d["std_error"] = r.std_error;
            d["theory"] = r.theory;
            d["rmt"] = r.rmt;
            return d;
        },
        py::arg("cache"), py::arg("test") = "fejer:1.0");
    m.def(
        "density_theory",
        [](const std::string& test, std::uint32_t q, int g) {
            return density_theory(TestFunction::parse(test), q, g, EulerProductTable(q));
        },
        py::arg("test"), py::arg("q"), py::arg("g"));
    m.def("rmt_limit", [](const std::string& test) { return rmt_limit(TestFunction::parse(test)); }, py::arg("test"));

    m.def(
        "selftest",
        [](int threads) {
            py::list out;
            for (const auto& c : run_selftest(threads)) out.append(py::make_tuple(c.name, c.pass, c.detail));
            return out;
        },
        py::arg("threads") = 1);
}
