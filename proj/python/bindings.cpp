#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vlat/phi.hpp"
#include "vlat/verifier.hpp"

namespace py = pybind11;
using namespace vlat;

namespace {

std::map<int, std::string> series_dict(const SeriesState& s, int lo, int hi) {
    std::map<int, std::string> out;
    for (auto& [e, v] : s.t)
        if (e >= lo && e <= hi && !v.is_zero()) out[e] = state_str(v);
    return out;
}

Lattice lattice_of(const IntMatrix& gram) {
    Lattice L(gram);
    if (auto errs = validate_lattice(L); !errs.empty()) throw ConfigInvalid(errs.front());
    return L;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact lattice vertex algebra computations and identity checks";
    py::register_exception<ConfigInvalid>(m, "ConfigInvalid", PyExc_ValueError);

    m.def("normalize_state", [](const std::string& s, int rank) { return state_str(parse_state(s, rank)); },
          py::arg("state"), py::arg("rank"), "Parse a state and print it in canonical form.");

    m.def(
        "ope",
        [](const IntMatrix& gram, const std::string& u, const std::string& v, int lo, int hi) {
            Lattice L = lattice_of(gram);
            Scalar::set_order(2);
            return series_dict(Y_VL(L, parse_state(u, L.rank()), parse_state(v, L.rank()), hi), lo, hi);
        },
        py::arg("gram"), py::arg("left"), py::arg("right"), py::arg("lo"), py::arg("hi"),
        "Coefficients of Y(left, x)right for exponents in [lo, hi].");

    m.def(
        "deformed_ope",
        [](const std::string& config_json, const std::string& fname, const std::string& u, const std::string& v,
           int lo, int hi) {
            SuiteConfig cfg = parse_config(config_json);
            Scalar::set_order(cfg.m);
            const Lattice& L = cfg.lattice;
            for (auto& nm : cfg.deformations)
                if (nm.name == fname)
                    return series_dict(deformed_Y(L, nm.f, parse_state(u, L.rank()), parse_state(v, L.rank()), hi),
                                       lo, hi);
            throw ConfigInvalid("no deformation named " + fname);
        },
        py::arg("config"), py::arg("map"), py::arg("left"), py::arg("right"), py::arg("lo"), py::arg("hi"),
        "Coefficients of the deformed field Y^f(left, x)right for a map named in the config.");

    m.def(
        "verify",
        [](const std::string& config_json, std::vector<std::string> suites) {
            SuiteConfig cfg = parse_config(config_json);
            if (!suites.empty()) cfg.suites = std::move(suites);
            Report r;
            {
                py::gil_scoped_release nogil;
                r = run_suite(cfg);
            }
            return py::make_tuple(r.passed(), emit_report(r, ReportFormat::Json));
        },
        py::arg("config"), py::arg("suites") = std::vector<std::string>{},
        "Run the configured suites; returns (passed, report JSON).");

    m.def(
        "phi_check",
        [](const std::string& p, int zorder) {
            Report r = phi_report(poly_parse(p), zorder);
            return py::make_tuple(r.passed(), emit_report(r, ReportFormat::Json));
        },
        py::arg("p"), py::arg("zorder") = 6, "phi-calculus checks for p(x); returns (passed, report JSON).");

    m.def("suite_names", &all_suite_names);
}
