#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nilzeta/building.hpp"
#include "nilzeta/cli.hpp"
#include "nilzeta/cones.hpp"
#include "nilzeta/errors.hpp"
#include "nilzeta/modcurves.hpp"
#include "nilzeta/presentation_io.hpp"

namespace py = pybind11;
using namespace nilzeta;

namespace {

py::int_ to_py(const Integer& z) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

py::list to_py(const std::vector<Integer>& v) {
    py::list out;
    for (const auto& z : v)
        out.append(to_py(z));
    return out;
}

py::object to_py(const Rational& q) {
    py::object frac = py::module_::import("fractions").attr("Fraction");
    return frac(to_py(q.get_num()), to_py(q.get_den()));
}

LinearFormMatrix r_matrix(const std::vector<std::vector<std::vector<std::int64_t>>>& e) {
    int r = static_cast<int>(e.size());
    LinearFormMatrix R(r, r, 3);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(e[static_cast<std::size_t>(i)].size()) != r)
            throw BadParams("R must be square");
        for (int j = 0; j < r; ++j) {
            const auto& f = e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (f.size() != 3)
                throw BadParams("entries of R are linear forms in 3 variables");
            for (int k = 0; k < 3; ++k)
                R.set(i, j, k, f[static_cast<std::size_t>(k)]);
        }
    }
    return R;
}

} // namespace

PYBIND11_MODULE(_nilzeta, m) {
    m.doc() = "Local normal zeta functions of class-2 nilpotent Lie rings";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
    py::register_exception<UnsupportedFamily>(m, "UnsupportedFamily", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<BadParams>(m, "BadParams", base.ptr());
    py::register_exception<NotFull>(m, "NotFull", base.ptr());

    py::class_<GeoRatFun>(m, "RatFun")
        .def("__str__", [](const GeoRatFun& f) { return display_form(f); })
        .def("__repr__", [](const GeoRatFun& f) { return "RatFun(" + display_form(f) + ")"; })
        .def("__add__", [](const GeoRatFun& a, const GeoRatFun& b) { return a + b; })
        .def("__sub__", [](const GeoRatFun& a, const GeoRatFun& b) { return a - b; })
        .def("__mul__", [](const GeoRatFun& a, const GeoRatFun& b) { return a * b; })
        .def("__mul__", [](const GeoRatFun& a, long k) { return a * Rational(k); })
        .def("__eq__", [](const GeoRatFun& a, const GeoRatFun& b) { return geo_equal(a, b); })
        .def("invert", [](const GeoRatFun& f) { return invert_vars(f); }, "f(1/X, 1/Y)")
        .def("functional_equation",
             [](const GeoRatFun& f) -> py::object {
                 auto fe = check_functional_equation(f);
                 if (!fe)
                     return py::none();
                 return py::make_tuple(fe->sign, fe->a, fe->b);
             },
             "(sign, a, b) with f(1/X, 1/Y) = sign X^a Y^b f, or None")
        .def("series", [](const GeoRatFun& f, std::int64_t p, int K) { return to_py(series_at(f, p, K)); }, py::arg("p"),
             py::arg("order"))
        .def("evaluate", [](const GeoRatFun& f, long x, long y_num, long y_den) {
            return to_py(eval_at(f, Rational(x), Rational(y_num, y_den)));
        });

    py::class_<Presentation>(m, "Presentation")
        .def_readonly("d", &Presentation::d)
        .def_readonly("dprime", &Presentation::dprime)
        .def("__repr__", [](const Presentation& P) { return "Presentation(" + P.describe() + ")"; });

    m.def("block_odd", &block_odd, py::arg("r"));
    m.def("block_even", &block_even, py::arg("coeffs"), "g = t^r + a_1 t^(r-1) + ... + a_r");
    m.def("direct_sum", &direct_sum, py::arg("parts"));
    m.def("from_R", [](const std::vector<std::vector<std::vector<std::int64_t>>>& R) { return from_R(r_matrix(R)); }, py::arg("R"));
    m.def("load", [](const std::string& path) { return load_input(path).P; }, py::arg("path"));
    m.def("parse", [](const std::string& text) { return parse_input(text).P; }, py::arg("text"));

    m.def(
        "oracle_count",
        [](const Presentation& P, std::int64_t p, int K, double budget, bool exhaustive, unsigned jobs) {
            OracleOptions opt;
            opt.budget = budget;
            opt.exhaustive = exhaustive;
            opt.jobs = jobs;
            std::vector<Integer> out;
            {
                py::gil_scoped_release release;
                out = oracle_count(P, p, K, opt);
            }
            return to_py(out);
        },
        py::arg("P"), py::arg("p"), py::arg("order"), py::arg("budget") = 2e7, py::arg("exhaustive") = false, py::arg("jobs") = 0);
    m.def(
        "building_series",
        [](const Presentation& P, std::int64_t p, int K, unsigned jobs) {
            WalkOptions opt;
            opt.jobs = jobs;
            ASeries s;
            {
                py::gil_scoped_release release;
                s = building_series(P, p, K, opt);
            }
            return to_py(s.coeffs);
        },
        py::arg("P"), py::arg("p"), py::arg("order"), py::arg("jobs") = 0, "Coefficients of A(p, T) to T^order");
    m.def(
        "zeta_series",
        [](const std::vector<std::int64_t>& A, std::int64_t p, int d, int dprime) {
            std::vector<Integer> a(A.begin(), A.end());
            return to_py(assemble_zeta(a, p, d, dprime));
        },
        py::arg("A"), py::arg("p"), py::arg("d"), py::arg("dprime"));
    m.def("assemble_zeta", py::overload_cast<const GeoRatFun&, int, int>(&assemble_zeta), py::arg("A"), py::arg("d"),
          py::arg("dprime"));

    m.def("prop32", &prop32, py::arg("r"));
    m.def("prop34", [](int r, int e, std::int64_t n) { return prop34(r, e).at(n); }, py::arg("r"), py::arg("e"), py::arg("n_fp"));
    m.def("thm11", [](int r) {
        auto t = thm11_closed(r);
        return py::make_tuple(t.A1, t.A2);
    }, py::arg("r"));
    m.def("dusautoy_display", [] {
        auto W = dusautoy();
        return py::make_tuple(py::make_tuple(W.W1.numerator_string(), W.W1.denominator_string()),
                              py::make_tuple(W.W2.numerator_string(), W.W2.denominator_string()));
    });

    m.def("count_points", [](const std::vector<std::vector<std::vector<std::int64_t>>>& R, std::int64_t p) {
        return count_points_P2(CurveSpec(r_matrix(R)), p);
    }, py::arg("R"), py::arg("p"));
    m.def("bad_primes", [](const Presentation& P) { return bad_primes(P); }, py::arg("P"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int rc = run_cli(args, out, err);
            return py::make_tuple(rc, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in process; returns (exit code, stdout, stderr)");
}
