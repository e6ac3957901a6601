#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ltp/cli.hpp"
#include "ltp/formal_group.hpp"
#include "ltp/json_io.hpp"
#include "ltp/period_ring.hpp"

namespace py = pybind11;
using namespace ltp;

namespace {

// Library errors surface as ValueError carrying the kind, e.g. "NotFlat: ...".
void translate(std::exception_ptr p) {
    try {
        if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
        PyErr_SetString(PyExc_ValueError, (std::string(e.kind()) + ": " + e.what()).c_str());
    }
}

// FieldPtr points to const, which pybind11 cannot hold directly.
struct PyField {
    FieldPtr f;
};

std::string series_json(const TruncSeries& s, const Field& F) {
    return io::series_to_json(s, F.prec(), "T").dump();
}

}  // namespace

PYBIND11_MODULE(_ltp, m) {
    m.doc() = "Lubin-Tate formal groups, period rings and monodromy";
    py::register_exception_translator(translate);

    py::class_<PyField>(m, "Field")
        .def_static("qp", [](long p, int prec) { return PyField{Field::qp(p, prec)}; }, py::arg("p"),
                    py::arg("prec") = 25)
        .def_static("unramified", [](long p, int h, int prec) { return PyField{Field::unramified(p, h, prec)}; },
                    py::arg("p"), py::arg("h"), py::arg("prec") = 25)
        .def_static(
            "eisenstein",
            [](long p, const std::vector<long>& poly, int prec) {
                IntPoly c(poly.begin(), poly.end());
                return PyField{Field::eisenstein(p, c, prec)};
            },
            py::arg("p"), py::arg("poly"), py::arg("prec") = 25)
        .def_property_readonly("p", [](const PyField& F) { return F.f->p(); })
        .def_property_readonly("q", [](const PyField& F) { return F.f->q(); })
        .def_property_readonly("e", [](const PyField& F) { return F.f->e(); })
        .def_property_readonly("h", [](const PyField& F) { return F.f->h(); })
        .def_property_readonly("prec", [](const PyField& F) { return F.f->prec(); })
        .def("__repr__", [](const PyField& F) { return F.f->describe(); });

    m.def("q_poly", [](const PyField& F, long k) { return series_json(LubinTate(F.f).q_poly(k), *F.f); },
          py::arg("field"), py::arg("k"), "Q_k as series JSON text");
    m.def("mult_by_pi", [](const PyField& F, long D) { return series_json(LubinTate(F.f).mult_by_pi(D), *F.f); },
          py::arg("field"), py::arg("deg"));
    m.def("log", [](const PyField& F, long D) { return series_json(LubinTate(F.f).log(D), *F.f); },
          py::arg("field"), py::arg("deg"));
    m.def("r_level", [](const PyField& F, long k) { return rational_string(r_level(*F.f, k)); }, py::arg("field"),
          py::arg("k"));
    m.def(
        "mahler_weight",
        [](const std::string& n, long level, long q) { return mahler_weight(mpz_class(n), level, q).get_str(); },
        py::arg("n"), py::arg("level"), py::arg("q"), "weight w_{n,level}; integers pass as decimal strings");
    m.def(
        "deep_norm",
        [](const PyField& F, long n, long level) {
            const DeepNorm d = deep_norm(*F.f, n, level);
            return py::make_tuple(d.computed.to_string(), rational_string(d.closed_form), d.pass);
        },
        py::arg("field"), py::arg("n"), py::arg("level"));

    py::class_<cli::JobConfig>(m, "JobConfig")
        .def(py::init<>())
        .def_readwrite("group", &cli::JobConfig::group)
        .def_readwrite("command", &cli::JobConfig::command)
        .def_readwrite("p", &cli::JobConfig::p)
        .def_readwrite("flavor", &cli::JobConfig::flavor)
        .def_readwrite("h", &cli::JobConfig::h)
        .def_readwrite("eis", &cli::JobConfig::eis)
        .def_readwrite("prec", &cli::JobConfig::prec)
        .def_readwrite("out_prec", &cli::JobConfig::out_prec)
        .def_readwrite("deg", &cli::JobConfig::deg)
        .def_readwrite("seed", &cli::JobConfig::seed)
        .def_readwrite("input", &cli::JobConfig::in)
        .def_readwrite("a", &cli::JobConfig::a)
        .def_readwrite("c", &cli::JobConfig::c)
        .def_readwrite("r", &cli::JobConfig::r)
        .def_readwrite("s", &cli::JobConfig::s)
        .def_readwrite("k", &cli::JobConfig::k)
        .def_readwrite("n", &cli::JobConfig::n)
        .def_readwrite("level", &cli::JobConfig::level)
        .def_readwrite("order", &cli::JobConfig::order)
        .def_readwrite("samples", &cli::JobConfig::samples)
        .def_readwrite("j", &cli::JobConfig::j)
        .def_readwrite("d", &cli::JobConfig::d)
        .def_readwrite("n_max", &cli::JobConfig::n_max)
        .def_readwrite("check_only", &cli::JobConfig::check_only)
        .def_readwrite("phi", &cli::JobConfig::phi)
        .def_readwrite("gauge", &cli::JobConfig::gauge_in);

    m.def(
        "run_job",
        [](const cli::JobConfig& cfg) {
            std::ostringstream out, err;
            const int rc = cli::run(cfg, out, err);
            return py::make_tuple(rc, out.str(), err.str());
        },
        py::arg("config"), "runs one ltp command; returns (exit code, stdout, stderr)");
}
