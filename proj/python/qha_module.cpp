// Python bindings for the core library: model parameters, spherical
// functions, the transform pair, radial operators, the convolutions, and the
// verification registry. Spectral parameters are complex throughout; profiles
// come back as callables.
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qha/verify.hpp"

namespace py = pybind11;
using qha::Complex;

namespace {

qha::SpectralPoint sp(Complex lam) { return qha::SpectralPoint{lam}; }

qha::RadialOperator make_op(const std::vector<Complex>& coeffs) {
    qha::RadialOperator A;
    A.coeffs = coeffs;
    A.validate();
    return A;
}

}  // namespace

PYBIND11_MODULE(_qha, m) {
    m.doc() = "Radial harmonic analysis on weighted Bergman spaces";

    py::register_exception<qha::Error>(m, "QhaError");

    py::class_<qha::ModelParams>(m, "ModelParams")
        .def(py::init(&qha::ModelParams::make), py::arg("n"), py::arg("nu"))
        .def_readonly("n", &qha::ModelParams::n)
        .def_readonly("nu", &qha::ModelParams::nu)
        .def_readonly("rho", &qha::ModelParams::rho)
        .def_readwrite("truncation", &qha::ModelParams::truncation)
        .def_readwrite("lambda_max", &qha::ModelParams::lambda_max);

    py::class_<qha::RadialProfile>(m, "RadialProfile")
        .def("__call__", [](const qha::RadialProfile& f, double r) { return f(r); });

    py::class_<qha::RadialOperator>(m, "RadialOperator")
        .def(py::init(&make_op), py::arg("coeffs"))
        .def_property_readonly("coeffs",
                               [](const qha::RadialOperator& A) { return A.coeffs; })
        .def("truncation", &qha::RadialOperator::truncation);

    py::class_<qha::SpectralTable>(m, "SpectralTable")
        .def_property_readonly("nodes",
                               [](const qha::SpectralTable& t) { return t.rule->nodes; })
        .def_property_readonly("weights",
                               [](const qha::SpectralTable& t) { return t.rule->weights; })
        .def_property_readonly(
            "lambda_max", [](const qha::SpectralTable& t) { return t.rule->lambda_max; })
        .def_readonly("M", &qha::SpectralTable::M);

    // profile constructors
    m.def("hpow", &qha::hpow, py::arg("sigma"), py::arg("params"));
    m.def("rpow", &qha::rpow, py::arg("k"));
    m.def("indicator", &qha::indicator, py::arg("r0"), py::arg("params"));
    m.def("c_nu", &qha::c_nu, py::arg("params"));
    m.def("dim_pm", &qha::dim_pm, py::arg("n"), py::arg("m"));

    // spherical functions and the transform pair
    m.def(
        "phi",
        [](const qha::ModelParams& p, Complex lam, double r) { return qha::phi(p, sp(lam), r); },
        py::arg("params"), py::arg("lam"), py::arg("r"));
    m.def(
        "sft",
        [](const qha::RadialProfile& f, const qha::ModelParams& p, Complex lam) {
            return qha::sft(f, p, sp(lam));
        },
        py::arg("f"), py::arg("params"), py::arg("lam"));
    m.def(
        "h_hat",
        [](double sigma, const qha::ModelParams& p, Complex lam) {
            return qha::h_hat(sigma, p, sp(lam));
        },
        py::arg("sigma"), py::arg("params"), py::arg("lam"));
    m.def("plancherel_density", &qha::plancherel_density, py::arg("params"), py::arg("lam"));

    // operators
    m.def("toeplitz_eigs", &qha::toeplitz_eigs, py::arg("f"), py::arg("params"), py::arg("M"));
    m.def(
        "t_lambda_eigs",
        [](const qha::ModelParams& p, Complex lam, int M) {
            return qha::t_lambda_eigs(p, sp(lam), M);
        },
        py::arg("params"), py::arg("lam"), py::arg("M"));
    m.def("schatten_norm", &qha::schatten_norm, py::arg("A"), py::arg("params"), py::arg("p"));
    m.def("berezin", &qha::berezin, py::arg("A"), py::arg("params"), py::arg("r"));
    m.def(
        "op_fourier",
        [](const qha::RadialOperator& A, const qha::ModelParams& p, Complex lam) {
            return qha::op_fourier(A, p, sp(lam));
        },
        py::arg("A"), py::arg("params"), py::arg("lam"));

    // the spectral table and the convolutions
    m.def("build_spectral_table", &qha::build_spectral_table, py::arg("params"),
          py::arg("M") = -1);
    m.def("conv_ff",
          py::overload_cast<const qha::RadialProfile&, const qha::RadialProfile&,
                            const qha::SpectralTable&>(&qha::conv_ff),
          py::arg("f"), py::arg("g"), py::arg("tab"));
    m.def("conv_fo",
          py::overload_cast<const qha::RadialProfile&, const qha::RadialOperator&,
                            const qha::SpectralTable&, int>(&qha::conv_fo),
          py::arg("f"), py::arg("A"), py::arg("tab"), py::arg("M") = -1);
    m.def("conv_oo", &qha::conv_oo, py::arg("A"), py::arg("B"), py::arg("tab"));
    m.def(
        "gelfand_eval",
        [](const qha::RadialProfile& f, const qha::RadialOperator& A,
           const qha::SpectralTable& tab, Complex lam, int j) {
            auto x = qha::AlgebraElement::make(f, A);
            return qha::gelfand_eval(x, tab, qha::GelfandPoint{sp(lam), j});
        },
        py::arg("f"), py::arg("A"), py::arg("tab"), py::arg("lam"), py::arg("j") = 0);

    // calibration and verification
    m.def("calibrate", [](const qha::ModelParams& p) {
        qha::CalibrationReport r = qha::calibrate(p);
        py::dict d;
        d["chosen_rho"] = r.chosen_rho;
        d["product_defect_max"] = r.product_defect_max;
        d["rejected_defect_max"] = r.rejected_defect_max;
        d["c_P"] = r.c_P;
        d["roundtrip_residual"] = r.roundtrip_residual;
        d["integral_rep_agreement"] = r.integral_rep_agreement;
        d["plancherel_residual"] = r.plancherel_residual;
        d["hhat_mass_residual"] = r.hhat_mass_residual;
        d["passed"] = r.passed;
        return d;
    });
    m.def(
        "run_checks",
        [](const std::string& suite, unsigned seed) {
            py::list out;
            for (const auto& c : qha::run_checks(suite, qha::VerifyOptions{seed})) {
                py::dict d;
                d["suite"] = c.suite;
                d["name"] = c.name;
                d["residual"] = c.residual;
                d["tolerance"] = c.tolerance;
                d["pass"] = c.pass;
                out.append(d);
            }
            return out;
        },
        py::arg("suite") = "all", py::arg("seed") = 0);
}
