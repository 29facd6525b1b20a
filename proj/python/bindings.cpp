#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>

#include "mfg/app/pipeline.hpp"
#include "mfg/app/validation.hpp"

namespace py = pybind11;
using namespace mfg;

namespace {

app::RunConfig config_from(const std::map<std::string, std::string>& overrides) {
    app::RunConfig c = app::RunConfig::from_key_values(overrides);
    c.validate();
    return c;
}

py::dict trajectory_dict(const Trajectory& tr) {
    std::vector<double> t, a, k, qa, qk, c, i;
    for (int j = 0; j < tr.grid.nodes(); ++j) {
        const auto n = static_cast<std::size_t>(j);
        t.push_back(tr.grid.time(j));
        a.push_back(tr.states[n].a);
        k.push_back(tr.states[n].k);
        qa.push_back(tr.states[n].q_a);
        qk.push_back(tr.states[n].q_k);
        c.push_back(tr.controls[n].consumption);
        i.push_back(tr.controls[n].investment);
    }
    py::dict d;
    d["t"] = t;
    d["a"] = a;
    d["k"] = k;
    d["q_a"] = qa;
    d["q_k"] = qk;
    d["c"] = c;
    d["i"] = i;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "N-agent mean-field growth model: shooting solver and price fixed point";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<app::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);
    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);

    py::enum_<ConsumptionLaw>(m, "ConsumptionLaw")
        .value("PAPER", ConsumptionLaw::PaperLiteral)
        .value("LEGENDRE", ConsumptionLaw::LegendreExact);

    m.def("u1", &u1, py::arg("x"));
    m.def("u1_prime", &u1_prime, py::arg("x"));
    m.def("optimal_consumption", &optimal_consumption, py::arg("q_a"),
          py::arg("law") = ConsumptionLaw::PaperLiteral);
    m.def("optimal_investment", &optimal_investment, py::arg("q_a"), py::arg("q_k"), py::arg("p"));

    py::class_<Economy>(m, "Economy")
        .def(py::init([](double theta, double xi, double delta, ConsumptionLaw law) {
                 Economy e{theta, xi, delta, law};
                 e.validate();
                 return e;
             }),
             py::arg("theta_coeff") = 1.0, py::arg("xi_coeff") = 0.1,
             py::arg("depreciation_rate") = 0.5, py::arg("law") = ConsumptionLaw::PaperLiteral)
        .def_readonly("theta_coeff", &Economy::theta_coeff)
        .def_readonly("xi_coeff", &Economy::xi_coeff)
        .def_readonly("depreciation_rate", &Economy::depreciation_rate)
        .def_readonly("law", &Economy::law)
        .def("hamiltonian", &Economy::hamiltonian, py::arg("a"), py::arg("k"), py::arg("q_a"),
             py::arg("q_k"), py::arg("p"))
        .def("hamiltonian_grad",
             [](const Economy& e, double a, double k, double qa, double qk, double p) {
                 const HamiltonianGradient g = e.hamiltonian_grad(a, k, qa, qk, p);
                 return py::make_tuple(g.d_a, g.d_k, g.d_qa, g.d_qk);
             },
             py::arg("a"), py::arg("k"), py::arg("q_a"), py::arg("q_k"), py::arg("p"));

    py::class_<PriceCurve>(m, "PriceCurve")
        .def(py::init<double, std::vector<double>>(), py::arg("horizon"), py::arg("samples"))
        .def_static("constant", &PriceCurve::constant, py::arg("horizon"), py::arg("intervals"),
                    py::arg("value"))
        .def_property_readonly("horizon", &PriceCurve::horizon)
        .def_property_readonly("samples", [](const PriceCurve& c) {
            return std::vector<double>(c.samples().begin(), c.samples().end());
        })
        .def("__call__", &PriceCurve::operator(), py::arg("t"));

    m.def(
        "solve_costates",
        [](double a0, double k0, const PriceCurve& price, int steps, const Economy& economy) {
            const ShootingResult r =
                solve_costates(a0, k0, price, TimeGrid(price.horizon(), steps), economy, {});
            py::dict d = trajectory_dict(r.trajectory);
            d["q0"] = py::make_tuple(r.initial_costates.q_a, r.initial_costates.q_k);
            d["iterations"] = r.iterations;
            d["residual"] = r.residual;
            return d;
        },
        py::arg("a0"), py::arg("k0"), py::arg("price"), py::arg("steps") = 256,
        py::arg("economy") = Economy::benchmark());

    m.def(
        "run",
        [](const std::map<std::string, std::string>& overrides) {
            const app::RunOutcome o = app::run(config_from(overrides));
            return py::make_tuple(o.exit_code, o.report.dump());
        },
        py::arg("overrides") = std::map<std::string, std::string>{},
        "Runs the experiment; returns (exit_code, report JSON text).");

    m.def(
        "validate",
        [](const std::map<std::string, std::string>& overrides) {
            py::list out;
            for (const app::CheckResult& r : app::run_validation(config_from(overrides))) {
                py::dict d;
                d["name"] = r.name;
                d["passed"] = r.passed;
                d["value"] = r.value;
                d["threshold"] = r.threshold;
                d["detail"] = r.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("overrides") = std::map<std::string, std::string>{});

    m.def(
        "consumption_table",
        [](double lo, double hi, int samples) {
            py::list out;
            for (const app::ConsumptionRow& r : app::consumption_table(lo, hi, samples)) {
                out.append(py::make_tuple(r.q_a, r.paper, r.legendre, r.brute_force));
            }
            return out;
        },
        py::arg("qa_min") = 0.1, py::arg("qa_max") = 10.0, py::arg("samples") = 100);
}
