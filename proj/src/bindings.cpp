#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfb/cli.hpp"
#include "qfb/measures.hpp"
#include "qfb/optimize.hpp"

namespace py = pybind11;

namespace {

using qfb::CMat2;
using qfb::CMat4;
using qfb::Complex;

py::array_t<Complex> to_numpy(const CMat4& m) {
    py::array_t<Complex> out({4, 4});
    auto r = out.mutable_unchecked<2>();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = m(i, j);
    return out;
}

py::array_t<Complex> to_numpy(const CMat2& m) {
    py::array_t<Complex> out({2, 2});
    auto r = out.mutable_unchecked<2>();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = m(i, j);
    return out;
}

CMat4 from_numpy(const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2 || a.shape(0) != 4 || a.shape(1) != 4)
        throw py::value_error("expected a 4x4 complex matrix");
    CMat4 m;
    auto r = a.unchecked<2>();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = r(i, j);
    return m;
}

qfb::EulerAngles euler(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

qfb::SweepConfig make_config(const std::vector<double>& etas, const std::vector<double>& r_alphas,
                             int angle_grid_size, const std::vector<double>& qs,
                             const std::string& objective, int workers, bool record_points) {
    qfb::SweepConfig cfg;
    cfg.eta_grid = etas;
    cfg.r_alpha_grid = r_alphas;
    cfg.angle_grid_size = angle_grid_size;
    cfg.q_grid = qs;
    cfg.objective =
        objective == "purity" ? qfb::Objective::purity : qfb::Objective::concurrence;
    cfg.workers = workers;
    cfg.record_points = record_points;
    return cfg;
}

py::dict sweep_to_dict(const qfb::SweepResult& res) {
    py::dict out;
    py::list names;
    for (const std::string& n : res.param_names)
        if (!n.empty()) names.append(n);
    out["param_names"] = names;
    out["has_q"] = res.has_q;
    py::list best;
    for (const qfb::SweepBest& b : res.best) {
        py::dict d;
        d["eta"] = b.eta;
        d["q"] = b.q_mag;
        d["params"] = py::make_tuple(b.params[0], b.params[1], b.params[2]);
        d["value"] = b.value;
        d["ties"] = b.tie_count;
        best.append(d);
    }
    out["best"] = best;
    if (!res.records.empty()) {
        py::array_t<double> recs({res.records.size(), static_cast<std::size_t>(6)});
        auto rw = recs.mutable_unchecked<2>();
        for (std::size_t i = 0; i < res.records.size(); ++i) {
            const qfb::SweepRecord& r = res.records[i];
            rw(i, 0) = r.eta;
            rw(i, 1) = r.q_mag;
            rw(i, 2) = r.params[0];
            rw(i, 3) = r.params[1];
            rw(i, 4) = r.params[2];
            rw(i, 5) = r.value;
        }
        out["records"] = recs;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-qubit amplitude damping with optimal local feedback";

    m.def("bell_state", [] { return to_numpy(qfb::bell_state()); },
          "Maximally entangled initial state in the basis {|11>,|10>,|01>,|00>}");
    m.def("dephased_bell", [](Complex q) { return to_numpy(qfb::dephased_bell(q)); },
          py::arg("q"), "Bell state with off-diagonal weight q (|q| <= 1)");
    m.def("local_kraus", [](double eta) {
              auto [e1, e2] = qfb::local_kraus(qfb::DampingChannel(eta));
              return py::make_tuple(to_numpy(e1), to_numpy(e2));
          },
          py::arg("eta"), "Single-qubit amplitude damping Kraus pair (E1, E2)");
    m.def("product_kraus", [](double eta) {
              const qfb::KrausSet k = qfb::product_kraus(qfb::DampingChannel(eta));
              py::list out;
              for (const CMat4& op : k.ops) out.append(to_numpy(op));
              return out;
          },
          py::arg("eta"), "Two-qubit Kraus operators K1..K4");
    m.def("remixed_kraus",
          [](double eta, double r_alpha, double theta_alpha, double theta_beta,
             double r_alpha_p, double theta_alpha_p, double theta_beta_p) {
              const qfb::KrausSet k = qfb::product_kraus(qfb::DampingChannel(eta));
              const qfb::KrausSet kt = qfb::remix_kraus(
                  k, {r_alpha, theta_alpha, theta_beta, r_alpha_p, theta_alpha_p, theta_beta_p});
              py::list out;
              for (const CMat4& op : kt.ops) out.append(to_numpy(op));
              return out;
          },
          py::arg("eta"), py::arg("r_alpha"), py::arg("theta_alpha") = 0.0,
          py::arg("theta_beta") = 0.0, py::arg("r_alpha_p") = 1.0,
          py::arg("theta_alpha_p") = 0.0, py::arg("theta_beta_p") = 0.0,
          "Kraus operators mixed by the unitary V_A (x) V_B");

    m.def("damp",
          [](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& rho,
             double eta) {
              return to_numpy(qfb::apply_channel(qfb::product_kraus(qfb::DampingChannel(eta)),
                                                 from_numpy(rho)));
          },
          py::arg("rho"), py::arg("eta"), "Apply the two-qubit amplitude damping map");
    m.def("damp_with_feedback",
          [](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& rho,
             double eta, const std::array<double, 3>& u, const std::array<double, 3>& v) {
              const qfb::FeedbackScheme s{euler(u), euler(v)};
              return to_numpy(qfb::apply_with_feedback(
                  qfb::product_kraus(qfb::DampingChannel(eta)), s, from_numpy(rho)));
          },
          py::arg("rho"), py::arg("eta"), py::arg("u"), py::arg("v"),
          "Damping followed by outcome-conditioned local unitaries; u and v are "
          "(alpha, beta, gamma) Euler triples");
    m.def("damp_with_optimal_feedback",
          [](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& rho,
             double eta, double phase_u, double phase_v) {
              return to_numpy(qfb::apply_with_feedback(
                  qfb::product_kraus(qfb::DampingChannel(eta)),
                  qfb::optimal_scheme(phase_u, phase_v), from_numpy(rho)));
          },
          py::arg("rho"), py::arg("eta"), py::arg("phase_u") = 0.0, py::arg("phase_v") = 0.0,
          "Damping corrected by the purity-minimizing feedback scheme");
    m.def("repeat_map",
          [](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& rho,
             double eta, int n, bool with_feedback, double phase) {
              return to_numpy(qfb::repeat_map(from_numpy(rho), eta,
                                              qfb::RepeatConfig(n, with_feedback, phase)));
          },
          py::arg("rho"), py::arg("eta"), py::arg("n"), py::arg("with_feedback") = false,
          py::arg("phase") = 0.0, "n-fold application of the map");

    m.def("concurrence",
          [](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& rho) {
              return qfb::concurrence(from_numpy(rho)).value;
          },
          py::arg("rho"), "Wootters concurrence");
    m.def("concurrence_lambdas",
          [](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& rho) {
              const qfb::ConcurrenceBreakdown b = qfb::concurrence(from_numpy(rho));
              return py::make_tuple(b.value, b.lambdas);
          },
          py::arg("rho"), "Concurrence together with the sorted Wootters spectrum");
    m.def("concurrence_x_state",
          [](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& rho) {
              return qfb::concurrence_x_state(from_numpy(rho));
          },
          py::arg("rho"), "Closed-form concurrence for X states");
    m.def("subsystem_purity",
          [](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& rho) {
              return qfb::subsystem_purity(from_numpy(rho));
          },
          py::arg("rho"), "Tr(rho_A^2) of the qubit-A marginal");

    auto cf = m.def_submodule("closed_form", "Entrywise closed forms used as oracles");
    cf.def("damped_bell", [](double eta) { return to_numpy(qfb::closed_form::damped_bell(eta)); },
           py::arg("eta"));
    cf.def("damped_dephased_bell",
           [](double eta, Complex q) {
               return to_numpy(qfb::closed_form::damped_dephased_bell(eta, q));
           },
           py::arg("eta"), py::arg("q"));
    cf.def("feedback_state",
           [](double eta, const std::array<double, 3>& u, const std::array<double, 3>& v,
              Complex q) {
               return to_numpy(qfb::closed_form::feedback_state_dephased(
                   eta, q, qfb::FeedbackScheme{euler(u), euler(v)}));
           },
           py::arg("eta"), py::arg("u"), py::arg("v"), py::arg("q") = Complex(1.0, 0.0));
    cf.def("optimal_feedback_state",
           [](double eta, Complex q, double zeta_u) {
               return to_numpy(qfb::closed_form::optimal_feedback_state_dephased(eta, q, zeta_u));
           },
           py::arg("eta"), py::arg("q") = Complex(1.0, 0.0), py::arg("zeta_u") = 0.0);
    cf.def("repeated_damped_bell",
           [](double eta, int n) { return to_numpy(qfb::closed_form::repeated_damped_bell(eta, n)); },
           py::arg("eta"), py::arg("n"));
    cf.def("repeated_feedback_state",
           [](double eta, int n, double zeta_u) {
               return to_numpy(qfb::closed_form::repeated_feedback_state(eta, n, zeta_u));
           },
           py::arg("eta"), py::arg("n"), py::arg("zeta_u") = 0.0);
    cf.def("repeat_concurrence", &qfb::closed_form::repeat_concurrence, py::arg("eta"),
           py::arg("n"), py::arg("with_feedback"));
    cf.def("purity_damped", &qfb::closed_form::purity_damped, py::arg("eta"));
    cf.def("purity_feedback",
           [](double eta, double xi, double theta, double phi) {
               return qfb::closed_form::purity_feedback(eta,
                                                        qfb::AngleCombos{xi, theta, phi, 0.0, 0.0});
           },
           py::arg("eta"), py::arg("xi"), py::arg("theta"), py::arg("phi"));
    cf.def("purity_remixed",
           [](double eta, const std::array<double, 3>& u, const std::array<double, 3>& v,
              double r_alpha, double theta_alpha, double theta_beta) {
               const qfb::PurityBreakdown b = qfb::closed_form::purity_remixed(
                   eta, euler(u), euler(v),
                   {r_alpha, theta_alpha, theta_beta, 1.0, 0.0, 0.0});
               return py::make_tuple(b.value, b.p1, b.p2);
           },
           py::arg("eta"), py::arg("u"), py::arg("v"), py::arg("r_alpha"),
           py::arg("theta_alpha") = 0.0, py::arg("theta_beta") = 0.0);

    m.def("stationary_residuals",
          [](double xi, double theta, double phi) {
              return qfb::stationary_residuals(qfb::AngleCombos{xi, theta, phi, 0.0, 0.0});
          },
          py::arg("xi"), py::arg("theta"), py::arg("phi"),
          "Gradient components of the feedback purity");
    m.def("sweep_canonical",
          [](const std::vector<double>& etas, int angle_grid_size, const std::string& objective,
             int workers, bool record_points) {
              qfb::SweepConfig cfg = make_config(etas, {1.0}, angle_grid_size, {}, objective,
                                                 workers, record_points);
              return sweep_to_dict(qfb::sweep_canonical(cfg));
          },
          py::arg("etas"), py::arg("angle_grid_size") = 61,
          py::arg("objective") = "concurrence", py::arg("workers") = 1,
          py::arg("record_points") = false,
          "Sweep the actuation angles (beta_u, beta_v) against the canonical Kraus set");
    m.def("sweep_remix",
          [](const std::vector<double>& etas, const std::vector<double>& r_alphas,
             int angle_grid_size, const std::vector<double>& qs, const std::string& objective,
             int workers, bool record_points) {
              qfb::SweepConfig cfg = make_config(etas, r_alphas, angle_grid_size, qs, objective,
                                                 workers, record_points);
              return sweep_to_dict(qfb::sweep_remix(cfg));
          },
          py::arg("etas"), py::arg("r_alphas"), py::arg("angle_grid_size") = 61,
          py::arg("qs") = std::vector<double>{}, py::arg("objective") = "concurrence",
          py::arg("workers") = 1, py::arg("record_points") = false,
          "Sweep the Kraus representation parameters (r_alpha, theta_alpha_beta, xi_v)");

    m.def("verify", [](bool corrupt_tolerance) {
              const qfb::VerifyReport rep = qfb::run_verification(corrupt_tolerance);
              py::dict out;
              out["passed"] = rep.passed();
              out["failed"] = rep.failed();
              py::list failures;
              for (const qfb::VerifyCheck& c : rep.checks)
                  if (!c.passed) failures.append(c.name + ": " + c.detail);
              out["failures"] = failures;
              py::list known;
              for (const std::string& s : rep.known_issues) known.append(s);
              out["known_issues"] = known;
              return out;
          },
          py::arg("corrupt_tolerance") = false, "Run the cross-module invariant suite");

    m.attr("__version__") = "0.1.0";
}
