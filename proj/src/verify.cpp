#include <cmath>
#include <random>
#include <sstream>

#include "qfb/cli.hpp"
#include "qfb/errors.hpp"

namespace qfb {

namespace {

constexpr double pi = 3.141592653589793238462643383279;
constexpr unsigned long long verify_seed = 0x51D2C0FFEEULL;

struct Rng {
    std::mt19937_64 gen{verify_seed};
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    double angle() { return uniform(0.0, 2.0 * pi); }
    Complex cnormal() {
        std::normal_distribution<double> n;
        return {n(gen), n(gen)};
    }
    CMat2 mat2() {
        CMat2 m;
        for (Complex& z : m.e) z = cnormal();
        return m;
    }
    CMat4 mat4() {
        CMat4 m;
        for (Complex& z : m.e) z = cnormal();
        return m;
    }
    CMat4 state() {
        const CMat4 g = mat4();
        CMat4 rho = g * dagger(g);
        const double tr = trace(rho).real();
        return (1.0 / tr) * rho;
    }
    Complex q() { return std::polar(uniform(0.0, 1.0), angle()); }
    FeedbackScheme scheme() {
        return {{angle(), angle(), angle()}, {angle(), angle(), angle()}};
    }
    RemixParams remix_params() {
        return {uniform(0.0, 1.0), angle(), angle(), uniform(0.0, 1.0), angle(), angle()};
    }
    CMat4 x_state() {
        std::array<double, 4> d{uniform(0.0, 1.0), uniform(0.0, 1.0), uniform(0.0, 1.0),
                                uniform(0.0, 1.0)};
        const double norm = d[0] + d[1] + d[2] + d[3];
        CMat4 m;
        for (int i = 0; i < 4; ++i) m(i, i) = d[static_cast<std::size_t>(i)] / norm;
        const Complex corner =
            std::polar(uniform(0.0, 1.0) * std::sqrt(m(0, 0).real() * m(3, 3).real()), angle());
        const Complex inner =
            std::polar(uniform(0.0, 1.0) * std::sqrt(m(1, 1).real() * m(2, 2).real()), angle());
        m(0, 3) = corner;
        m(3, 0) = std::conj(corner);
        m(1, 2) = inner;
        m(2, 1) = std::conj(inner);
        return m;
    }
};

std::string describe(double worst, double tol) {
    std::ostringstream os;
    os << "max deviation " << worst << ", tolerance " << tol;
    return os.str();
}

}  // namespace

VerifyReport run_verification(bool corrupt_tolerance) {
    VerifyReport report;
    Rng rng;

    const auto check = [&](const std::string& name, double worst, double tol) {
        report.checks.push_back({name, worst <= tol, describe(worst, tol)});
    };

    {  // Kronecker mixed product: (a(x)b)(c(x)d) = (ac)(x)(bd)
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const CMat2 a = rng.mat2(), b = rng.mat2(), c = rng.mat2(), d = rng.mat2();
            worst = std::max(worst, max_abs_diff(tensor(a, b) * tensor(c, d),
                                                 tensor(a * c, b * d)));
        }
        check("linalg.kronecker_mixed_product", worst, 1e-12);
    }
    {  // partial trace linearity and trace preservation
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const CMat4 g1 = rng.mat4(), g2 = rng.mat4();
            const CMat4 h1 = g1 + dagger(g1), h2 = g2 + dagger(g2);
            const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
            const CMat4 combo = Complex(a) * h1 + Complex(b) * h2;
            const CMat2 lhs = partial_trace_B(combo);
            const CMat2 rhs = Complex(a) * partial_trace_B(h1) + Complex(b) * partial_trace_B(h2);
            worst = std::max(worst, max_abs_diff(lhs, rhs));
            worst = std::max(worst, std::abs(trace(partial_trace_B(h1)) - trace(h1)));
        }
        check("linalg.partial_trace_linear_trace_preserving", worst, 1e-12);
    }
    {  // eigenvalue invariance under unitary conjugation
        double worst = 0.0;
        CMat4 diag;
        diag(0, 0) = 4.0; diag(1, 1) = 3.0; diag(2, 2) = 2.0; diag(3, 3) = 1.0;
        CMat4 cnot;  // |11>,|10>,|01>,|00>: flips B when A = |1>
        cnot(0, 1) = cnot(1, 0) = cnot(2, 2) = cnot(3, 3) = 1.0;
        for (int t = 0; t < 200; ++t) {
            const CMat4 u1 = tensor(su2_from_euler({rng.angle(), rng.angle(), rng.angle()}),
                                    su2_from_euler({rng.angle(), rng.angle(), rng.angle()}));
            const CMat4 u2 = tensor(su2_from_euler({rng.angle(), rng.angle(), rng.angle()}),
                                    su2_from_euler({rng.angle(), rng.angle(), rng.angle()}));
            const CMat4 u = u1 * cnot * u2;  // generically non-product unitary
            const EigenResult eig = eigenvalues4(u * diag * dagger(u));
            if (!eig.converged) { worst = 1.0; break; }
            for (int i = 0; i < 4; ++i)
                worst = std::max(worst, std::abs(std::abs(eig.values[static_cast<std::size_t>(i)]) -
                                                 static_cast<double>(4 - i)));
        }
        check("linalg.eigen_unitary_invariance", worst, 1e-9);
    }
    {  // dagger is an involutive antihomomorphism
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const CMat4 a = rng.mat4(), b = rng.mat4();
            worst = std::max(worst, max_abs_diff(dagger(a * b), dagger(b) * dagger(a)));
            worst = std::max(worst, max_abs_diff(dagger(dagger(a)), a));
        }
        check("linalg.dagger_antihomomorphism", worst, 1e-12);
    }
    {  // CPTP over 1000 random states x 21 eta values
        double worst_tr = 0.0, worst_h = 0.0;
        bool psd_ok = true;
        for (int t = 0; t < 1000; ++t) {
            const CMat4 rho = rng.state();
            for (int ei = 0; ei <= 20; ++ei) {
                const CMat4 out =
                    apply_channel(product_kraus(DampingChannel(ei / 20.0)), rho);
                worst_tr = std::max(worst_tr, std::abs(trace(out) - 1.0));
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        worst_h = std::max(worst_h, std::abs(out(i, j) - std::conj(out(j, i))));
                psd_ok = psd_ok && is_psd(out, 1e-10);
            }
        }
        check("channels.cptp_trace", worst_tr, corrupt_tolerance ? 0.0 : 1e-12);
        check("channels.cptp_hermitian", worst_h, 1e-12);
        report.checks.push_back({"channels.cptp_psd", psd_ok, "eigenvalue floor -1e-10"});
    }
    {  // remixing never changes the unconditioned map
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const double eta = rng.uniform(0.0, 1.0);
            const KrausSet k = product_kraus(DampingChannel(eta));
            const KrausSet kt = remix_kraus(k, rng.remix_params());
            const CMat4 rho = rng.state();
            worst = std::max(worst, max_abs_diff(apply_channel(kt, rho), apply_channel(k, rho)));
            worst = std::max(worst, completeness_residual(kt));
        }
        check("channels.representation_independence", worst, 1e-12);
    }
    {  // closed-form damped Bell state equality over the eta grid
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double eta = i / 100.0;
            worst = std::max(worst,
                             max_abs_diff(apply_channel(product_kraus(DampingChannel(eta)),
                                                        bell_state()),
                                          closed_form::damped_bell(eta)));
        }
        check("channels.damped_bell_closed_form", worst, 1e-12);
    }
    {  // amplitude damping composes multiplicatively on the dephased-Bell family
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const double e1 = rng.uniform(0.0, 1.0), e2 = rng.uniform(0.0, 1.0);
            const CMat4 rho = dephased_bell(rng.q());
            const CMat4 two_step = apply_channel(product_kraus(DampingChannel(e1)),
                                                 apply_channel(product_kraus(DampingChannel(e2)), rho));
            const CMat4 one_step = apply_channel(product_kraus(DampingChannel(e1 * e2)), rho);
            worst = std::max(worst, max_abs_diff(two_step, one_step));
        }
        check("channels.damping_composition", worst, 1e-12);
    }
    {  // closed-form feedback states vs direct simulation
        double worst = 0.0;
        for (int t = 0; t < 500; ++t) {
            const double eta = rng.uniform(0.0, 1.0);
            const Complex q = rng.q();
            const FeedbackScheme s = rng.scheme();
            const KrausSet k = product_kraus(DampingChannel(eta));
            worst = std::max(worst, max_abs_diff(apply_with_feedback(k, s, bell_state()),
                                                 closed_form::feedback_state(eta, s)));
            worst = std::max(worst, max_abs_diff(apply_with_feedback(k, s, dephased_bell(q)),
                                                 closed_form::feedback_state_dephased(eta, q, s)));
        }
        check("feedback.closed_form_elements", worst, 1e-10);
    }
    {  // purity never drops below 1/2
        double lowest = 1.0;
        for (int t = 0; t < 500; ++t) {
            const double eta = rng.uniform(0.0, 1.0);
            const KrausSet k = product_kraus(DampingChannel(eta));
            lowest = std::min(lowest, subsystem_purity(apply_with_feedback(k, rng.scheme(),
                                                                           bell_state())));
        }
        check("feedback.purity_floor", 0.5 - lowest, 1e-10);
    }
    {  // optimal-scheme results do not depend on the free phases
        double worst = 0.0;
        for (int i = 0; i < 16; ++i) {
            const double pu = i * pi / 8.0, pv = (15 - i) * pi / 8.0;
            const KrausSet k = product_kraus(DampingChannel(0.7));
            const CMat4 st = apply_with_feedback(k, optimal_scheme(pu, pv), bell_state());
            worst = std::max(worst, std::abs(concurrence(st).value - 0.7));
            worst = std::max(worst, std::abs(subsystem_purity(st) - 0.5));
        }
        check("feedback.optimal_phase_freedom", worst, 1e-12);
    }
    {  // geometric decay of the repeated-feedback concurrence
        double worst = 0.0;
        for (int t = 0; t < 40; ++t) {
            const double eta = rng.uniform(0.0, 1.0);
            const int n = 2 + t % 5;
            const double cn =
                concurrence(repeat_map(bell_state(), eta, RepeatConfig(n, true))).value;
            const double cm =
                concurrence(repeat_map(bell_state(), eta, RepeatConfig(n - 1, true))).value;
            worst = std::max(worst, std::abs(cn - eta * cm));
        }
        check("feedback.repeat_geometric_decay", worst, 1e-10);
    }
    {  // feedback never hurts on this family
        double worst = -1.0;
        for (int i = 0; i <= 20; ++i) {
            const double eta = i / 20.0;
            for (int n = 1; n <= 6; ++n) {
                const double fb =
                    concurrence(repeat_map(bell_state(), eta, RepeatConfig(n, true))).value;
                const double plain =
                    concurrence(repeat_map(bell_state(), eta, RepeatConfig(n, false))).value;
                worst = std::max(worst, plain - fb);
            }
        }
        check("feedback.monotone_advantage", worst, 1e-12);
    }
    {  // concurrence is invariant under local unitaries
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const CMat4 rho = rng.state();
            const CMat4 u = tensor(su2_from_euler({rng.angle(), rng.angle(), rng.angle()}),
                                   su2_from_euler({rng.angle(), rng.angle(), rng.angle()}));
            worst = std::max(worst, std::abs(concurrence(u * rho * dagger(u)).value -
                                             concurrence(rho).value));
        }
        check("measures.local_unitary_invariance", worst, 1e-9);
    }
    {  // purity decreases and concurrence increases with eta on the damped family
        bool monotone = true;
        double prev_p = 2.0, prev_c = -1.0;
        for (int i = 0; i <= 20; ++i) {
            const double eta = i / 20.0;
            const CMat4 st = apply_channel(product_kraus(DampingChannel(eta)), bell_state());
            const double p = subsystem_purity(st), c = concurrence(st).value;
            if (i > 0 && !(p < prev_p && c > prev_c)) monotone = false;
            prev_p = p;
            prev_c = c;
        }
        report.checks.push_back({"measures.purity_concurrence_anticorrelation", monotone,
                                 "strict monotonicity on the eta grid"});
    }
    {  // measure ranges on random valid states
        double worst = 0.0;
        for (int t = 0; t < 300; ++t) {
            const CMat4 rho = rng.state();
            const double c = concurrence(rho).value;
            const double p = subsystem_purity(rho);
            worst = std::max({worst, -c, c - 1.0, 0.5 - p, p - 1.0});
        }
        check("measures.ranges", worst, 1e-12);
    }
    {  // remixed purity: closed form vs simulation, and V_B independence
        double worst = 0.0, worst_vb = 0.0;
        for (int t = 0; t < 100; ++t) {
            const double eta = rng.uniform(0.0, 1.0);
            const FeedbackScheme s = rng.scheme();
            const RemixParams p = rng.remix_params();
            const KrausSet k = product_kraus(DampingChannel(eta));
            const double sim =
                subsystem_purity(apply_with_feedback(remix_kraus(k, p), s, bell_state()));
            const PurityBreakdown pb =
                closed_form::purity_remixed(eta, s.u_params, s.v_params, p);
            worst = std::max(worst, std::abs(sim - pb.value));
            for (int v = 0; v < 20; ++v) {
                const RemixParams alt{p.r_alpha, p.theta_alpha, p.theta_beta,
                                      rng.uniform(0.0, 1.0), rng.angle(), rng.angle()};
                worst_vb = std::max(worst_vb,
                                    std::abs(closed_form::purity_remixed(eta, s.u_params,
                                                                         s.v_params, alt).value -
                                             pb.value));
                if (v == 0) {
                    const double sim_alt = subsystem_purity(
                        apply_with_feedback(remix_kraus(k, alt), s, bell_state()));
                    worst_vb = std::max(worst_vb, std::abs(sim_alt - sim));
                }
            }
        }
        check("measures.remixed_purity_closed_form", worst, 1e-10);
        check("measures.remixed_purity_vb_independence", worst_vb, 1e-12);
    }
    {  // X-state closed form agrees with the eigensolver route
        double worst = 0.0;
        for (int t = 0; t < 1000; ++t) {
            const CMat4 rho = rng.x_state();
            worst = std::max(worst,
                             std::abs(concurrence(rho).value - concurrence_x_state(rho)));
        }
        check("measures.x_state_oracle", worst, 1e-9);
    }
    {  // stationary families: exact residuals, correct labels
        bool ok = true;
        std::string detail = "both families enumerated";
        try {
            const auto sols = classify_stationary_sets();
            int floors = 0, flats = 0;
            for (const auto& s : sols)
                (s.label == StationaryFamilyKind::optimal_floor ? floors : flats) += 1;
            ok = floors == 4 && flats == 4;
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        report.checks.push_back({"optimize.stationary_families", ok, detail});
    }
    {  // no sweep point beats the analytic optimum; optimum purity consistency
        SweepConfig cfg;
        cfg.eta_grid = {0.0, 0.3, 0.8, 1.0};
        cfg.r_alpha_grid = {0.0, 0.5, 1.0};
        cfg.angle_grid_size = 13;
        double worst = 0.0, worst_purity = 0.0;
        const SweepResult rem = sweep_remix(cfg);
        for (const SweepRecord& r : rem.records) worst = std::max(worst, r.value - r.eta);
        for (const SweepBest& b : rem.best) {
            const KrausSet k = product_kraus(DampingChannel(b.eta));
            const KrausSet kt =
                remix_kraus(k, RemixParams(b.params[0], b.params[1], 0.0, 1.0, 0.0, 0.0));
            const double zeta = pi + b.params[2] + 2.0 * b.params[1];
            const FeedbackScheme s{{zeta, 0.0, 0.0}, {b.params[2], pi, 0.0}};
            worst_purity = std::max(worst_purity,
                                    std::abs(subsystem_purity(apply_with_feedback(kt, s,
                                                                                  bell_state())) -
                                             0.5));
        }
        const SweepResult can = sweep_canonical(cfg);
        for (const SweepRecord& r : can.records) worst = std::max(worst, r.value - r.eta);
        check("optimize.canonical_dominance", worst, 1e-9);
        check("optimize.optimum_purity_consistency", worst_purity, 1e-9);
    }
    {  // identical config => bit-identical result, independent of worker count
        SweepConfig cfg;
        cfg.eta_grid = {0.2, 0.9};
        cfg.r_alpha_grid = {0.0, 0.6, 1.0};
        cfg.angle_grid_size = 9;
        cfg.q_grid = {0.0, 0.7, 1.0};
        cfg.workers = 1;
        const SweepResult a = sweep_remix(cfg);
        cfg.workers = 3;
        const SweepResult b = sweep_remix(cfg);
        bool identical = a.records.size() == b.records.size() && a.best.size() == b.best.size();
        for (std::size_t i = 0; identical && i < a.records.size(); ++i)
            identical = a.records[i].value == b.records[i].value &&
                        a.records[i].params == b.records[i].params;
        for (std::size_t i = 0; identical && i < a.best.size(); ++i)
            identical = a.best[i].value == b.best[i].value &&
                        a.best[i].params == b.best[i].params &&
                        a.best[i].tie_count == b.best[i].tie_count;
        report.checks.push_back({"optimize.grid_determinism", identical,
                                 "workers=1 vs workers=3, bitwise"});
    }

    {  // documented discrepancy: the printed no-feedback concurrence expression
        double worst = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const double eta = i / 20.0;
            const double printed =
                eta * eta * std::sqrt(2.0 + eta * eta - 2.0 * eta) -
                0.5 * eta * eta * (1.0 - eta * eta);
            const double wootters =
                concurrence(apply_channel(product_kraus(DampingChannel(eta)), bell_state())).value;
            worst = std::max(worst, std::abs(printed - wootters));
        }
        std::ostringstream os;
        os << "the radical-form concurrence expression for the damped Bell state deviates "
              "from the Wootters value (eta^2) by up to "
           << worst << " on the eta grid; the Wootters definition is authoritative and "
              "nothing asserts the radical form";
        report.known_issues.push_back(os.str());
    }

    return report;
}

}  // namespace qfb
