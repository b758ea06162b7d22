// Acceptance suite: every release-gating requirement, one pass/fail line each.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "qfb/cli.hpp"
#include "qfb/optimize.hpp"
#include "test_helpers.hpp"

using namespace qfb;
using test::Rng;
using test::pi;

namespace {

int failures = 0;

void criterion(int num, const std::string& description, bool pass, double worst = -1.0,
               double tol = -1.0) {
    std::printf("%s  criterion %d: %s", pass ? "PASS" : "FAIL", num, description.c_str());
    if (worst >= 0.0 && tol >= 0.0) std::printf("  (worst %.3g, tolerance %.3g)", worst, tol);
    std::printf("\n");
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    Rng rng(0xACCE97ULL);

    {  // 1: optimal-feedback concurrence equals eta across the 101-point grid
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double eta = i / 100.0;
            const CMat4 out = apply_with_feedback(product_kraus(DampingChannel(eta)),
                                                  optimal_scheme(0.0, 0.0), bell_state());
            worst = std::max(worst, std::abs(concurrence(out).value - eta));
        }
        const double elapsed = seconds_since(t0);
        criterion(1, "optimal-feedback concurrence = eta on 101 points, < 1 s",
                  worst <= 1e-10 && elapsed < 1.0, worst, 1e-10);
    }

    {  // 2: purity pinned at 1/2 for the optimal scheme; 1/2 is a global floor
        double worst_opt = 0.0;
        double lowest = 1.0;
        for (int i = 0; i <= 100; ++i) {
            const double eta = i / 100.0;
            const KrausSet k = product_kraus(DampingChannel(eta));
            worst_opt = std::max(
                worst_opt,
                std::abs(subsystem_purity(apply_with_feedback(
                             k, optimal_scheme(rng.angle(), rng.angle()), bell_state())) -
                         0.5));
        }
        for (int t = 0; t < 500; ++t) {
            const KrausSet k = product_kraus(DampingChannel(rng.uniform(0.0, 1.0)));
            lowest = std::min(lowest, subsystem_purity(apply_with_feedback(k, rng.scheme(),
                                                                           bell_state())));
        }
        criterion(2, "optimal-scheme purity = 1/2; no scheme dips below the floor",
                  worst_opt <= 1e-10 && lowest >= 0.5 - 1e-10,
                  std::max(worst_opt, 0.5 - lowest), 1e-10);
    }

    {  // 3: closed-form state oracles, 200 random tuples, n <= 6
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const double eta = rng.uniform(0.0, 1.0);
            const Complex q = rng.q();
            const int n = 1 + static_cast<int>(rng.uniform(0.0, 6.0));
            const double phase = rng.angle();
            const KrausSet k = product_kraus(DampingChannel(eta));

            worst = std::max(worst, max_abs_diff(apply_channel(k, bell_state()),
                                                 closed_form::damped_bell(eta)));
            worst = std::max(worst, max_abs_diff(apply_channel(k, dephased_bell(q)),
                                                 closed_form::damped_dephased_bell(eta, q)));
            const FeedbackScheme opt = optimal_scheme(phase, rng.angle());
            const double zeta = AngleCombos::from_scheme(opt).zeta_u;
            worst = std::max(worst, max_abs_diff(apply_with_feedback(k, opt, bell_state()),
                                                 closed_form::optimal_feedback_state(eta, zeta)));
            worst = std::max(worst,
                             max_abs_diff(repeat_map(bell_state(), eta, RepeatConfig(n, false)),
                                          closed_form::repeated_damped_bell(eta, n)));
            worst = std::max(
                worst, max_abs_diff(repeat_map(bell_state(), eta, RepeatConfig(n, true, phase)),
                                    closed_form::repeated_feedback_state(eta, n, zeta)));
        }
        criterion(3, "closed-form state oracles match simulation entrywise", worst <= 1e-10,
                  worst, 1e-10);
    }

    {  // 4: matrix-element closed forms vs direct simulation, 500 tuples
        double worst = 0.0;
        for (int t = 0; t < 500; ++t) {
            const double eta = rng.uniform(0.0, 1.0);
            const Complex q = rng.q();
            const FeedbackScheme s = rng.scheme();
            const KrausSet k = product_kraus(DampingChannel(eta));
            worst = std::max(worst, max_abs_diff(apply_with_feedback(k, s, bell_state()),
                                                 closed_form::feedback_state(eta, s)));
            worst = std::max(worst,
                             max_abs_diff(apply_with_feedback(k, s, dephased_bell(q)),
                                          closed_form::feedback_state_dephased(eta, q, s)));
        }
        criterion(4, "feedback matrix-element closed forms match simulation", worst <= 1e-10,
                  worst, 1e-10);
    }

    {  // 5: purity formulas vs simulation; mixing-unitary B factor is inert
        double worst = 0.0;
        double worst_vb = 0.0;
        for (int t = 0; t < 500; ++t) {
            const double eta = rng.uniform(0.0, 1.0);
            const Complex q = rng.q();
            const FeedbackScheme s = rng.scheme();
            const RemixParams p = rng.remix_params();
            const KrausSet k = product_kraus(DampingChannel(eta));

            worst = std::max(worst, std::abs(subsystem_purity(apply_channel(k, dephased_bell(q))) -
                                             closed_form::purity_damped(eta)));
            worst = std::max(
                worst, std::abs(subsystem_purity(apply_with_feedback(k, s, bell_state())) -
                                closed_form::purity_feedback(eta, AngleCombos::from_scheme(s))));
            const double sim_remixed =
                subsystem_purity(apply_with_feedback(remix_kraus(k, p), s, bell_state()));
            const PurityBreakdown pb =
                closed_form::purity_remixed(eta, s.u_params, s.v_params, p);
            worst = std::max(worst, std::abs(sim_remixed - pb.value));

            if (t % 25 == 0) {
                for (int v = 0; v < 20; ++v) {
                    const RemixParams alt{p.r_alpha, p.theta_alpha, p.theta_beta,
                                          rng.uniform(0.0, 1.0), rng.angle(), rng.angle()};
                    worst_vb = std::max(
                        worst_vb,
                        std::abs(closed_form::purity_remixed(eta, s.u_params, s.v_params, alt)
                                     .value -
                                 pb.value));
                    const double sim_alt = subsystem_purity(
                        apply_with_feedback(remix_kraus(k, alt), s, bell_state()));
                    worst_vb = std::max(worst_vb, std::abs(sim_alt - sim_remixed));
                }
            }
        }
        criterion(5, "purity closed forms match simulation and ignore the V_B factor",
                  worst <= 1e-10 && worst_vb <= 1e-10, std::max(worst, worst_vb), 1e-10);
    }

    {  // 6: the representation sweep reproduces the canonical optimum
        SweepConfig cfg = SweepConfig::reference_grids();
        cfg.record_points = false;

        const auto t0 = std::chrono::steady_clock::now();
        const SweepResult full = sweep_remix(cfg);
        const double elapsed = seconds_since(t0);

        SweepConfig slice = cfg;
        slice.r_alpha_grid = {1.0};
        const SweepResult canonical_slice = sweep_remix(slice);

        double worst = 0.0;
        for (std::size_t i = 0; i < full.best.size(); ++i) {
            worst = std::max(worst, std::abs(full.best[i].value - full.best[i].eta));
            worst = std::max(worst,
                             std::abs(canonical_slice.best[i].value - full.best[i].value));
        }

        SweepConfig with_q = cfg;
        with_q.q_grid = cfg.eta_grid;  // 11 values, step 0.1
        const SweepResult dephased = sweep_remix(with_q);
        SweepConfig with_q_slice = with_q;
        with_q_slice.r_alpha_grid = {1.0};
        const SweepResult dephased_slice = sweep_remix(with_q_slice);
        for (std::size_t i = 0; i < dephased.best.size(); ++i) {
            worst = std::max(worst, std::abs(dephased.best[i].value -
                                             dephased.best[i].eta * dephased.best[i].q_mag));
            worst = std::max(worst,
                             std::abs(dephased_slice.best[i].value - dephased.best[i].value));
        }
        std::printf("      (full 11x11x61x61 sweep: %.2f s single worker)\n", elapsed);
        criterion(6, "sweep optimum is eta (and |q| eta), attained at r_alpha = 1, < 60 s",
                  worst <= 1e-9 && elapsed < 60.0, worst, 1e-9);
    }

    {  // 7: repeated-map concurrence laws
        double worst = 0.0;
        double worst_agree = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const double eta = i / 20.0;
            for (int n = 1; n <= 6; ++n) {
                const double fb =
                    concurrence(repeat_map(bell_state(), eta, RepeatConfig(n, true))).value;
                const double plain_sim =
                    concurrence(repeat_map(bell_state(), eta, RepeatConfig(n, false))).value;
                const double radical = closed_form::repeat_concurrence(eta, n, false);
                worst = std::max(worst, std::abs(fb - std::pow(eta, n)));
                worst = std::max(worst, std::abs(plain_sim - std::pow(eta, 2 * n)));
                worst_agree = std::max(worst_agree, std::abs(radical - plain_sim));
            }
        }
        criterion(7, "repeat laws: eta^n with feedback, eta^(2n) without (radical agrees)",
                  worst <= 1e-10 && worst_agree <= 1e-12, std::max(worst, worst_agree), 1e-10);
    }

    const VerifyReport report = run_verification(false);

    {  // 8: the documented discrepancy stays documented, not asserted
        const double eta = 0.5;
        const double wootters =
            concurrence(apply_channel(product_kraus(DampingChannel(eta)), bell_state())).value;
        const double radical_form = eta * eta * std::sqrt(2.0 + eta * eta - 2.0 * eta) -
                                    0.5 * eta * eta * (1.0 - eta * eta);
        const bool reported = report.known_issues.size() == 1 &&
                              report.known_issues.front().find("Wootters") != std::string::npos;
        const bool values_ok = std::abs(wootters - 0.25) <= 1e-10 &&
                               std::abs(radical_form - 0.18575849718747373) <= 1e-12 &&
                               std::abs(radical_form - wootters) > 0.05;
        criterion(8, "known concurrence-formula discrepancy is reported, never asserted",
                  reported && values_ok);
    }

    {  // 9: randomized property suites are green
        criterion(9, "property suites (CPTP, mixing, invariance, stationarity, X oracle)",
                  report.failed() == 0, report.failed(), 0.0);
    }

    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
