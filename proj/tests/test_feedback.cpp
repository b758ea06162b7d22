#include "qfb/feedback.hpp"

#include <cmath>

#include "doctest.h"
#include "qfb/errors.hpp"
#include "qfb/measures.hpp"
#include "test_helpers.hpp"

using namespace qfb;
using test::Rng;
using test::pi;

TEST_CASE("su2_from_euler known matrices and unitarity") {
    CHECK(max_abs_diff(su2_from_euler({0.0, 0.0, 0.0}), CMat2::identity()) == 0.0);

    // (0, pi, 0): antisymmetric real rotation
    const CMat2 flip = su2_from_euler({0.0, pi, 0.0});
    CHECK(std::abs(flip(0, 1) - Complex(-1.0)) < 1e-15);
    CHECK(std::abs(flip(1, 0) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(flip(0, 0)) < 1e-15);
    CHECK(std::abs(flip(1, 1)) < 1e-15);

    Rng rng;
    for (int t = 0; t < 100; ++t) {
        const CMat2 u = su2_from_euler(rng.euler());
        CHECK(max_abs_diff(u * dagger(u), CMat2::identity()) < 1e-14);
        const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
        CHECK(std::abs(det - 1.0) < 1e-12);
    }
}

TEST_CASE("euler angles canonicalize to [0, 2pi)") {
    const EulerAngles a{-pi, 5.0 * pi, 2.0 * pi};
    CHECK(a.alpha == doctest::Approx(pi));
    CHECK(a.beta == doctest::Approx(pi));
    CHECK(a.gamma == 0.0);
    CHECK(a.alpha >= 0.0);
    CHECK(a.alpha < 2.0 * pi);
    CHECK_THROWS_AS(EulerAngles(std::nan(""), 0.0, 0.0), DomainError);
}

TEST_CASE("feedback_unitaries structure") {
    const auto identity = feedback_unitaries(FeedbackScheme::identity());
    for (const CMat4& u : identity) CHECK(max_abs_diff(u, CMat4::identity()) == 0.0);

    Rng rng;
    for (int t = 0; t < 20; ++t) {
        const FeedbackScheme s = rng.scheme();
        const auto us = feedback_unitaries(s);
        for (const CMat4& u : us)
            CHECK(max_abs_diff(u * dagger(u), CMat4::identity()) < 1e-12);
        // index pairing: U2 = u (x) v
        CHECK(max_abs_diff(us[1], tensor(su2_from_euler(s.u_params),
                                         su2_from_euler(s.v_params))) == 0.0);
    }

    // U2 at u = I, v = [[0,-1],[1,0]] is the plain tensor embedding
    const FeedbackScheme s{{0.0, 0.0, 0.0}, {0.0, pi, 0.0}};
    const CMat4 u2 = feedback_unitaries(s)[1];
    CHECK(max_abs_diff(u2, tensor(CMat2::identity(), su2_from_euler({0.0, pi, 0.0}))) == 0.0);
}

TEST_CASE("apply_with_feedback with the identity scheme is the bare channel") {
    Rng rng;
    for (int t = 0; t < 25; ++t) {
        const double eta = rng.uniform(0.0, 1.0);
        const KrausSet k = product_kraus(DampingChannel(eta));
        const CMat4 rho = rng.state();
        CHECK(max_abs_diff(apply_with_feedback(k, FeedbackScheme::identity(), rho),
                           apply_channel(k, rho)) == 0.0);
    }
}

TEST_CASE("optimal scheme structure and invariants") {
    {
        const FeedbackScheme s = optimal_scheme(0.0, 0.0);
        CHECK(max_abs_diff(su2_from_euler(s.u_params), CMat2::identity()) == 0.0);
        const CMat2 v = su2_from_euler(s.v_params);
        CHECK(std::abs(v(0, 1) + 1.0) < 1e-15);
        CHECK(std::abs(v(1, 0) - 1.0) < 1e-15);
    }
    Rng rng;
    for (int t = 0; t < 40; ++t) {
        const double eta = rng.uniform(0.0, 1.0);
        const double pu = rng.angle(), pv = rng.angle();
        const KrausSet k = product_kraus(DampingChannel(eta));
        const CMat4 out = apply_with_feedback(k, optimal_scheme(pu, pv), bell_state());
        CHECK(std::abs(concurrence(out).value - eta) < 1e-10);
        CHECK(std::abs(subsystem_purity(out) - 0.5) < 1e-10);
    }
}

TEST_CASE("optimal-scheme output matches the corner closed form") {
    Rng rng;
    for (int t = 0; t < 40; ++t) {
        const double eta = rng.uniform(0.0, 1.0);
        const double pu = rng.angle();
        const Complex q = rng.q();
        const KrausSet k = product_kraus(DampingChannel(eta));
        const FeedbackScheme s = optimal_scheme(pu, rng.angle());
        const double zeta = AngleCombos::from_scheme(s).zeta_u;
        CHECK(max_abs_diff(apply_with_feedback(k, s, bell_state()),
                           closed_form::optimal_feedback_state(eta, zeta)) < 1e-12);
        CHECK(max_abs_diff(apply_with_feedback(k, s, dephased_bell(q)),
                           closed_form::optimal_feedback_state_dephased(eta, q, zeta)) < 1e-12);
    }
}

TEST_CASE("closed-form feedback state equals direct simulation") {
    Rng rng;
    for (int t = 0; t < 200; ++t) {
        const double eta = rng.uniform(0.0, 1.0);
        const FeedbackScheme s = rng.scheme();
        const KrausSet k = product_kraus(DampingChannel(eta));
        CHECK(max_abs_diff(closed_form::feedback_state(eta, s),
                           apply_with_feedback(k, s, bell_state())) < 1e-10);
    }
    // feedback off reduces to the damped Bell closed form
    for (int i = 0; i <= 10; ++i) {
        const double eta = i / 10.0;
        CHECK(max_abs_diff(closed_form::feedback_state(eta, FeedbackScheme::identity()),
                           closed_form::damped_bell(eta)) < 1e-15);
    }
    // eta = 1: the map is unitary, so the output stays pure
    for (int t = 0; t < 20; ++t) {
        const CMat4 out = closed_form::feedback_state(1.0, rng.scheme());
        CHECK(std::abs((trace(out * out)).real() - 1.0) < 1e-12);
    }
}

TEST_CASE("closed-form dephased feedback state") {
    Rng rng;
    for (int t = 0; t < 200; ++t) {
        const double eta = rng.uniform(0.0, 1.0);
        const Complex q = rng.q();
        const FeedbackScheme s = rng.scheme();
        const KrausSet k = product_kraus(DampingChannel(eta));
        CHECK(max_abs_diff(closed_form::feedback_state_dephased(eta, q, s),
                           apply_with_feedback(k, s, dephased_bell(q))) < 1e-10);
        CHECK(max_abs_diff(closed_form::feedback_state_dephased(eta, 1.0, s),
                           closed_form::feedback_state(eta, s)) == 0.0);
    }
    // q = 0 under the optimal scheme: diagonal output, no entanglement
    for (int t = 0; t < 20; ++t) {
        const double eta = rng.uniform(0.0, 1.0);
        const KrausSet k = product_kraus(DampingChannel(eta));
        const CMat4 out = apply_with_feedback(k, optimal_scheme(rng.angle(), rng.angle()),
                                              dephased_bell(0.0));
        CHECK(std::abs(out(0, 3)) < 1e-15);
        CHECK(concurrence(out).value < 1e-12);
    }
}

TEST_CASE("repeat_map matches the repeated closed forms") {
    Rng rng;
    const CMat4 bell = bell_state();
    for (int t = 0; t < 60; ++t) {
        const double eta = rng.uniform(0.0, 1.0);
        const int n = 1 + static_cast<int>(rng.uniform(0.0, 6.0));
        const double phase = rng.angle();

        const CMat4 plain = repeat_map(bell, eta, RepeatConfig(n, false));
        CHECK(max_abs_diff(plain, closed_form::repeated_damped_bell(eta, n)) < 1e-10);

        const CMat4 fed = repeat_map(bell, eta, RepeatConfig(n, true, phase));
        const double zeta = AngleCombos::from_scheme(optimal_scheme(phase, 0.0)).zeta_u;
        CHECK(max_abs_diff(fed, closed_form::repeated_feedback_state(eta, n, zeta)) < 1e-10);
    }
    // n = 1 is a single application
    const double eta = 0.42;
    const KrausSet k = product_kraus(DampingChannel(eta));
    CHECK(max_abs_diff(repeat_map(bell, eta, RepeatConfig(1, false)),
                       apply_channel(k, bell)) == 0.0);
    CHECK_THROWS_AS(RepeatConfig(0, false), DomainError);
}

TEST_CASE("repeat concurrence closed forms") {
    CHECK(closed_form::repeat_concurrence(0.9, 3, true) ==
          doctest::Approx(0.729).epsilon(1e-12));
    // the no-feedback radical expression collapses to eta^(2n)
    CHECK(closed_form::repeat_concurrence(0.5, 1, false) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(closed_form::repeat_concurrence(1.0, 4, false) == doctest::Approx(1.0));
    CHECK(closed_form::repeat_concurrence(1.0, 4, true) == doctest::Approx(1.0));

    Rng rng;
    for (int t = 0; t < 50; ++t) {
        const double eta = rng.uniform(0.0, 1.0);
        const int n = 1 + static_cast<int>(rng.uniform(0.0, 6.0));
        CHECK(std::abs(closed_form::repeat_concurrence(eta, n, false) -
                       std::pow(eta, 2 * n)) < 1e-12);
        // radical vs the Wootters oracle on the simulated state
        const double sim =
            concurrence(repeat_map(bell_state(), eta, RepeatConfig(n, false))).value;
        CHECK(std::abs(closed_form::repeat_concurrence(eta, n, false) - sim) < 1e-10);
    }
}

TEST_CASE("feedback advantage and geometric decay") {
    for (int i = 0; i <= 10; ++i) {
        const double eta = i / 10.0;
        for (int n = 1; n <= 6; ++n) {
            const double fb =
                concurrence(repeat_map(bell_state(), eta, RepeatConfig(n, true))).value;
            const double plain =
                concurrence(repeat_map(bell_state(), eta, RepeatConfig(n, false))).value;
            CHECK(fb >= plain - 1e-12);
            CHECK(std::abs(fb - std::pow(eta, n)) < 1e-10);
        }
    }
}

TEST_CASE("angle combos derive from the scheme") {
    const FeedbackScheme s{{1.0, 2.0, 0.5}, {0.25, 3.0, 1.5}};
    const AngleCombos c = AngleCombos::from_scheme(s);
    CHECK(c.xi == doctest::Approx(1.0 - 0.25));
    CHECK(c.theta == doctest::Approx(2.0 + 3.0));
    CHECK(c.phi == doctest::Approx(2.0 - 3.0));
    CHECK(c.zeta_u == doctest::Approx(1.0 + 0.5));
    CHECK(c.xi_v == doctest::Approx(0.25 - 1.5));
}

TEST_CASE("purity floor holds for arbitrary schemes") {
    Rng rng;
    for (int t = 0; t < 100; ++t) {
        const double eta = rng.uniform(0.0, 1.0);
        const KrausSet k = product_kraus(DampingChannel(eta));
        CHECK(subsystem_purity(apply_with_feedback(k, rng.scheme(), bell_state())) >=
              0.5 - 1e-10);
    }
}
