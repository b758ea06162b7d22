#pragma once

#include <array>

#include "qfb/channels.hpp"
#include "qfb/linalg.hpp"

namespace qfb {

/// z-y-z Euler angles in radians, canonicalized to [0, 2pi) on construction
/// for reporting; everything downstream is 2pi-periodic.
struct EulerAngles {
    double alpha;
    double beta;
    double gamma;
    EulerAngles(double a, double b, double g);
};

/// The two SU(2) actuators: U1 = u(x)u, U2 = u(x)v, U3 = v(x)u, U4 = v(x)v,
/// index-aligned with the Kraus operators K1..K4.
struct FeedbackScheme {
    EulerAngles u_params;
    EulerAngles v_params;

    static FeedbackScheme identity() { return {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}; }
};

/// Derived angle combinations used by the purity analysis:
/// xi = a_u - a_v, theta = b_u + b_v, phi = b_u - b_v,
/// zeta_u = a_u + g_u, xi_v = a_v - g_v.
struct AngleCombos {
    double xi;
    double theta;
    double phi;
    double zeta_u;
    double xi_v;

    static AngleCombos from_scheme(const FeedbackScheme& s);
};

struct RepeatConfig {
    int n;
    bool with_feedback;
    double phase;  // the free a_u + g_u of the optimal scheme

    RepeatConfig(int n_, bool with_feedback_, double phase_ = 0.0);
};

/// [[e^{-i(a+g)/2} cos(b/2), -e^{-i(a-g)/2} sin(b/2)],
///  [e^{ i(a-g)/2} sin(b/2),  e^{ i(a+g)/2} cos(b/2)]]
CMat2 su2_from_euler(const EulerAngles& a);

std::array<CMat4, 4> feedback_unitaries(const FeedbackScheme& s);

/// rho'' = sum_j (U_j K_j) rho (U_j K_j)^dag. Validates the input state.
CMat4 apply_with_feedback(const KrausSet& k, const FeedbackScheme& s, const CMat4& rho);

/// The purity-minimizing actuators: u = diag(e^{-i phase_u/2}, e^{i phase_u/2})
/// (beta_u = 0, phase_u = a_u + g_u) and v antidiagonal with phases from
/// phase_v = a_v - g_v (beta_v = pi), i.e. theta = pi, phi = -pi.
FeedbackScheme optimal_scheme(double phase_u, double phase_v);

/// n-fold composition of the damping map, with or without the optimal
/// feedback scheme at cfg.phase, starting from rho0.
CMat4 repeat_map(const CMat4& rho0, double eta, const RepeatConfig& cfg);

namespace closed_form {

/// The feedback-corrected state for a Bell input, entrywise closed form.
CMat4 feedback_state(double eta, const FeedbackScheme& s);

/// Same for the dephased-Bell input; q = 1 reduces to feedback_state.
CMat4 feedback_state_dephased(double eta, Complex q, const FeedbackScheme& s);

/// Optimal-scheme output: corners 1/2, off-corner (eta/2) e^{-2i zeta_u}.
CMat4 optimal_feedback_state(double eta, double zeta_u);
CMat4 optimal_feedback_state_dephased(double eta, Complex q, double zeta_u);

/// n applications without feedback.
CMat4 repeated_damped_bell(double eta, int n);

/// n applications with the optimal scheme (off-corner phase e^{-2ni zeta_u}).
CMat4 repeated_feedback_state(double eta, int n, double zeta_u);

/// Concurrence after n applications: eta^n with feedback; without feedback,
/// the radical expression in eta^n (which simplifies to eta^{2n}).
double repeat_concurrence(double eta, int n, bool with_feedback);

}  // namespace closed_form

}  // namespace qfb
