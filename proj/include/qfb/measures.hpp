#pragma once

#include "qfb/channels.hpp"
#include "qfb/feedback.hpp"
#include "qfb/linalg.hpp"

namespace qfb {

/// Wootters spectrum: lambdas sorted descending, value = max(0, l1-l2-l3-l4)
/// clamped to [0, 1].
struct ConcurrenceBreakdown {
    std::array<double, 4> lambdas{};
    double value = 0.0;
};

/// The two invariants the remixed-feedback purity is built from:
/// value = (4 + p1^2 + |p2|^2) / 8.
struct PurityBreakdown {
    double p1 = 0.0;
    Complex p2{};
    double value = 0.0;
};

/// Tr(rho_A^2) with rho_A the qubit-A marginal; in [1/2, 1] for valid states.
/// Validates the input state.
double subsystem_purity(const CMat4& rho);

/// Wootters concurrence via the spectrum of rho * (Y(x)Y) rho* (Y(x)Y).
/// Validates the input state; propagates NonConvergenceError and flags
/// eigenvalues with |Im| >= 1e-9 (or Re < -1e-9) as InvalidStateError.
ConcurrenceBreakdown concurrence(const CMat4& rho);

/// Same computation without the density-matrix validation; for hot loops
/// feeding states that are valid by construction.
ConcurrenceBreakdown concurrence_unchecked(const CMat4& rho);

/// Closed form for X states (nonzero entries only on diagonal and
/// anti-diagonal): 2 max(0, |r14| - sqrt(r22 r33), |r23| - sqrt(r11 r44)).
/// Throws NotXStateError if the sparsity pattern fails (tolerance 1e-12).
double concurrence_x_state(const CMat4& rho);

namespace closed_form {

/// Subsystem purity of the damped Bell state: (2 - 2 eta + eta^2) / 2.
double purity_damped(double eta);

/// Subsystem purity of the feedback-corrected state:
/// (1/4) {3 - eta(2-eta) + (1/2)(1-eta)^2 [(1-cos xi)cos theta + (1+cos xi)cos phi]}.
double purity_feedback(double eta, const AngleCombos& c);

/// Subsystem purity of the remixed-Kraus feedback-corrected state; depends
/// on the mixing unitary only through alpha, beta of V_A.
PurityBreakdown purity_remixed(double eta, const EulerAngles& u, const EulerAngles& v,
                               const RemixParams& p);

}  // namespace closed_form

}  // namespace qfb
