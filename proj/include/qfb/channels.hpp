#pragma once

#include <array>
#include <utility>

#include "qfb/linalg.hpp"

namespace qfb {

/// Local amplitude damping with survival parameter eta in [0, 1]
/// (eta = 1 is the identity channel, eta = 0 decays |1> fully).
struct DampingChannel {
    double eta;
    explicit DampingChannel(double eta_);
};

/// Four Kraus operators of a two-qubit CPTP map, index-aligned with the
/// feedback unitaries U_1..U_4.
struct KrausSet {
    std::array<CMat4, 4> ops;
};

/// Polar parameters of the Kraus-mixing unitary V = V_A (x) V_B with
/// V_A = [[alpha, beta], [-beta*, alpha*]], alpha = r_a e^{i th_a},
/// beta = sqrt(1 - r_a^2) e^{i th_b}; primed fields parametrize V_B.
/// |alpha|^2 + |beta|^2 = 1 holds by construction.
struct RemixParams {
    double r_alpha;
    double theta_alpha;
    double theta_beta;
    double r_alpha_p;
    double theta_alpha_p;
    double theta_beta_p;

    RemixParams(double r_a, double th_a, double th_b,
                double r_ap, double th_ap, double th_bp);

    Complex alpha() const;
    Complex beta() const;
    Complex alpha_p() const;
    Complex beta_p() const;
    double theta_ab() const { return theta_alpha - theta_beta; }

    /// V = I: r_alpha = r_alpha' = 1, all phases zero.
    static RemixParams identity() { return {1.0, 0.0, 0.0, 1.0, 0.0, 0.0}; }
};

/// Initial-state family parameter: off-diagonal weight q, |q| <= 1.
struct InitialStateParams {
    Complex q;
    explicit InitialStateParams(Complex q_);
};

/// E1 = sqrt(eta)|1><1| + |0><0|,  E2 = sqrt(1-eta)|0><1|.
std::pair<CMat2, CMat2> local_kraus(const DampingChannel& ch);

/// K1 = E1(x)E1, K2 = E1(x)E2, K3 = E2(x)E1, K4 = E2(x)E2.
KrausSet product_kraus(const DampingChannel& ch);

/// max entry of |sum K^dag K - I|.
double completeness_residual(const KrausSet& k);

/// Tr(K_i^dag K_j) proportional to delta_ij within tol (off-diagonals only).
bool is_canonical(const KrausSet& k, double tol);

/// K~_i = sum_j V_ij K_j with V = V_A (x) V_B. Same channel, different
/// environment measurement.
KrausSet remix_kraus(const KrausSet& k, const RemixParams& p);

/// (|00> + |11>)/sqrt(2) as a density matrix in basis B.
CMat4 bell_state();

/// One-parameter family: diag corners 1/2 and off-diagonal corner q/2
/// (q = 1 is the Bell state, q = 0 the fully dephased mixture).
CMat4 dephased_bell(const InitialStateParams& p);
CMat4 dephased_bell(Complex q);

/// Throws InvalidStateError unless rho is Hermitian, unit trace and PSD
/// within the given tolerance (PSD floor is -1e-10).
void require_valid_state(const CMat4& rho, double tol = 1e-9);
bool is_valid_state(const CMat4& rho, double tol = 1e-9);

/// rho' = sum_j K_j rho K_j^dag. Validates the input state.
CMat4 apply_channel(const KrausSet& k, const CMat4& rho);

namespace closed_form {

/// The damped Bell state, entrywise.
CMat4 damped_bell(double eta);

/// The damped dephased-Bell state, entrywise.
CMat4 damped_dephased_bell(double eta, Complex q);

}  // namespace closed_form

}  // namespace qfb
