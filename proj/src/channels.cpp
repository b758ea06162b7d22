#include "qfb/channels.hpp"

#include <cmath>

#include "qfb/errors.hpp"

namespace qfb {

DampingChannel::DampingChannel(double eta_) : eta(eta_) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw DomainError("DampingChannel: eta must be in [0, 1]");
}

RemixParams::RemixParams(double r_a, double th_a, double th_b,
                         double r_ap, double th_ap, double th_bp)
    : r_alpha(r_a),
      theta_alpha(th_a),
      theta_beta(th_b),
      r_alpha_p(r_ap),
      theta_alpha_p(th_ap),
      theta_beta_p(th_bp) {
    if (!(r_alpha >= 0.0 && r_alpha <= 1.0) || !(r_alpha_p >= 0.0 && r_alpha_p <= 1.0))
        throw DomainError("RemixParams: r_alpha must be in [0, 1]");
}

Complex RemixParams::alpha() const { return std::polar(r_alpha, theta_alpha); }
Complex RemixParams::beta() const { return std::polar(std::sqrt(1.0 - r_alpha * r_alpha), theta_beta); }
Complex RemixParams::alpha_p() const { return std::polar(r_alpha_p, theta_alpha_p); }
Complex RemixParams::beta_p() const {
    return std::polar(std::sqrt(1.0 - r_alpha_p * r_alpha_p), theta_beta_p);
}

InitialStateParams::InitialStateParams(Complex q_) : q(q_) {
    if (!(std::abs(q) <= 1.0 + 1e-12))
        throw DomainError("InitialStateParams: |q| must be <= 1");
}

std::pair<CMat2, CMat2> local_kraus(const DampingChannel& ch) {
    CMat2 e1;
    e1(0, 0) = std::sqrt(ch.eta);  // |1><1|
    e1(1, 1) = 1.0;                // |0><0|
    CMat2 e2;
    e2(1, 0) = std::sqrt(1.0 - ch.eta);  // |0><1|
    return {e1, e2};
}

KrausSet product_kraus(const DampingChannel& ch) {
    auto [e1, e2] = local_kraus(ch);
    return {{{tensor(e1, e1), tensor(e1, e2), tensor(e2, e1), tensor(e2, e2)}}};
}

double completeness_residual(const KrausSet& k) {
    CMat4 sum;
    for (const CMat4& op : k.ops) sum = sum + dagger(op) * op;
    return max_abs_diff(sum, CMat4::identity());
}

bool is_canonical(const KrausSet& k, double tol) {
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            if (std::abs(trace(dagger(k.ops[static_cast<std::size_t>(i)]) *
                               k.ops[static_cast<std::size_t>(j)])) > tol)
                return false;
        }
    }
    return true;
}

KrausSet remix_kraus(const KrausSet& k, const RemixParams& p) {
    CMat2 va;
    va(0, 0) = p.alpha();
    va(0, 1) = p.beta();
    va(1, 0) = -std::conj(p.beta());
    va(1, 1) = std::conj(p.alpha());
    CMat2 vb;
    vb(0, 0) = p.alpha_p();
    vb(0, 1) = p.beta_p();
    vb(1, 0) = -std::conj(p.beta_p());
    vb(1, 1) = std::conj(p.alpha_p());
    const CMat4 v = tensor(va, vb);

    KrausSet out;
    for (int i = 0; i < 4; ++i) {
        CMat4 acc;
        for (int j = 0; j < 4; ++j)
            acc = acc + v(i, j) * k.ops[static_cast<std::size_t>(j)];
        out.ops[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

CMat4 bell_state() {
    CMat4 m;
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return m;
}

CMat4 dephased_bell(const InitialStateParams& p) {
    CMat4 m;
    m(0, 0) = m(3, 3) = 0.5;
    m(0, 3) = 0.5 * p.q;
    m(3, 0) = 0.5 * std::conj(p.q);
    return m;
}

CMat4 dephased_bell(Complex q) { return dephased_bell(InitialStateParams(q)); }

bool is_valid_state(const CMat4& rho, double tol) {
    if (!is_finite(rho)) return false;
    if (!is_hermitian(rho, tol)) return false;
    if (std::abs(trace(rho) - 1.0) > tol) return false;
    return is_psd(rho, 1e-10);
}

void require_valid_state(const CMat4& rho, double tol) {
    if (!is_valid_state(rho, tol))
        throw InvalidStateError("expected a Hermitian, unit-trace, PSD density matrix");
}

CMat4 apply_channel(const KrausSet& k, const CMat4& rho) {
    require_valid_state(rho);
    CMat4 out;
    for (const CMat4& op : k.ops) out = out + op * rho * dagger(op);
    return out;
}

namespace closed_form {

CMat4 damped_dephased_bell(double eta, Complex q) {
    DampingChannel ch(eta);  // domain check
    InitialStateParams p(q);
    CMat4 m;
    m(0, 0) = 0.5 * eta * eta;
    m(1, 1) = 0.5 * eta * (1.0 - eta);
    m(2, 2) = 0.5 * eta * (1.0 - eta);
    m(3, 3) = 0.5 * (2.0 + eta * (eta - 2.0));
    m(0, 3) = 0.5 * p.q * ch.eta;
    m(3, 0) = std::conj(m(0, 3));
    return m;
}

CMat4 damped_bell(double eta) { return damped_dephased_bell(eta, 1.0); }

}  // namespace closed_form

}  // namespace qfb
