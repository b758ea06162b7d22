#include "qfb/feedback.hpp"

#include <cmath>

#include "qfb/errors.hpp"

namespace qfb {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

double wrap_2pi(double x) {
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

Complex expi(double x) { return {std::cos(x), std::sin(x)}; }

}  // namespace

EulerAngles::EulerAngles(double a, double b, double g)
    : alpha(wrap_2pi(a)), beta(wrap_2pi(b)), gamma(wrap_2pi(g)) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(g))
        throw DomainError("EulerAngles: angles must be finite");
}

AngleCombos AngleCombos::from_scheme(const FeedbackScheme& s) {
    return {s.u_params.alpha - s.v_params.alpha,
            s.u_params.beta + s.v_params.beta,
            s.u_params.beta - s.v_params.beta,
            s.u_params.alpha + s.u_params.gamma,
            s.v_params.alpha - s.v_params.gamma};
}

RepeatConfig::RepeatConfig(int n_, bool with_feedback_, double phase_)
    : n(n_), with_feedback(with_feedback_), phase(phase_) {
    if (n < 1) throw DomainError("RepeatConfig: n must be >= 1");
}

CMat2 su2_from_euler(const EulerAngles& a) {
    const double c = std::cos(a.beta / 2.0);
    const double s = std::sin(a.beta / 2.0);
    CMat2 u;
    u(0, 0) = expi(-(a.alpha + a.gamma) / 2.0) * c;
    u(0, 1) = -expi(-(a.alpha - a.gamma) / 2.0) * s;
    u(1, 0) = expi((a.alpha - a.gamma) / 2.0) * s;
    u(1, 1) = expi((a.alpha + a.gamma) / 2.0) * c;
    return u;
}

std::array<CMat4, 4> feedback_unitaries(const FeedbackScheme& s) {
    const CMat2 u = su2_from_euler(s.u_params);
    const CMat2 v = su2_from_euler(s.v_params);
    return {tensor(u, u), tensor(u, v), tensor(v, u), tensor(v, v)};
}

CMat4 apply_with_feedback(const KrausSet& k, const FeedbackScheme& s, const CMat4& rho) {
    require_valid_state(rho);
    const std::array<CMat4, 4> us = feedback_unitaries(s);
    CMat4 out;
    for (std::size_t j = 0; j < 4; ++j) {
        const CMat4 m = us[j] * k.ops[j];
        out = out + m * rho * dagger(m);
    }
    return out;
}

FeedbackScheme optimal_scheme(double phase_u, double phase_v) {
    return {{phase_u, 0.0, 0.0}, {phase_v, M_PI, 0.0}};
}

CMat4 repeat_map(const CMat4& rho0, double eta, const RepeatConfig& cfg) {
    require_valid_state(rho0);
    const KrausSet k = product_kraus(DampingChannel(eta));
    const FeedbackScheme s = optimal_scheme(cfg.phase, 0.0);
    const std::array<CMat4, 4> us = feedback_unitaries(s);

    CMat4 state = rho0;
    for (int round = 0; round < cfg.n; ++round) {
        CMat4 next;
        for (std::size_t j = 0; j < 4; ++j) {
            const CMat4 m = cfg.with_feedback ? us[j] * k.ops[j] : k.ops[j];
            next = next + m * state * dagger(m);
        }
        state = next;
    }
    return state;
}

namespace closed_form {

CMat4 feedback_state_dephased(double eta, Complex q, const FeedbackScheme& s) {
    const double e = eta;
    const double bu = s.u_params.beta;
    const double bv = s.v_params.beta;
    const double au = s.u_params.alpha;
    const double av = s.v_params.alpha;
    const double gu = s.u_params.gamma;

    const double cu2 = std::cos(bu / 2.0) * std::cos(bu / 2.0);
    const double su2 = std::sin(bu / 2.0) * std::sin(bu / 2.0);
    const double cv2 = std::cos(bv / 2.0) * std::cos(bv / 2.0);
    const double sv2 = std::sin(bv / 2.0) * std::sin(bv / 2.0);
    const double Cu = std::cos(bu), Su = std::sin(bu);
    const double Cv = std::cos(bv), Sv = std::sin(bv);

    const Complex qg = q * expi(-2.0 * gu);
    const double re_q = qg.real();
    const double im_q = qg.imag();
    const double w = 1.0 + e * e - 2.0 * e * re_q;
    const Complex i2e_im(0.0, 2.0 * e * im_q);

    CMat4 m;
    m(0, 0) = (e * e * (1.0 + Cu) * (1.0 + Cu) + 4.0 * (1.0 - e) * (1.0 - e) * sv2 * sv2 +
               4.0 * su2 * su2 + 8.0 * (1.0 - e) * e * cu2 * sv2 +
               4.0 * e * (1.0 + Cu) * re_q * su2) / 8.0;
    m(3, 3) = ((1.0 - e) * (1.0 - e) * (1.0 + Cv) * (1.0 + Cv) + (1.0 + Cu) * (1.0 + Cu) +
               8.0 * e * (1.0 - e) * cv2 * su2 + 4.0 * e * e * su2 * su2 +
               4.0 * e * (1.0 + Cu) * re_q * su2) / 8.0;
    m(1, 1) = (4.0 * (1.0 - e) * e * cu2 * cv2 + w * Su * Su +
               2.0 * (1.0 - e) * (1.0 - e * Cu + (1.0 - e) * Cv) * sv2) / 8.0;
    m(2, 2) = m(1, 1);
    m(1, 2) = (w * Su * Su -
               (1.0 - e) * Sv * (2.0 * e * std::cos(au - av) * Su - (1.0 - e) * Sv)) / 8.0;
    m(0, 1) = -(expi(-au) * Su * ((1.0 - e) * (1.0 + e * Cv) - w * Cu + i2e_im) +
                expi(-av) * ((1.0 - e) * (1.0 + e * Cu - (1.0 - e) * Cv) * Sv)) / 8.0;
    m(0, 2) = m(0, 1);
    m(1, 3) = -(expi(-av) * ((1.0 - e) * Sv * ((1.0 - e) * Cv + 1.0 - e * Cu)) +
                expi(-au) * Su * ((1.0 - e) * (1.0 - e * Cv) - i2e_im + w * Cu)) / 8.0;
    m(2, 3) = m(1, 3);
    m(0, 3) = expi(-2.0 * (au + gu)) *
              (e * q * (1.0 + Cu) * (1.0 + Cu) +
               4.0 * e * std::conj(q) * expi(4.0 * gu) * su2 * su2 +
               2.0 * expi(2.0 * gu) * (1.0 + e * e) * (1.0 + Cu) * su2 +
               2.0 * expi(2.0 * (au - av + gu)) * (1.0 - e) * (1.0 - e) * (1.0 + Cv) * sv2 -
               2.0 * expi(au - av + 2.0 * gu) * e * (1.0 - e) * Su * Sv) / 8.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
    return m;
}

CMat4 feedback_state(double eta, const FeedbackScheme& s) {
    return feedback_state_dephased(eta, 1.0, s);
}

CMat4 optimal_feedback_state_dephased(double eta, Complex q, double zeta_u) {
    CMat4 m;
    m(0, 0) = m(3, 3) = 0.5;
    m(0, 3) = 0.5 * q * eta * expi(-2.0 * zeta_u);
    m(3, 0) = std::conj(m(0, 3));
    return m;
}

CMat4 optimal_feedback_state(double eta, double zeta_u) {
    return optimal_feedback_state_dephased(eta, 1.0, zeta_u);
}

CMat4 repeated_damped_bell(double eta, int n) {
    if (n < 1) throw DomainError("repeated_damped_bell: n must be >= 1");
    const double en = std::pow(eta, n);
    CMat4 m;
    m(0, 0) = 0.5 * en * en;
    m(1, 1) = 0.5 * en * (1.0 - en);
    m(2, 2) = 0.5 * en * (1.0 - en);
    m(3, 3) = 1.0 - 0.5 * en * (2.0 - en);  // (en/2)(2/en - (2 - en)), safe at eta = 0
    m(0, 3) = m(3, 0) = 0.5 * en;
    return m;
}

CMat4 repeated_feedback_state(double eta, int n, double zeta_u) {
    if (n < 1) throw DomainError("repeated_feedback_state: n must be >= 1");
    CMat4 m;
    m(0, 0) = m(3, 3) = 0.5;
    m(0, 3) = 0.5 * std::pow(eta, n) * expi(-2.0 * n * zeta_u);
    m(3, 0) = std::conj(m(0, 3));
    return m;
}

double repeat_concurrence(double eta, int n, bool with_feedback) {
    if (n < 1) throw DomainError("repeat_concurrence: n must be >= 1");
    [[maybe_unused]] DampingChannel check(eta);
    const double en = std::pow(eta, n);
    if (with_feedback) return en;
    const double w = (en - 2.0) * en + 2.0;
    const double rw = std::sqrt(w);
    return 0.5 * en * (std::sqrt(w + 1.0 + 2.0 * rw) - std::sqrt(w + 1.0 - 2.0 * rw) -
                       2.0 * (1.0 - en));
}

}  // namespace closed_form

}  // namespace qfb
