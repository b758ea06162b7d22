#include "qfb/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qfb/errors.hpp"

namespace qfb {

namespace {

// Y (x) Y in basis B; real entries on the anti-diagonal.
const CMat4& spin_flip_operator() {
    static const CMat4 yy = [] {
        CMat2 y;
        y(0, 1) = Complex(0.0, -1.0);
        y(1, 0) = Complex(0.0, 1.0);
        return tensor(y, y);
    }();
    return yy;
}

Complex expi(double x) { return {std::cos(x), std::sin(x)}; }

}  // namespace

double subsystem_purity(const CMat4& rho) {
    require_valid_state(rho);
    const CMat2 ra = partial_trace_B(rho);
    return (trace(ra * ra)).real();
}

ConcurrenceBreakdown concurrence_unchecked(const CMat4& rho) {
    const CMat4& yy = spin_flip_operator();
    const CMat4 flipped = yy * conjugate(rho) * yy;
    const CMat4 prod = rho * flipped;

    // A spin-flip-orthogonal state (e.g. a pure product state) has
    // rho * rho~ = 0 exactly; what the product holds is then matmul dust,
    // which the sqrt below would amplify to ~1e-9. Spectrum is {0,0,0,0}.
    if (max_abs(prod) <=
        8.0 * std::numeric_limits<double>::epsilon() * max_abs(rho) * max_abs(flipped))
        return {};

    const EigenResult eig = eigenvalues4(prod);
    if (!eig.converged)
        throw NonConvergenceError("concurrence: eigensolver did not converge");

    ConcurrenceBreakdown out;
    for (std::size_t i = 0; i < 4; ++i) {
        const Complex v = eig.values[i];
        // The spectrum of rho * rho~ is real nonnegative for valid states;
        // anything beyond rounding dust means the input was not a state.
        if (std::abs(v.imag()) >= 1e-9)
            throw InvalidStateError("concurrence: complex eigenvalue beyond tolerance");
        if (v.real() < -1e-9)
            throw InvalidStateError("concurrence: negative eigenvalue beyond tolerance");
        out.lambdas[i] = std::sqrt(std::abs(v.real()));
    }
    std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
    const double raw = out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3];
    out.value = std::clamp(raw, 0.0, 1.0);
    return out;
}

ConcurrenceBreakdown concurrence(const CMat4& rho) {
    require_valid_state(rho);
    return concurrence_unchecked(rho);
}

double concurrence_x_state(const CMat4& rho) {
    constexpr double sparsity_tol = 1e-12;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && i + j != 3 && std::abs(rho(i, j)) > sparsity_tol)
                throw NotXStateError("concurrence_x_state: entry off the X pattern");

    const double inner = std::abs(rho(0, 3)) -
                         std::sqrt(std::abs(rho(1, 1).real() * rho(2, 2).real()));
    const double outer = std::abs(rho(1, 2)) -
                         std::sqrt(std::abs(rho(0, 0).real() * rho(3, 3).real()));
    return 2.0 * std::max({0.0, inner, outer});
}

namespace closed_form {

double purity_damped(double eta) {
    [[maybe_unused]] DampingChannel check(eta);
    return 0.5 * (2.0 - 2.0 * eta + eta * eta);
}

double purity_feedback(double eta, const AngleCombos& c) {
    [[maybe_unused]] DampingChannel check(eta);
    const double bracket = (1.0 - std::cos(c.xi)) * std::cos(c.theta) +
                           (1.0 + std::cos(c.xi)) * std::cos(c.phi);
    return 0.25 * (3.0 - eta * (2.0 - eta) + 0.5 * (1.0 - eta) * (1.0 - eta) * bracket);
}

PurityBreakdown purity_remixed(double eta, const EulerAngles& u, const EulerAngles& v,
                               const RemixParams& p) {
    [[maybe_unused]] DampingChannel check(eta);
    const double s = std::sqrt((1.0 - eta) * eta);
    const Complex ab = p.alpha() * std::conj(p.beta());
    const double bu = u.beta, bv = v.beta, gu = u.gamma, gv = v.gamma;
    const double xi = u.alpha - v.alpha;

    PurityBreakdown out;
    out.p1 = (1.0 - eta) * (std::cos(bu) + std::cos(bv)) +
             2.0 * s * std::sin(bu) * (ab * expi(-gu)).real() -
             2.0 * s * std::sin(bv) * (ab * expi(-gv)).real();
    out.p2 = (1.0 - eta) * std::sin(bv) + (1.0 - eta) * expi(-xi) * std::sin(bu) +
             std::conj(ab) * s * (1.0 - std::cos(bu)) * expi(-(xi - gu)) -
             ab * s * (1.0 + std::cos(bu)) * expi(-(xi + gu)) -
             std::conj(ab) * s * (1.0 - std::cos(bv)) * expi(gv) +
             ab * s * (1.0 + std::cos(bv)) * expi(-gv);
    out.value = (4.0 + out.p1 * out.p1 + std::norm(out.p2)) / 8.0;
    return out;
}

}  // namespace closed_form

}  // namespace qfb
