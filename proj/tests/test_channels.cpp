#include "qfb/channels.hpp"

#include <cmath>

#include "doctest.h"
#include "qfb/errors.hpp"
#include "qfb/measures.hpp"
#include "test_helpers.hpp"

using namespace qfb;
using test::Rng;

TEST_CASE("local_kraus endpoints and completeness") {
    {
        auto [e1, e2] = local_kraus(DampingChannel(1.0));
        CHECK(max_abs_diff(e1, CMat2::identity()) == 0.0);
        CHECK(max_abs(e2) == 0.0);
    }
    {
        auto [e1, e2] = local_kraus(DampingChannel(0.0));
        CMat2 ground;  // |0><0|
        ground(1, 1) = 1.0;
        CHECK(max_abs_diff(e1, ground) == 0.0);
        CMat2 lower;  // |0><1|
        lower(1, 0) = 1.0;
        CHECK(max_abs_diff(e2, lower) == 0.0);
    }
    {
        auto [e1, e2] = local_kraus(DampingChannel(0.25));
        CHECK(e1(0, 0) == Complex(0.5));
        CHECK(e1(1, 1) == Complex(1.0));
        CHECK(e1(0, 1) == Complex(0.0));
        CHECK(std::abs(e2(1, 0) - std::sqrt(0.75)) < 1e-16);
    }
    Rng rng;
    for (int t = 0; t < 50; ++t) {
        auto [e1, e2] = local_kraus(DampingChannel(rng.uniform(0.0, 1.0)));
        const CMat2 sum = dagger(e1) * e1 + dagger(e2) * e2;
        CHECK(max_abs_diff(sum, CMat2::identity()) < 1e-14);
    }
    CHECK_THROWS_AS(DampingChannel(-0.1), DomainError);
    CHECK_THROWS_AS(DampingChannel(1.1), DomainError);
    CHECK_THROWS_AS(DampingChannel(std::nan("")), DomainError);
}

TEST_CASE("product_kraus structure and completeness") {
    {
        const KrausSet k = product_kraus(DampingChannel(1.0));
        CHECK(max_abs_diff(k.ops[0], CMat4::identity()) == 0.0);
        for (int j = 1; j < 4; ++j) CHECK(max_abs(k.ops[j]) == 0.0);
    }
    Rng rng;
    for (int t = 0; t < 50; ++t)
        CHECK(completeness_residual(product_kraus(DampingChannel(rng.uniform(0.0, 1.0)))) <
              1e-13);
    {
        // K4 maps |11> to |00> with weight 1 - eta
        const KrausSet k = product_kraus(DampingChannel(0.5));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(std::abs(k.ops[3](i, j) -
                               ((i == 3 && j == 0) ? Complex(0.5) : Complex(0.0))) < 1e-15);
    }
}

TEST_CASE("apply_channel endpoints and the damped Bell closed form") {
    const CMat4 bell = bell_state();
    CHECK(max_abs_diff(apply_channel(product_kraus(DampingChannel(1.0)), bell), bell) == 0.0);

    CMat4 ground;
    ground(3, 3) = 1.0;
    CHECK(max_abs_diff(apply_channel(product_kraus(DampingChannel(0.0)), bell), ground) <
          1e-16);

    for (int i = 0; i <= 20; ++i) {
        const double eta = i / 20.0;
        CHECK(max_abs_diff(apply_channel(product_kraus(DampingChannel(eta)), bell),
                           closed_form::damped_bell(eta)) < 1e-12);
    }
}

TEST_CASE("apply_channel rejects invalid states") {
    const KrausSet k = product_kraus(DampingChannel(0.5));
    CMat4 not_normalized = bell_state();
    not_normalized(0, 0) = 0.7;
    CHECK_THROWS_AS(apply_channel(k, not_normalized), InvalidStateError);

    CMat4 not_hermitian = bell_state();
    not_hermitian(0, 3) = Complex(0.5, 0.3);
    CHECK_THROWS_AS(apply_channel(k, not_hermitian), InvalidStateError);

    CMat4 indefinite;
    indefinite(0, 0) = 1.2;
    indefinite(3, 3) = -0.2;
    CHECK_THROWS_AS(apply_channel(k, indefinite), InvalidStateError);
}

TEST_CASE("bell_state basics") {
    const CMat4 bell = bell_state();
    CHECK(trace(bell) == Complex(1.0));
    CHECK(concurrence(bell).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(subsystem_purity(bell) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("dephased_bell family") {
    CHECK(max_abs_diff(dephased_bell(Complex(1.0)), bell_state()) == 0.0);

    const CMat4 mix = dephased_bell(Complex(0.0));
    CHECK(mix(0, 0) == Complex(0.5));
    CHECK(mix(3, 3) == Complex(0.5));
    CHECK(max_abs(mix) == 0.5);
    CHECK(concurrence(mix).value == 0.0);

    // 2x2 corner-block eigenvalues (1 +- |q|)/2, zeros elsewhere
    const Complex q(0.0, 0.6);
    const EigenResult eig = eigenvalues4(dephased_bell(q));
    REQUIRE(eig.converged);
    CHECK(std::abs(eig.values[0] - 0.8) < 1e-12);
    CHECK(std::abs(eig.values[1] - 0.2) < 1e-12);
    CHECK(std::abs(eig.values[2]) < 1e-12);
    CHECK(std::abs(eig.values[3]) < 1e-12);

    CHECK_THROWS_AS(dephased_bell(Complex(0.9, 0.9)), DomainError);
}

TEST_CASE("dephased-Bell closed form under damping") {
    Rng rng;
    for (int t = 0; t < 50; ++t) {
        const double eta = rng.uniform(0.0, 1.0);
        const Complex q = rng.q();
        CHECK(max_abs_diff(apply_channel(product_kraus(DampingChannel(eta)), dephased_bell(q)),
                           closed_form::damped_dephased_bell(eta, q)) < 1e-12);
    }
    for (int i = 0; i <= 10; ++i) {
        const double eta = i / 10.0;
        CHECK(max_abs_diff(closed_form::damped_dephased_bell(eta, 1.0),
                           closed_form::damped_bell(eta)) == 0.0);
    }
    CHECK(max_abs_diff(closed_form::damped_bell(1.0), bell_state()) == 0.0);
}

TEST_CASE("remix_kraus: identity, completeness, explicit combination lines") {
    Rng rng;
    const KrausSet k = product_kraus(DampingChannel(0.35));
    {
        const KrausSet same = remix_kraus(k, RemixParams::identity());
        for (int j = 0; j < 4; ++j) CHECK(max_abs_diff(same.ops[j], k.ops[j]) == 0.0);
    }

    for (int t = 0; t < 50; ++t) {
        const RemixParams p = rng.remix_params();
        const KrausSet kt = remix_kraus(k, p);
        CHECK(completeness_residual(kt) < 1e-12);

        // pin each mixed operator against the explicit coefficient lines
        const Complex a = p.alpha(), b = p.beta(), ap = p.alpha_p(), bp = p.beta_p();
        const auto lincomb = [&](Complex c1, Complex c2, Complex c3, Complex c4) {
            return c1 * k.ops[0] + c2 * k.ops[1] + c3 * k.ops[2] + c4 * k.ops[3];
        };
        CHECK(max_abs_diff(kt.ops[0], lincomb(a * ap, a * bp, ap * b, b * bp)) < 1e-15);
        CHECK(max_abs_diff(kt.ops[1], lincomb(-a * std::conj(bp), a * std::conj(ap),
                                              -b * std::conj(bp), b * std::conj(ap))) < 1e-15);
        CHECK(max_abs_diff(kt.ops[2], lincomb(-ap * std::conj(b), -bp * std::conj(b),
                                              ap * std::conj(a), bp * std::conj(a))) < 1e-15);
        CHECK(max_abs_diff(kt.ops[3],
                           lincomb(std::conj(b) * std::conj(bp), -std::conj(b) * std::conj(ap),
                                   -std::conj(a) * std::conj(bp),
                                   std::conj(a) * std::conj(ap))) < 1e-15);
    }
}

TEST_CASE("remixing never changes the unconditioned channel") {
    Rng rng;
    for (int t = 0; t < 50; ++t) {
        const double eta = rng.uniform(0.0, 1.0);
        const KrausSet k = product_kraus(DampingChannel(eta));
        const KrausSet kt = remix_kraus(k, rng.remix_params());
        const CMat4 rho = rng.state();
        CHECK(max_abs_diff(apply_channel(kt, rho), apply_channel(k, rho)) < 1e-12);
    }
}

TEST_CASE("is_canonical: direct Gram-matrix oracle") {
    const auto gram_offdiag = [](const KrausSet& k) {
        double worst = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j)
                    worst = std::max(worst, std::abs(trace(dagger(k.ops[i]) * k.ops[j])));
        return worst;
    };

    const KrausSet k = product_kraus(DampingChannel(0.5));
    CHECK(gram_offdiag(k) == 0.0);
    CHECK(is_canonical(k, 1e-12));

    // generic mixing destroys the delta_ij structure: the Gram matrix of the
    // product set is diag((1+eta)^2, 1-eta^2, 1-eta^2, (1-eta)^2), not ~ I
    const RemixParams generic{0.6, 0.7, 1.1, 0.9, 0.3, 2.0};
    const KrausSet kt = remix_kraus(k, generic);
    CHECK(gram_offdiag(kt) > 0.1);
    CHECK_FALSE(is_canonical(kt, 1e-12));

    // at eta = 0 the Gram matrix is the identity and mixing preserves it
    const KrausSet kt0 = remix_kraus(product_kraus(DampingChannel(0.0)), generic);
    CHECK(gram_offdiag(kt0) < 1e-15);
    CHECK(is_canonical(kt0, 1e-12));

    // hand-mixed set {K1+K2, K1-K2, sqrt2 K3, sqrt2 K4}/sqrt2
    const Complex inv_sqrt2 = 1.0 / std::sqrt(2.0);
    KrausSet mixed{{{inv_sqrt2 * (k.ops[0] + k.ops[1]), inv_sqrt2 * (k.ops[0] - k.ops[1]),
                     k.ops[2], k.ops[3]}}};
    CHECK(completeness_residual(mixed) < 1e-15);
    const double expected_offdiag = std::abs(
        0.5 * (trace(dagger(k.ops[0]) * k.ops[0]) - trace(dagger(k.ops[1]) * k.ops[1])));
    CHECK(gram_offdiag(mixed) == doctest::Approx(expected_offdiag).epsilon(1e-12));
    CHECK_FALSE(is_canonical(mixed, 1e-12));
}

TEST_CASE("damping composes multiplicatively on the dephased-Bell family") {
    Rng rng;
    for (int t = 0; t < 40; ++t) {
        const double e1 = rng.uniform(0.0, 1.0), e2 = rng.uniform(0.0, 1.0);
        const CMat4 rho = dephased_bell(rng.q());
        const CMat4 chained =
            apply_channel(product_kraus(DampingChannel(e1)),
                          apply_channel(product_kraus(DampingChannel(e2)), rho));
        CHECK(max_abs_diff(chained,
                           apply_channel(product_kraus(DampingChannel(e1 * e2)), rho)) < 1e-12);
    }
}

TEST_CASE("remix parameter validation") {
    CHECK_THROWS_AS(RemixParams(1.2, 0.0, 0.0, 1.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(RemixParams(0.5, 0.0, 0.0, -0.1, 0.0, 0.0), DomainError);
    const RemixParams p{0.6, 0.25, 1.5, 0.8, 0.0, 0.0};
    CHECK(std::abs(std::norm(p.alpha()) + std::norm(p.beta()) - 1.0) < 1e-15);
    CHECK(std::abs(std::norm(p.alpha_p()) + std::norm(p.beta_p()) - 1.0) < 1e-15);
    CHECK(p.theta_ab() == doctest::Approx(0.25 - 1.5));
}
