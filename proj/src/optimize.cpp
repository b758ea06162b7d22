#include "qfb/optimize.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "qfb/errors.hpp"

namespace qfb {

namespace {

constexpr double pi = 3.141592653589793238462643383279;

// cos/sin of x*pi, exact at integer and half-integer x.
double cos_pi(double x) {
    double r = std::fmod(x, 2.0);
    if (r < 0.0) r += 2.0;
    if (r == 0.0) return 1.0;
    if (r == 0.5 || r == 1.5) return 0.0;
    if (r == 1.0) return -1.0;
    return std::cos(r * pi);
}

double sin_pi(double x) {
    double r = std::fmod(x, 2.0);
    if (r < 0.0) r += 2.0;
    if (r == 0.0 || r == 1.0) return 0.0;
    if (r == 0.5) return 1.0;
    if (r == 1.5) return -1.0;
    return std::sin(r * pi);
}

std::vector<double> angle_grid(int n) {
    if (n < 1) throw DomainError("sweep: angle_grid_size must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(n));
    if (n == 1) return out;
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = 2.0 * pi * i / (n - 1);
    return out;
}

double purity_of_valid(const CMat4& rho) {
    const CMat2 ra = partial_trace_B(rho);
    return trace(ra * ra).real();
}

double objective_value(Objective obj, const CMat4& state) {
    return obj == Objective::purity ? purity_of_valid(state)
                                    : concurrence_unchecked(state).value;
}

bool improves(Objective obj, double candidate, double incumbent) {
    return obj == Objective::purity ? candidate < incumbent : candidate > incumbent;
}

// sum_j (m0 m0^H + q m0 m3^H + q* m3 m0^H + m3 m3^H)/2 over branch operators,
// where m0/m3 are the first/last columns of M_j: the image of the
// dephased-Bell state without forming the 4x4 products.
CMat4 branch_image_of_dephased_bell(const std::array<CMat4, 4>& m, Complex q) {
    CMat4 out;
    for (const CMat4& mj : m) {
        for (int r = 0; r < 4; ++r) {
            const Complex a0 = mj(r, 0);
            const Complex a3 = mj(r, 3);
            for (int c = 0; c < 4; ++c) {
                const Complex b0 = std::conj(mj(c, 0));
                const Complex b3 = std::conj(mj(c, 3));
                out(r, c) += 0.5 * (a0 * b0 + q * a0 * b3 + std::conj(q) * a3 * b0 + a3 * b3);
            }
        }
    }
    return out;
}

struct BestAcc {
    double value = 0.0;
    std::array<double, 3> params{};
    std::size_t ties = 0;
    bool set = false;

    void offer(Objective obj, double v, const std::array<double, 3>& p) {
        if (!set || improves(obj, v, value)) {
            value = v;
            params = p;
            ties = 1;
            set = true;
        } else if (v == value) {
            ++ties;
        }
    }

    void merge(Objective obj, const BestAcc& later) {
        if (!later.set) return;
        if (!set || improves(obj, later.value, value)) {
            *this = later;
        } else if (later.value == value) {
            ties += later.ties;
        }
    }
};

void validate_common(const SweepConfig& cfg) {
    if (cfg.eta_grid.empty()) throw DomainError("sweep: eta_grid must not be empty");
    for (double e : cfg.eta_grid)
        if (!(e >= 0.0 && e <= 1.0)) throw DomainError("sweep: eta values must be in [0, 1]");
    for (double q : cfg.q_grid)
        if (!(q >= 0.0 && q <= 1.0)) throw DomainError("sweep: |q| values must be in [0, 1]");
    if (cfg.workers < 1) throw DomainError("sweep: workers must be >= 1");
}

void run_tasks(int workers, std::size_t ntasks, const std::function<void(std::size_t)>& task) {
    if (workers <= 1 || ntasks <= 1) {
        for (std::size_t t = 0; t < ntasks; ++t) task(t);
        return;
    }
    std::vector<std::thread> pool;
    const auto w = static_cast<std::size_t>(workers);
    pool.reserve(w);
    for (std::size_t wi = 0; wi < w; ++wi) {
        pool.emplace_back([&, wi] {
            for (std::size_t t = wi; t < ntasks; t += w) task(t);
        });
    }
    for (std::thread& th : pool) th.join();
}

}  // namespace

SweepConfig SweepConfig::reference_grids() {
    SweepConfig cfg;
    for (int i = 0; i <= 10; ++i) cfg.eta_grid.push_back(i / 10.0);
    for (int i = 0; i <= 10; ++i) cfg.r_alpha_grid.push_back(i / 10.0);
    cfg.angle_grid_size = 61;
    return cfg;
}

std::array<double, 3> stationary_residuals(const AngleCombos& c) {
    return {(std::cos(c.xi) - 1.0) * std::sin(c.theta),
            (std::cos(c.theta) - std::cos(c.phi)) * std::sin(c.xi),
            (std::cos(c.xi) + 1.0) * std::sin(c.phi)};
}

std::array<double, 3> stationary_residuals_pi(double theta_pi, double phi_pi, double xi_pi) {
    return {(cos_pi(xi_pi) - 1.0) * sin_pi(theta_pi),
            (cos_pi(theta_pi) - cos_pi(phi_pi)) * sin_pi(xi_pi),
            (cos_pi(xi_pi) + 1.0) * sin_pi(phi_pi)};
}

std::vector<StationarySolution> classify_stationary_sets() {
    using Sol = StationarySolution;
    std::vector<Sol> sols = {
        // first family: purity unchanged by feedback
        {0.0, std::nullopt, -1.0, StationaryFamilyKind::no_improvement},
        {0.0, std::nullopt, 1.0, StationaryFamilyKind::no_improvement},
        {0.0, 0.0, std::nullopt, StationaryFamilyKind::no_improvement},
        {std::nullopt, 0.0, 0.0, StationaryFamilyKind::no_improvement},
        // second family: purity pinned at the 1/2 floor
        {-1.0, -1.0, std::nullopt, StationaryFamilyKind::optimal_floor},
        {-1.0, 1.0, std::nullopt, StationaryFamilyKind::optimal_floor},
        {1.0, -1.0, std::nullopt, StationaryFamilyKind::optimal_floor},
        {1.0, 1.0, std::nullopt, StationaryFamilyKind::optimal_floor},
    };

    for (Sol& sol : sols) {
        StationaryFamilyKind measured{};
        bool decided = false;
        for (int fa = 0; fa < 9; ++fa) {
            const double free_pi = 0.25 * fa;  // free combo sampled over [0, 2pi)
            const double th = sol.theta_pi.value_or(free_pi);
            const double ph = sol.phi_pi.value_or(free_pi);
            const double xi = sol.xi_pi.value_or(free_pi);

            const auto res = stationary_residuals_pi(th, ph, xi);
            if (res[0] != 0.0 || res[1] != 0.0 || res[2] != 0.0)
                throw std::logic_error("stationary family member has nonzero residual");

            for (int ei = 0; ei <= 10; ++ei) {
                const double eta = ei / 10.0;
                const AngleCombos c{xi * pi, th * pi, ph * pi, 0.0, 0.0};
                const double p = closed_form::purity_feedback(eta, c);
                const bool at_floor = std::abs(p - 0.5) < 1e-12;
                const bool unchanged = std::abs(p - closed_form::purity_damped(eta)) < 1e-12;
                if (!at_floor && !unchanged)
                    throw std::logic_error("stationary purity matches neither family value");
                if (at_floor && unchanged) continue;  // eta = 1: both coincide
                const StationaryFamilyKind kind = at_floor ? StationaryFamilyKind::optimal_floor
                                                           : StationaryFamilyKind::no_improvement;
                if (!decided) {
                    measured = kind;
                    decided = true;
                } else if (measured != kind) {
                    throw std::logic_error("inconsistent stationary family labeling");
                }
            }
        }
        if (decided) sol.label = measured;
    }
    return sols;
}

SweepResult sweep_canonical(const SweepConfig& cfg) {
    validate_common(cfg);
    const std::vector<double> angles = angle_grid(cfg.angle_grid_size);
    const std::size_t neta = cfg.eta_grid.size();
    const std::size_t nang = angles.size();

    SweepResult result;
    result.param_names = {"beta_u", "beta_v", ""};
    result.has_q = false;

    const std::size_t ntasks = neta * nang;  // one task per (eta, beta_u)
    const std::size_t block = nang;
    if (cfg.record_points) result.records.resize(ntasks * block);
    std::vector<BestAcc> partial(ntasks);

    run_tasks(cfg.workers, ntasks, [&](std::size_t t) {
        const std::size_t ie = t / nang;
        const std::size_t ibu = t % nang;
        const double eta = cfg.eta_grid[ie];
        const double bu = angles[ibu];
        const KrausSet k = product_kraus(DampingChannel(eta));
        for (std::size_t ibv = 0; ibv < nang; ++ibv) {
            const double bv = angles[ibv];
            const FeedbackScheme s{{0.0, bu, 0.0}, {0.0, bv, 0.0}};
            const std::array<CMat4, 4> us = feedback_unitaries(s);
            std::array<CMat4, 4> m;
            for (std::size_t j = 0; j < 4; ++j) m[j] = us[j] * k.ops[j];
            const CMat4 state = branch_image_of_dephased_bell(m, 1.0);
            const double value = objective_value(cfg.objective, state);
            if (cfg.record_points)
                result.records[t * block + ibv] = {eta, 1.0, {bu, bv, 0.0}, value};
            partial[t].offer(cfg.objective, value, {bu, bv, 0.0});
        }
    });

    for (std::size_t ie = 0; ie < neta; ++ie) {
        BestAcc acc;
        for (std::size_t ibu = 0; ibu < nang; ++ibu)
            acc.merge(cfg.objective, partial[ie * nang + ibu]);
        result.best.push_back({cfg.eta_grid[ie], 1.0, acc.params, acc.value, acc.ties});
    }
    return result;
}

SweepResult sweep_remix(const SweepConfig& cfg) {
    validate_common(cfg);
    if (!cfg.fix_optimal_betas)
        throw DomainError("sweep_remix: requires the fixed beta_u = 0, beta_v = pi conditions");
    if (cfg.r_alpha_grid.empty()) throw DomainError("sweep_remix: r_alpha_grid must not be empty");
    for (double r : cfg.r_alpha_grid)
        if (!(r >= 0.0 && r <= 1.0)) throw DomainError("sweep_remix: r_alpha must be in [0, 1]");

    const std::vector<double> angles = angle_grid(cfg.angle_grid_size);
    const bool has_q = !cfg.q_grid.empty();
    const std::vector<double> qs = has_q ? cfg.q_grid : std::vector<double>{1.0};

    const std::size_t neta = cfg.eta_grid.size();
    const std::size_t nr = cfg.r_alpha_grid.size();
    const std::size_t nth = angles.size();
    const std::size_t nxv = angles.size();
    const std::size_t nq = qs.size();

    SweepResult result;
    result.param_names = {"r_alpha", "theta_alpha_beta", "xi_v"};
    result.has_q = has_q;

    const std::size_t ntasks = neta * nr * nth;  // one task per (eta, r_alpha, theta_ab)
    const std::size_t block = nxv * nq;
    if (cfg.record_points) result.records.resize(ntasks * block);
    std::vector<BestAcc> partial(ntasks * nq);

    run_tasks(cfg.workers, ntasks, [&](std::size_t t) {
        const std::size_t ie = t / (nr * nth);
        const std::size_t ir = (t / nth) % nr;
        const std::size_t ith = t % nth;
        const double eta = cfg.eta_grid[ie];
        const double r_alpha = cfg.r_alpha_grid[ir];
        const double theta_ab = angles[ith];

        const KrausSet k = product_kraus(DampingChannel(eta));
        const KrausSet kt =
            remix_kraus(k, RemixParams(r_alpha, theta_ab, 0.0, 1.0, 0.0, 0.0));
        for (std::size_t ixv = 0; ixv < nxv; ++ixv) {
            const double xi_v = angles[ixv];
            const double zeta_u = pi + xi_v + 2.0 * theta_ab;
            const FeedbackScheme s{{zeta_u, 0.0, 0.0}, {xi_v, pi, 0.0}};
            const std::array<CMat4, 4> us = feedback_unitaries(s);
            std::array<CMat4, 4> m;
            for (std::size_t j = 0; j < 4; ++j) m[j] = us[j] * kt.ops[j];
            for (std::size_t iq = 0; iq < nq; ++iq) {
                const CMat4 state = branch_image_of_dephased_bell(m, qs[iq]);
                const double value = objective_value(cfg.objective, state);
                if (cfg.record_points)
                    result.records[t * block + ixv * nq + iq] =
                        {eta, qs[iq], {r_alpha, theta_ab, xi_v}, value};
                partial[t * nq + iq].offer(cfg.objective, value, {r_alpha, theta_ab, xi_v});
            }
        }
    });

    for (std::size_t ie = 0; ie < neta; ++ie) {
        for (std::size_t iq = 0; iq < nq; ++iq) {
            BestAcc acc;
            for (std::size_t sub = 0; sub < nr * nth; ++sub)
                acc.merge(cfg.objective, partial[(ie * nr * nth + sub) * nq + iq]);
            result.best.push_back({cfg.eta_grid[ie], qs[iq], acc.params, acc.value, acc.ties});
        }
    }
    return result;
}

RefineResult refine(const std::vector<double>& start,
                    const std::function<double(const std::vector<double>&)>& objective,
                    double step0, double tol,
                    const std::vector<double>& lower, const std::vector<double>& upper) {
    if (step0 <= 0.0 || tol <= 0.0) throw DomainError("refine: step0 and tol must be positive");
    if (!lower.empty() && lower.size() != start.size())
        throw DomainError("refine: bounds must match the parameter count");
    if (!upper.empty() && upper.size() != start.size())
        throw DomainError("refine: bounds must match the parameter count");

    const auto clamp_dim = [&](double v, std::size_t d) {
        if (!lower.empty()) v = std::max(v, lower[d]);
        if (!upper.empty()) v = std::min(v, upper[d]);
        return v;
    };

    RefineResult out{start, objective(start), 1};
    double step = step0;
    while (step >= tol) {
        bool improved = false;
        for (std::size_t d = 0; d < out.params.size(); ++d) {
            for (double dir : {+1.0, -1.0}) {
                std::vector<double> probe = out.params;
                probe[d] = clamp_dim(probe[d] + dir * step, d);
                if (probe[d] == out.params[d]) continue;
                const double v = objective(probe);
                ++out.evaluations;
                if (v > out.value) {
                    out.value = v;
                    out.params = std::move(probe);
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return out;
}

}  // namespace qfb
