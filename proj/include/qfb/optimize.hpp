#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qfb/feedback.hpp"
#include "qfb/measures.hpp"

namespace qfb {

enum class Objective { concurrence, purity };

/// Grid specification for the sweeps. The angle grid is [0, 2pi] inclusive
/// with angle_grid_size points (61 reproduces the pi/30 step).
struct SweepConfig {
    std::vector<double> eta_grid;
    std::vector<double> q_grid;        // |q| values; empty means Bell input only
    std::vector<double> r_alpha_grid;  // used by sweep_remix
    int angle_grid_size = 61;
    bool fix_optimal_betas = true;     // beta_u = 0, beta_v = pi (sweep_remix precondition)
    Objective objective = Objective::concurrence;
    int workers = 1;
    bool record_points = true;         // keep the full per-point table

    /// 11 values step 0.1 for eta and r_alpha, 61 angle values step pi/30;
    /// callers opt into the matching |q| grid by copying eta_grid.
    static SweepConfig reference_grids();
};

struct SweepRecord {
    double eta;
    double q_mag;
    std::array<double, 3> params;
    double value;
};

struct SweepBest {
    double eta;
    double q_mag;
    std::array<double, 3> params;  // lexicographically smallest among exact ties
    double value;
    std::size_t tie_count;         // grid points attaining exactly this value
};

struct SweepResult {
    std::array<std::string, 3> param_names;
    bool has_q = false;
    std::vector<SweepRecord> records;  // in deterministic grid order; empty if !record_points
    std::vector<SweepBest> best;       // one per (eta) or per (eta, |q|), in grid order
};

/// [(cos xi - 1) sin theta, (cos theta - cos phi) sin xi, (cos xi + 1) sin phi]
std::array<double, 3> stationary_residuals(const AngleCombos& c);

/// Same residuals with angles in units of pi; integer and half-integer
/// multiples use exact trigonometric values, so the printed solution
/// families yield exact zeros rather than sin(pi) dust.
std::array<double, 3> stationary_residuals_pi(double theta_pi, double phi_pi, double xi_pi);

enum class StationaryFamilyKind {
    no_improvement,  // purity equals the no-feedback value
    optimal_floor,   // purity pinned at 1/2 for every eta
};

/// A stationary set of the feedback purity: two of {theta, phi, xi} pinned
/// (stored in units of pi), the remaining combination free.
struct StationarySolution {
    std::optional<double> theta_pi;
    std::optional<double> phi_pi;
    std::optional<double> xi_pi;
    StationaryFamilyKind label;
};

/// Enumerates both printed families, checks their residuals vanish exactly,
/// and labels each member by evaluating the closed-form purity on an eta grid.
std::vector<StationarySolution> classify_stationary_sets();

/// Exhaustive sweep of the actuation angles (beta_u, beta_v), phases fixed
/// to zero, against the canonical Kraus set on the Bell input. Best is the
/// maximum for concurrence and the minimum for purity.
SweepResult sweep_canonical(const SweepConfig& cfg);

/// The Kraus-representation sweep: for each eta (and each |q| if given),
/// optimize over (r_alpha, theta_alpha_beta, xi_v) with beta_u = 0,
/// beta_v = pi and zeta_u tied to pi + xi_v + 2 theta_alpha_beta.
SweepResult sweep_remix(const SweepConfig& cfg);

struct RefineResult {
    std::vector<double> params;
    double value;
    int evaluations;
};

/// Coordinate-wise pattern search maximizing `objective` from `start`,
/// halving the step until it drops below tol. Never returns a value worse
/// than the start. Optional box bounds clamp the probes.
RefineResult refine(const std::vector<double>& start,
                    const std::function<double(const std::vector<double>&)>& objective,
                    double step0, double tol,
                    const std::vector<double>& lower = {},
                    const std::vector<double>& upper = {});

}  // namespace qfb
