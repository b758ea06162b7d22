#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qfb/optimize.hpp"

namespace qfb {

enum class Command { curves, sweep, repeat, verify };
enum class OutputFormat { csv, json };

inline constexpr int exit_ok = 0;
inline constexpr int exit_verify_failure = 1;
inline constexpr int exit_bad_args = 2;
inline constexpr int exit_io_error = 3;

struct RunConfig {
    Command command = Command::curves;
    double eta_min = 0.0;
    double eta_max = 1.0;
    int eta_steps = 101;
    bool eta_steps_set = false;  // sweep defaults to the 11-point grid when unset
    int n_max = 6;
    Complex q{1.0, 0.0};
    bool q_set = false;  // sweep adds the |q| key only when set
    std::string output_path;  // empty writes to stdout
    OutputFormat format = OutputFormat::csv;
    int workers = 1;
    bool corrupt_tolerance = false;  // verify self-test mode: force a failure

    void validate() const;  // throws DomainError
    std::vector<double> eta_grid() const;
};

enum class Quantity { purity_nofb, purity_fb, conc_nofb, conc_fb };
enum class Source { simulated, closed_form };

struct CurveRecord {
    double eta;
    int n;
    Quantity quantity;
    Source source;
    double value;
};

const char* to_string(Quantity q);
const char* to_string(Source s);

/// Shortest representation that round-trips the exact double.
std::string format_double(double v);

/// Purity and concurrence vs eta, with and without the optimal feedback,
/// simulated and closed-form, on the dephased-Bell input cfg.q.
std::vector<CurveRecord> curve_records(const RunConfig& cfg);

/// Concurrence vs eta for n = 1..n_max map applications (Bell input).
std::vector<CurveRecord> repeat_records(const RunConfig& cfg);

void write_curve_records(std::ostream& os, const std::vector<CurveRecord>& records,
                         OutputFormat format);
void write_sweep_result(std::ostream& os, const SweepResult& result, OutputFormat format);

struct VerifyCheck {
    std::string name;
    bool passed;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    std::vector<std::string> known_issues;
    int passed() const;
    int failed() const;
};

/// The cross-module invariant suite (fixed seed). corrupt_tolerance
/// tightens one tolerance to an impossible value to prove the failure path.
VerifyReport run_verification(bool corrupt_tolerance = false);

int cmd_curves(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_repeat(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int run_command(const RunConfig& cfg);

}  // namespace qfb
