#include "qfb/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>

#include "json.hpp"
#include "qfb/errors.hpp"

namespace qfb {

using ordered_json = nlohmann::ordered_json;

void RunConfig::validate() const {
    if (!(eta_min >= 0.0 && eta_min <= 1.0) || !(eta_max >= 0.0 && eta_max <= 1.0))
        throw DomainError("eta bounds must be within [0, 1]");
    if (eta_min > eta_max) throw DomainError("eta-min must not exceed eta-max");
    if (eta_steps < 2) throw DomainError("eta-steps must be >= 2");
    if (n_max < 1) throw DomainError("n-max must be >= 1");
    if (workers < 1) throw DomainError("workers must be >= 1");
    if (!(std::abs(q) <= 1.0 + 1e-12)) throw DomainError("|q| must be <= 1");
}

std::vector<double> RunConfig::eta_grid() const {
    std::vector<double> grid(static_cast<std::size_t>(eta_steps));
    for (int i = 0; i < eta_steps; ++i)
        grid[static_cast<std::size_t>(i)] =
            eta_min + (eta_max - eta_min) * i / (eta_steps - 1);
    return grid;
}

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::purity_nofb: return "purity_nofb";
        case Quantity::purity_fb: return "purity_fb";
        case Quantity::conc_nofb: return "conc_nofb";
        case Quantity::conc_fb: return "conc_fb";
    }
    return "?";
}

const char* to_string(Source s) {
    return s == Source::simulated ? "simulated" : "closed_form";
}

std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return {buf, end};
}

std::vector<CurveRecord> curve_records(const RunConfig& cfg) {
    cfg.validate();
    std::vector<CurveRecord> out;
    const Complex q = cfg.q;
    const CMat4 rho0 = dephased_bell(q);
    for (double eta : cfg.eta_grid()) {
        const KrausSet k = product_kraus(DampingChannel(eta));
        const FeedbackScheme opt = optimal_scheme(0.0, 0.0);
        const CMat4 damped = apply_channel(k, rho0);
        const CMat4 corrected = apply_with_feedback(k, opt, rho0);

        const auto push = [&](Quantity quantity, Source source, double value) {
            out.push_back({eta, 1, quantity, source, value});
        };
        push(Quantity::purity_nofb, Source::simulated, subsystem_purity(damped));
        push(Quantity::purity_nofb, Source::closed_form, closed_form::purity_damped(eta));
        push(Quantity::purity_fb, Source::simulated, subsystem_purity(corrected));
        push(Quantity::purity_fb, Source::closed_form,
             closed_form::purity_feedback(eta, AngleCombos::from_scheme(opt)));
        push(Quantity::conc_nofb, Source::simulated, concurrence(damped).value);
        push(Quantity::conc_nofb, Source::closed_form,
             concurrence_x_state(closed_form::damped_dephased_bell(eta, q)));
        push(Quantity::conc_fb, Source::simulated, concurrence(corrected).value);
        push(Quantity::conc_fb, Source::closed_form, std::abs(q) * eta);
    }
    return out;
}

std::vector<CurveRecord> repeat_records(const RunConfig& cfg) {
    cfg.validate();
    std::vector<CurveRecord> out;
    const CMat4 bell = bell_state();
    for (double eta : cfg.eta_grid()) {
        for (int n = 1; n <= cfg.n_max; ++n) {
            const CMat4 plain = repeat_map(bell, eta, RepeatConfig(n, false));
            const CMat4 corrected = repeat_map(bell, eta, RepeatConfig(n, true, 0.0));
            out.push_back({eta, n, Quantity::conc_nofb, Source::simulated,
                           concurrence(plain).value});
            out.push_back({eta, n, Quantity::conc_nofb, Source::closed_form,
                           closed_form::repeat_concurrence(eta, n, false)});
            out.push_back({eta, n, Quantity::conc_fb, Source::simulated,
                           concurrence(corrected).value});
            out.push_back({eta, n, Quantity::conc_fb, Source::closed_form,
                           closed_form::repeat_concurrence(eta, n, true)});
        }
    }
    return out;
}

void write_curve_records(std::ostream& os, const std::vector<CurveRecord>& records,
                         OutputFormat format) {
    if (format == OutputFormat::csv) {
        os << "eta,n,quantity,source,value\n";
        for (const CurveRecord& r : records)
            os << format_double(r.eta) << ',' << r.n << ',' << to_string(r.quantity) << ','
               << to_string(r.source) << ',' << format_double(r.value) << '\n';
        return;
    }
    ordered_json j = ordered_json::array();
    for (const CurveRecord& r : records) {
        j.push_back({{"eta", r.eta},
                     {"n", r.n},
                     {"quantity", to_string(r.quantity)},
                     {"source", to_string(r.source)},
                     {"value", r.value}});
    }
    os << j.dump(2) << '\n';
}

void write_sweep_result(std::ostream& os, const SweepResult& result, OutputFormat format) {
    if (format == OutputFormat::csv) {
        os << "kind,eta,q";
        for (const std::string& name : result.param_names)
            if (!name.empty()) os << ',' << name;
        os << ",value,ties\n";
        const auto row = [&](const char* kind, double eta, double q,
                             const std::array<double, 3>& params, double value,
                             std::size_t ties) {
            os << kind << ',' << format_double(eta) << ',' << format_double(q);
            for (std::size_t i = 0; i < 3; ++i)
                if (!result.param_names[i].empty()) os << ',' << format_double(params[i]);
            os << ',' << format_double(value) << ',' << ties << '\n';
        };
        for (const SweepRecord& r : result.records)
            row("point", r.eta, r.q_mag, r.params, r.value, 0);
        for (const SweepBest& b : result.best)
            row("best", b.eta, b.q_mag, b.params, b.value, b.tie_count);
        return;
    }
    ordered_json j;
    ordered_json names = ordered_json::array();
    for (const std::string& name : result.param_names)
        if (!name.empty()) names.push_back(name);
    j["param_names"] = names;
    j["has_q"] = result.has_q;
    ordered_json recs = ordered_json::array();
    for (const SweepRecord& r : result.records) {
        ordered_json rec = ordered_json::array({r.eta, r.q_mag});
        for (std::size_t i = 0; i < 3; ++i)
            if (!result.param_names[i].empty()) rec.push_back(r.params[i]);
        rec.push_back(r.value);
        recs.push_back(std::move(rec));
    }
    j["records"] = std::move(recs);
    ordered_json bests = ordered_json::array();
    for (const SweepBest& b : result.best) {
        ordered_json params = ordered_json::array();
        for (std::size_t i = 0; i < 3; ++i)
            if (!result.param_names[i].empty()) params.push_back(b.params[i]);
        bests.push_back({{"eta", b.eta},
                         {"q", b.q_mag},
                         {"params", std::move(params)},
                         {"value", b.value},
                         {"ties", b.tie_count}});
    }
    j["best"] = std::move(bests);
    os << j.dump(2) << '\n';
}

int VerifyReport::passed() const {
    int n = 0;
    for (const VerifyCheck& c : checks) n += c.passed ? 1 : 0;
    return n;
}

int VerifyReport::failed() const { return static_cast<int>(checks.size()) - passed(); }

namespace {

// Writes through `sink` either to the file at path or to stdout.
int with_output(const std::string& path, const std::function<void(std::ostream&)>& sink) {
    if (path.empty()) {
        sink(std::cout);
        return std::cout ? exit_ok : exit_io_error;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return exit_io_error;
    }
    sink(file);
    file.close();
    if (!file) {
        std::cerr << "error: failed while writing '" << path << "'\n";
        return exit_io_error;
    }
    return exit_ok;
}

}  // namespace

int cmd_curves(const RunConfig& cfg) {
    const std::vector<CurveRecord> records = curve_records(cfg);
    return with_output(cfg.output_path,
                       [&](std::ostream& os) { write_curve_records(os, records, cfg.format); });
}

int cmd_repeat(const RunConfig& cfg) {
    const std::vector<CurveRecord> records = repeat_records(cfg);
    return with_output(cfg.output_path,
                       [&](std::ostream& os) { write_curve_records(os, records, cfg.format); });
}

int cmd_sweep(const RunConfig& cfg) {
    cfg.validate();
    SweepConfig sweep = SweepConfig::reference_grids();
    sweep.eta_grid.clear();
    const int steps = cfg.eta_steps_set ? cfg.eta_steps : 11;
    for (int i = 0; i < steps; ++i)
        sweep.eta_grid.push_back(cfg.eta_min + (cfg.eta_max - cfg.eta_min) * i / (steps - 1));
    if (cfg.q_set) sweep.q_grid.push_back(std::abs(cfg.q));
    sweep.objective = Objective::concurrence;
    sweep.workers = cfg.workers;
    const SweepResult result = sweep_remix(sweep);
    return with_output(cfg.output_path,
                       [&](std::ostream& os) { write_sweep_result(os, result, cfg.format); });
}

int cmd_verify(const RunConfig& cfg) {
    const VerifyReport report = run_verification(cfg.corrupt_tolerance);
    for (const VerifyCheck& c : report.checks) {
        std::cout << (c.passed ? "PASS" : "FAIL") << "  " << c.name;
        if (!c.passed && !c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << '\n';
    }
    for (const std::string& line : report.known_issues)
        std::cout << "KNOWN ISSUE  " << line << '\n';
    std::cout << "passed " << report.passed() << ", failed " << report.failed() << '\n';
    return report.failed() == 0 ? exit_ok : exit_verify_failure;
}

int run_command(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::curves: return cmd_curves(cfg);
        case Command::sweep: return cmd_sweep(cfg);
        case Command::repeat: return cmd_repeat(cfg);
        case Command::verify: return cmd_verify(cfg);
    }
    return exit_bad_args;
}

}  // namespace qfb
