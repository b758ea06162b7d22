#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qfb/cli.hpp"
#include "qfb/errors.hpp"

namespace {

void add_common_options(CLI::App* cmd, qfb::RunConfig& cfg) {
    cmd->add_option("--eta-min", cfg.eta_min, "Lower end of the eta grid")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--eta-max", cfg.eta_max, "Upper end of the eta grid")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--eta-steps", cfg.eta_steps, "Number of eta grid points")
        ->check(CLI::Range(2, 1000000));
    cmd->add_option("--n-max", cfg.n_max, "Largest number of map applications")
        ->check(CLI::Range(1, 64));
    // giving either component specifies q outright (default input is q = 1)
    cmd->add_option("--q-re", [&cfg](const CLI::results_t& in) {
            if (!cfg.q_set) cfg.q = 0.0;
            cfg.q.real(std::stod(in.at(0)));
            cfg.q_set = true;
            return true;
        }, "Real part of the initial off-diagonal weight q");
    cmd->add_option("--q-im", [&cfg](const CLI::results_t& in) {
            if (!cfg.q_set) cfg.q = 0.0;
            cfg.q.imag(std::stod(in.at(0)));
            cfg.q_set = true;
            return true;
        }, "Imaginary part of the initial off-diagonal weight q");
    cmd->add_option_function<std::string>("--format", [&cfg](const std::string& v) {
            cfg.format = v == "json" ? qfb::OutputFormat::json : qfb::OutputFormat::csv;
        }, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_str("csv");
    cmd->add_option("--out", cfg.output_path, "Output file (stdout when omitted)");
    cmd->add_option("--workers", cfg.workers, "Worker threads for sweeps")
        ->check(CLI::Range(1, 1024));
}

}  // namespace

int main(int argc, char** argv) {
    qfb::RunConfig cfg;
    if (const char* env_workers = std::getenv("QFB_WORKERS")) {
        try {
            cfg.workers = std::max(1, std::stoi(env_workers));
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring unparsable QFB_WORKERS\n";
        }
    }

    CLI::App app{"Two-qubit amplitude damping with optimal local feedback"};
    app.require_subcommand(1);

    CLI::App* curves = app.add_subcommand(
        "curves", "Purity and concurrence vs eta, with and without feedback");
    add_common_options(curves, cfg);
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Kraus-representation sweep over (r_alpha, theta_alpha_beta, xi_v)");
    add_common_options(sweep, cfg);
    CLI::App* repeat = app.add_subcommand(
        "repeat", "Concurrence decay under n = 1..n-max map applications");
    add_common_options(repeat, cfg);
    CLI::App* verify = app.add_subcommand(
        "verify", "Run the cross-module invariant suite and report pass/fail");
    add_common_options(verify, cfg);
    verify->add_flag("--corrupt-tolerance", cfg.corrupt_tolerance,
                     "Self-test mode: corrupt one tolerance so the suite must fail");

    // flag presence decides the sweep's default eta grid (11 points)
    curves->callback([&] { cfg.command = qfb::Command::curves;
                           cfg.eta_steps_set = curves->count("--eta-steps") > 0; });
    sweep->callback([&] { cfg.command = qfb::Command::sweep;
                          cfg.eta_steps_set = sweep->count("--eta-steps") > 0; });
    repeat->callback([&] { cfg.command = qfb::Command::repeat;
                           cfg.eta_steps_set = repeat->count("--eta-steps") > 0; });
    verify->callback([&] { cfg.command = qfb::Command::verify; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return qfb::exit_bad_args;
    }

    try {
        return qfb::run_command(cfg);
    } catch (const qfb::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qfb::exit_bad_args;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
