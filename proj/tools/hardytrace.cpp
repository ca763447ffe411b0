// hardytrace: exact boundary-trace decisions for polynomial data on the
// unit sphere of C^n.

#include "hardy/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    using hardy::cli::Command;
    hardy::cli::RunConfig config;

    CLI::App app{"Decide whether sphere data is the boundary trace of a holomorphic function on the ball"};
    app.require_subcommand(1);

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("-i,--input", config.input_path, "polynomial JSON file")->required();
    };
    auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", config.output, "output path, - for stdout"); };

    auto* constants = app.add_subcommand("constants", "table of c_omega for |omega| <= order");
    constants->add_option("--n", config.n, "dimension")->check(CLI::PositiveNumber);
    constants->add_option("--order", config.order, "maximum total degree");
    add_output(constants);

    auto* moment = app.add_subcommand("moment", "exact moment of zeta^alpha conj(zeta)^beta f");
    add_input(moment);
    moment->add_option("--alpha", config.alpha, "multi-index alpha, comma separated")->delimiter(',');
    moment->add_option("--beta", config.beta, "multi-index beta, comma separated")->delimiter(',');
    add_output(moment);

    auto* check = app.add_subcommand("check", "membership certificate");
    add_input(check);
    check->add_option("--order", config.order, "initial sweep order for violation search");
    add_output(check);

    auto* sweep = app.add_subcommand("sweep", "violated moment conditions up to an order");
    add_input(sweep);
    sweep->add_option("--order", config.order, "maximum |alpha|, |beta|");
    add_output(sweep);

    auto* scan = app.add_subcommand("radial-scan", "L^p distance between P[f]_r and f (CSV)");
    add_input(scan);
    scan->add_option("--p", config.p, "exponent p >= 1");
    scan->add_option("--radii", config.radii, "radii in [0,1), comma separated")->delimiter(',');
    scan->add_option("--seed", config.seed, "sampler seed");
    scan->add_option("--samples", config.samples, "sphere samples");
    add_output(scan);

    auto* verify = app.add_subcommand("verify", "randomized self-test of the trace criterion");
    verify->add_option("--n", config.n, "dimension")->check(CLI::PositiveNumber);
    verify->add_option("--seed", config.seed, "seed");
    verify->add_option("--samples", config.samples, "Monte-Carlo samples per estimate");
    add_output(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        const auto report = hardy::cli::error_report(hardy::ErrorKind::usage, e.what());
        std::cout << report.body;
        return hardy::exit_code(hardy::ErrorKind::usage);
    }

    if (constants->parsed()) {
        config.command = Command::constants;
    } else if (moment->parsed()) {
        config.command = Command::moment;
    } else if (check->parsed()) {
        config.command = Command::check;
    } else if (sweep->parsed()) {
        config.command = Command::sweep;
    } else if (scan->parsed()) {
        config.command = Command::radial_scan;
    } else {
        config.command = Command::verify;
    }

    const auto result = hardy::cli::run(config);
    if (result.exit_code != 0 && result.report.ok) {
        // structured error object
        std::cout << result.report.body;
        return result.exit_code;
    }
    try {
        hardy::cli::emit_report(result.report, config.output);
    } catch (const hardy::Error& e) {
        std::cout << hardy::cli::error_report(e.kind(), e.what()).body;
        return hardy::exit_code(e.kind());
    }
    return result.exit_code;
}
