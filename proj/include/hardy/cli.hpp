#pragma once

// Command dispatch for the hardytrace front end. Argument parsing lives in
// tools/; everything here is a function of RunConfig so it can be tested
// without a process boundary.

#include "hardy/error.hpp"
#include "hardy/io.hpp"
#include "hardy/multiindex.hpp"
#include "hardy/selftest.hpp"
#include "hardy/sphere.hpp"
#include "hardy/sphere_poly.hpp"
#include "hardy/tracetest.hpp"
#include "hardy/transforms.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hardy::cli {

enum class Command { constants, moment, check, sweep, radial_scan, verify };

enum class Format { json, csv };

struct RunConfig {
    Command command = Command::check;
    std::string input_path;              // polynomial JSON; required by moment/check/sweep/radial-scan
    std::size_t n = 2;                   // dimension for constants/verify
    std::uint64_t seed = 0;
    std::uint64_t samples = 100000;
    unsigned order = 2;
    double p = 2.0;
    std::vector<double> radii{0.5, 0.9, 0.99};
    std::vector<unsigned> alpha;         // moment command
    std::vector<unsigned> beta;
    std::string output = "-";            // "-" is stdout
};

struct Report {
    Format format = Format::json;
    std::string body;
    bool ok = true; // false when a verify run has failing checks
};

struct RunResult {
    int exit_code = 0;
    Report report;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::io, "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorKind::io, "failed reading '" + path + "'");
    }
    return ss.str();
}

inline void validate(const RunConfig& config) {
    const bool needs_input = config.command == Command::moment || config.command == Command::check ||
                             config.command == Command::sweep || config.command == Command::radial_scan;
    if (needs_input && config.input_path.empty()) {
        throw Error(ErrorKind::usage, "this command needs --input");
    }
    const bool monte_carlo = config.command == Command::radial_scan || config.command == Command::verify;
    if (monte_carlo && config.samples < 2) {
        throw Error(ErrorKind::usage, "--samples must be at least 2");
    }
    if (config.command == Command::radial_scan) {
        if (!(config.p >= 1.0) || !std::isfinite(config.p)) {
            throw Error(ErrorKind::usage, "--p must satisfy 1 <= p < infinity");
        }
        for (double r : config.radii) {
            if (!(r >= 0.0) || !(r < 1.0)) {
                throw Error(ErrorKind::usage, "--radii must lie in [0, 1)");
            }
        }
    }
    if (config.n == 0) {
        throw Error(ErrorKind::usage, "--n must be positive");
    }
}

inline std::string dump(const io::Json& j) { return j.dump(2) + "\n"; }

inline Report run_command(const RunConfig& config) {
    validate(config);
    switch (config.command) {
    case Command::constants: {
        io::Json rows = io::Json::array();
        for (const auto& omega : enumerate_upto(config.n, config.order)) {
            const Rational c = c_constant(omega);
            rows.push_back(io::Json{{"omega", io::to_json(omega)}, {"c", io::to_json(c)}, {"c_float", to_float(c)}});
        }
        return {Format::json, dump(io::Json{{"n", config.n}, {"order", config.order}, {"constants", rows}})};
    }
    case Command::moment: {
        const SpherePolynomial f = io::parse_polynomial(read_file(config.input_path));
        const MultiIndex alpha = config.alpha.empty() ? MultiIndex(f.dimension()) : MultiIndex(config.alpha);
        const MultiIndex beta = config.beta.empty() ? MultiIndex(f.dimension()) : MultiIndex(config.beta);
        const ComplexRational m = moment(f, alpha, beta);
        return {Format::json, dump(io::Json{{"alpha", io::to_json(alpha)},
                                            {"beta", io::to_json(beta)},
                                            {"moment", io::to_json(m)},
                                            {"moment_float", io::float_json(to_float(m))}})};
    }
    case Command::check: {
        const SpherePolynomial f = io::parse_polynomial(read_file(config.input_path));
        return {Format::json, dump(io::to_json(is_boundary_trace(f, config.order)))};
    }
    case Command::sweep: {
        const SpherePolynomial f = io::parse_polynomial(read_file(config.input_path));
        io::Json violations = io::Json::array();
        for (const auto& v : sweep(f, config.order)) {
            violations.push_back(io::to_json(v));
        }
        const std::size_t count = violations.size();
        return {Format::json, dump(io::Json{{"order", config.order},
                                            {"violation_count", count},
                                            {"violations", std::move(violations)}})};
    }
    case Command::radial_scan: {
        const SpherePolynomial f = io::parse_polynomial(read_file(config.input_path));
        SphereSampler sampler(f.dimension(), config.seed);
        const auto rows = radial_scan(f, config.p, config.radii, sampler, config.samples);
        return {Format::csv, io::radial_scan_csv(rows)};
    }
    case Command::verify: {
        const auto report = selftest::verify(config.n, config.seed, config.samples);
        io::Json checks = io::Json::array();
        for (const auto& c : report.checks) {
            checks.push_back(io::Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        }
        return {Format::json, dump(io::Json{{"n", report.n},
                                            {"seed", report.seed},
                                            {"samples", report.samples},
                                            {"passed", report.passed()},
                                            {"checks", std::move(checks)}}),
                report.passed()};
    }
    }
    throw Error(ErrorKind::usage, "unknown command");
}

/// Writes the report to a file, or to stdout for "-".
inline void emit_report(const Report& report, const std::string& destination) {
    if (destination.empty() || destination == "-") {
        std::cout << report.body << std::flush;
        if (!std::cout) {
            throw Error(ErrorKind::io, "failed writing to stdout");
        }
        return;
    }
    std::ofstream out(destination, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::io, "cannot open '" + destination + "' for writing");
    }
    out << report.body;
    out.flush();
    if (!out) {
        throw Error(ErrorKind::io, "failed writing '" + destination + "'");
    }
}

inline Report error_report(ErrorKind kind, const std::string& message) {
    const io::Json j{{"error", {{"kind", std::string(to_string(kind))}, {"message", message}, {"exit_code", exit_code(kind)}}}};
    return {Format::json, dump(j)};
}

/// Runs the command and maps failures onto structured error reports.
/// A verify run whose checks fail exits with status 2.
inline RunResult run(const RunConfig& config) {
    try {
        Report report = run_command(config);
        const int status = report.ok ? 0 : 2;
        return {status, std::move(report)};
    } catch (const Error& e) {
        return {exit_code(e.kind()), error_report(e.kind(), e.what())};
    } catch (const std::exception& e) {
        return {exit_code(ErrorKind::usage), error_report(ErrorKind::usage, e.what())};
    }
}

} // namespace hardy::cli
