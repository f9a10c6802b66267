// Command-line front end: construct the extremal family, compute spectra,
// evaluate bound reports, emit exact similarity certificates, and run
// spread-minimization experiments.
//
// Exit codes: 0 success, 1 usage error, 2 verification finding (a violated
// bound or a failed certificate), 3 numeric failure.

#include <CLI11.hpp>

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "spreadlab/json_io.hpp"
#include "spreadlab/spreadlab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFinding = 2;
constexpr int kExitNumeric = 3;

void write_output(const std::string& text, const std::optional<std::string>& out_path) {
    if (!out_path) {
        std::cout << text;
        return;
    }
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) throw spreadlab::MatrixError("cannot open output file '" + *out_path + "'");
    out << text;
}

spreadlab::DenseMatrix read_dense(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw spreadlab::MatrixError("cannot read file '" + path + "'");
    return spreadlab::parse_matrix_text<double>(in);
}

std::pair<int, int> parse_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos)
        throw spreadlab::MatrixError("range must look like 2..8");
    try {
        const int lo = std::stoi(text.substr(0, sep));
        const int hi = std::stoi(text.substr(sep + 2));
        return {lo, hi};
    } catch (const std::exception&) {
        throw spreadlab::MatrixError("range must look like 2..8");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spreadlab: eigenvalue-spread bounds for nonnegative matrices"};
    app.require_subcommand(1);

    int n = 0;
    std::string which = "A";
    std::string file;
    std::optional<std::string> out_path;
    std::uint64_t seed = 0;
    int restarts = 4;
    int iters = 400;
    double density = 0.6;
    std::string method = "nelder_mead";
    int m_max = spreadlab::defaults::jll_m_max;
    double tol = spreadlab::defaults::report_tol;
    std::string range = "2..8";

    auto* construct = app.add_subcommand("construct", "print a family matrix in text format");
    construct->add_option("--n", n, "dimension (>= 2)")->required();
    construct->add_option("--which", which, "one of A, U, N, M, S")
        ->check(CLI::IsMember({"A", "U", "N", "M", "S"}));
    construct->add_option("--out", out_path, "write to file instead of stdout");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues and spread of a matrix file");
    spectrum_cmd->add_option("--file", file, "matrix in text format")->required();
    spectrum_cmd->add_option("--out", out_path, "write to file instead of stdout");

    auto* bounds_cmd = app.add_subcommand("bounds", "bound report for a nonnegative matrix file");
    bounds_cmd->add_option("--file", file, "matrix in text format")->required();
    bounds_cmd->add_option("--m-max", m_max, "largest trace power to certify");
    bounds_cmd->add_option("--tol", tol, "report/certificate tolerance");
    bounds_cmd->add_option("--out", out_path, "write to file instead of stdout");

    auto* verify_cmd = app.add_subcommand("verify", "exact similarity certificate for dimension n");
    verify_cmd->add_option("--n", n, "dimension (>= 2)")->required();
    verify_cmd->add_option("--out", out_path, "write to file instead of stdout");

    auto* search_cmd = app.add_subcommand("search", "minimize the spread over C_n");
    search_cmd->add_option("--n", n, "dimension (>= 2)")->required();
    search_cmd->add_option("--seed", seed, "root seed");
    search_cmd->add_option("--restarts", restarts, "independent restarts");
    search_cmd->add_option("--iters", iters, "iterations per restart");
    search_cmd->add_option("--density", density, "nonzero fraction for samples, in (0,1]");
    search_cmd->add_option("--method", method, "random | nelder_mead | anneal")
        ->check(CLI::IsMember({"random", "nelder_mead", "anneal"}));
    search_cmd->add_option("--out", out_path, "write to file instead of stdout");

    auto* sweep_cmd = app.add_subcommand("sweep", "search across a dimension range, CSV output");
    sweep_cmd->add_option("range", range, "dimension range as A..B")->required();
    sweep_cmd->add_option("--seed", seed, "root seed");
    sweep_cmd->add_option("--restarts", restarts, "independent restarts");
    sweep_cmd->add_option("--iters", iters, "iterations per restart");
    sweep_cmd->add_option("--density", density, "nonzero fraction for samples, in (0,1]");
    sweep_cmd->add_option("--method", method, "random | nelder_mead | anneal")
        ->check(CLI::IsMember({"random", "nelder_mead", "anneal"}));
    sweep_cmd->add_option("--out", out_path, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (construct->parsed()) {
            spreadlab::ExactMatrix m(1);
            if (which == "A") m = spreadlab::build_A(n);
            else if (which == "U") m = spreadlab::build_U(n);
            else if (which == "N") m = spreadlab::build_N(n);
            else if (which == "M") m = spreadlab::build_M(n);
            else m = spreadlab::build_S(n);
            write_output(spreadlab::to_text(m), out_path);
            return kExitOk;
        }

        if (spectrum_cmd->parsed()) {
            const spreadlab::DenseMatrix m = read_dense(file);
            const spreadlab::Spectrum s = spreadlab::eigenvalues(m);
            write_output(spreadlab::to_json(s, static_cast<int>(m.dim())).dump(2) + "\n",
                         out_path);
            return kExitOk;
        }

        if (bounds_cmd->parsed()) {
            const spreadlab::DenseMatrix m = read_dense(file);
            spreadlab::BoundOptions opts;
            opts.m_max = m_max;
            opts.report_tol = tol;
            opts.jll_tol = tol;
            const spreadlab::BoundReport report =
                spreadlab::verify_bounds(spreadlab::NonnegativeMatrix{m}, opts);
            write_output(spreadlab::to_json(report).dump(2) + "\n", out_path);
            if (!report.violations.empty() || !report.jll_all_satisfied()) {
                std::cerr << "FINDING: bound violation detected (n=" << report.n << ")\n";
                return kExitFinding;
            }
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            const spreadlab::SimilarityCertificate cert = spreadlab::certify_family(n);
            write_output(spreadlab::to_json(cert).dump(2) + "\n", out_path);
            if (!cert.all()) {
                std::cerr << "FINDING: exact certificate failed (n=" << n << ")\n";
                return kExitFinding;
            }
            return kExitOk;
        }

        if (search_cmd->parsed() || sweep_cmd->parsed()) {
            spreadlab::SearchConfig config;
            config.n = std::max(n, 2);
            config.seed = seed;
            config.restarts = restarts;
            config.iters_per_restart = iters;
            config.density = density;
            config.method = spreadlab::method_from_string(method);

            if (search_cmd->parsed()) {
                config.n = n;
                const spreadlab::SearchResult result = spreadlab::minimize_spread(config);
                write_output(spreadlab::to_json(result, config).dump(2) + "\n", out_path);
                if (result.bound_violation) {
                    std::cerr << "FINDING: best spread " << result.best_spread
                              << " lies below the theoretical bound "
                              << result.theoretical_bound << " (n=" << config.n << ")\n";
                    return kExitFinding;
                }
                return kExitOk;
            }

            const auto [lo, hi] = parse_range(range);
            const std::vector<spreadlab::SweepRow> rows =
                spreadlab::sweep_experiment(lo, hi, config);
            write_output(spreadlab::sweep_to_csv(rows), out_path);
            for (const auto& row : rows)
                if (row.bound_violation) {
                    std::cerr << "FINDING: bound violation in sweep row n=" << row.n << "\n";
                    return kExitFinding;
                }
            return kExitOk;
        }
    } catch (const spreadlab::EigenFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const spreadlab::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const spreadlab::MatrixError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
