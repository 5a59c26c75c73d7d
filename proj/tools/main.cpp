// Command line front end: classify single channels, scan diagonal families,
// emit boundary curves, violation certificates and canonical decompositions.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ksmap/scan.hpp"

namespace {

struct InputSpec {
    std::vector<double> lambdas;
    std::string path;
};

ksmap::TransferMap resolve_input(const InputSpec& in) {
    if (!in.lambdas.empty() && !in.path.empty())
        throw std::runtime_error("give either --lambdas or --input, not both");
    if (!in.lambdas.empty())
        return ksmap::as_transfer(
            ksmap::diagonal_map({in.lambdas[0], in.lambdas[1], in.lambdas[2]}));
    if (!in.path.empty()) return ksmap::load_channel_file(in.path);
    throw std::runtime_error("an input channel is required (--lambdas or --input)");
}

int emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write to " << output_path << "\n";
        return 2;
    }
    out << text;
    return 0;
}

void add_input_options(CLI::App* cmd, InputSpec& in) {
    cmd->add_option("--lambdas", in.lambdas,
                    "diagonal channel as three comma separated values")
        ->delimiter(',')
        ->expected(3);
    cmd->add_option("--input", in.path, "channel file (JSON)");
}

void add_grid_options(CLI::App* cmd, ksmap::GridSpec& grid) {
    cmd->add_option("--min", grid.lo, "grid lower bound (default -1)");
    cmd->add_option("--max", grid.hi, "grid upper bound (default 1)");
    cmd->add_option("--points", grid.points, "points per axis (default 21)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bistochastic qubit map classifier: positivity, Kadison-Schwarz "
                 "certificates and complete positivity"};
    app.require_subcommand(1);
    // let the search and output options appear after the subcommand too
    app.fallthrough();

    ksmap::SearchConfig cfg;
    std::string output_path;
    app.add_option("--seed", cfg.seed, "seed for the residual search (default 0)");
    app.add_option("--samples", cfg.samples, "sphere samples per search (default 20000)");
    app.add_option("--starts", cfg.starts, "local descents per search (default 32)");
    app.add_option("--tol", cfg.descent_tol, "descent tolerance (default 1e-10)");
    app.add_option("--output", output_path, "write the result to a file instead of stdout");

    InputSpec classify_in, certify_in, decompose_in;
    CLI::App* cmd_classify =
        app.add_subcommand("classify", "full classification of one channel");
    add_input_options(cmd_classify, classify_in);

    CLI::App* cmd_certify =
        app.add_subcommand("certify", "search for a Kadison-Schwarz violation witness");
    add_input_options(cmd_certify, certify_in);

    CLI::App* cmd_decompose =
        app.add_subcommand("decompose", "rotation * diagonal * rotation factorization");
    add_input_options(cmd_decompose, decompose_in);

    ksmap::GridSpec scan_grid, mu_grid;
    std::string family = "llm";
    CLI::App* cmd_scan = app.add_subcommand("scan", "classify a diagonal family grid");
    cmd_scan->add_option("--family", family, "llm for (lambda,lambda,mu), cube for all three")
        ->check(CLI::IsMember({"llm", "cube"}));
    add_grid_options(cmd_scan, scan_grid);

    CLI::App* cmd_boundaries =
        app.add_subcommand("boundaries", "closed-form region borders of the llm family");
    add_grid_options(cmd_boundaries, mu_grid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_classify->parsed()) {
            ksmap::TransferMap input = resolve_input(classify_in);
            ksmap::Classification c = ksmap::classify(input, cfg);
            return emit(ksmap::render_classification(input, c), output_path);
        }
        if (cmd_certify->parsed()) {
            ksmap::BistochasticMap m = ksmap::require_unital(resolve_input(certify_in));
            ksmap::KsVerdict verdict = ksmap::verify_ks_numeric(m, cfg);
            return emit(ksmap::render_certificate(m, verdict), output_path);
        }
        if (cmd_decompose->parsed()) {
            ksmap::BistochasticMap m = ksmap::require_unital(resolve_input(decompose_in));
            return emit(ksmap::render_decomposition(ksmap::canonical_decompose(m)),
                        output_path);
        }
        if (cmd_scan->parsed()) {
            std::vector<ksmap::ScanRow> rows =
                family == "llm" ? ksmap::scan_llm(scan_grid, scan_grid, cfg)
                                : ksmap::scan_cube(scan_grid, cfg);
            std::ostringstream csv;
            ksmap::write_scan_csv(csv, rows);
            return emit(csv.str(), output_path);
        }
        if (cmd_boundaries->parsed()) {
            std::ostringstream csv;
            ksmap::write_boundaries_csv(csv, ksmap::boundary_curves(mu_grid));
            return emit(csv.str(), output_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
