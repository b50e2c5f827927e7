#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fecon/bid_engine.hpp"
#include "fecon/csv.hpp"
#include "fecon/scenario.hpp"

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("FECON_OUT_DIR")) return env;
    return "out";
}

void print_report(const fecon::scenario::RunReport& report) {
    std::cout << "scenario: " << report.scenario << "\n";
    for (const auto& section : report.sections) {
        std::cout << "  [" << (section.ok ? "ok" : "FAILED") << "] " << section.name;
        if (!section.ok) std::cout << ": " << section.detail;
        std::cout << "\n";
    }
    for (const auto& warning : report.warnings) {
        std::cout << "  warning: " << warning << "\n";
    }
    std::cout << "  files:\n";
    for (const auto& file : report.files) {
        std::cout << "    " << file << "\n";
    }
    std::cout << "  elapsed: " << report.wall_seconds << " s\n";
}

int run_command(const std::string& scenario, std::string out_dir, bool out_dir_given,
                const std::vector<std::string>& overrides) {
    auto doc = fecon::scenario::load_scenario(scenario);
    for (const auto& assignment : overrides) {
        fecon::scenario::apply_override(doc.root, assignment);
    }
    // --out wins; otherwise the scenario's own output_dir, then the default.
    if (!out_dir_given && doc.root.contains("output_dir")) {
        out_dir = doc.root["output_dir"].get<std::string>();
    }
    const auto report = fecon::scenario::run(doc, out_dir);
    print_report(report);
    return report.ok() ? 0 : 1;
}

int list_command() {
    for (const auto& builtin : fecon::scenario::builtin_scenarios()) {
        std::cout << builtin.name << " - " << builtin.description << "\n";
    }
    return 0;
}

int decompose_command(const std::string& matrix_path) {
    std::ifstream in(matrix_path);
    if (!in) {
        std::cerr << "cannot open matrix file '" << matrix_path << "'\n";
        return 1;
    }
    nlohmann::json root;
    in >> root;
    std::vector<std::vector<double>> entries;
    for (const auto& row : root) {
        entries.push_back(row.get<std::vector<double>>());
    }
    const auto matrix = fecon::bid::BistochasticMatrix::validated(std::move(entries));
    const auto decomp = fecon::bid::birkhoff_decompose(matrix);

    std::cout << "beta,weight,perm\n";
    for (size_t k = 0; k < decomp.terms.size(); ++k) {
        std::cout << k << ',' << fecon::csv::format(decomp.terms[k].weight) << ',';
        const auto& mapping = decomp.terms[k].perm.mapping();
        for (size_t i = 0; i < mapping.size(); ++i) {
            if (i > 0) std::cout << ' ';
            std::cout << mapping[i];
        }
        std::cout << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scenario-driven market economics toolkit"};
    app.require_subcommand(1);

    std::string scenario;
    std::string out_dir = default_out_dir();
    std::vector<std::string> overrides;
    auto* run_cmd = app.add_subcommand("run", "run a scenario and write its CSV reports");
    run_cmd->add_option("--scenario", scenario, "bundled scenario name or path to a file")
        ->required();
    auto* out_opt = run_cmd->add_option(
        "--out", out_dir, "output directory (default $FECON_OUT_DIR, then ./out)");
    run_cmd->add_option("--set", overrides, "dotted-path override, e.g. exchange.rho_star=2");

    auto* list_cmd = app.add_subcommand("list", "list bundled scenarios");

    std::string matrix_path;
    auto* decompose_cmd =
        app.add_subcommand("decompose", "decompose a doubly stochastic matrix (JSON rows)");
    decompose_cmd->add_option("--matrix", matrix_path, "path to a JSON matrix file")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            return run_command(scenario, out_dir, out_opt->count() > 0, overrides);
        }
        if (list_cmd->parsed()) return list_command();
        if (decompose_cmd->parsed()) return decompose_command(matrix_path);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
