#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "desing/cli/cli.hpp"

int main(int argc, char** argv) {
    using namespace desing;
    CLI::App app{"Resolution of basic objects, embedded desingularization and principalization"};
    std::string problem;
    std::string mode;
    std::string out_dir = ".";
    bool dot = false;
    std::optional<std::size_t> max_spairs, max_coeff_bits, max_steps;
    unsigned workers = 1;
    bool debug = false;
    app.add_option("problem", problem, "Problem file")->required()->check(CLI::ExistingFile);
    app.add_option("--mode", mode, "Override the mode: resolve, desingularize or principalize")
        ->check(CLI::IsMember({"resolve", "desingularize", "principalize"}));
    app.add_option("--out-dir", out_dir, "Directory for tree.json, report.txt and tree.dot");
    app.add_flag("--dot", dot, "Also write tree.dot");
    app.add_option("--max-spairs", max_spairs, "S-pair budget per Groebner basis")->check(CLI::PositiveNumber);
    app.add_option("--max-coeff-bits", max_coeff_bits, "Coefficient bit-length budget")->check(CLI::PositiveNumber);
    app.add_option("--max-steps", max_steps, "Maximum number of blow-ups");
    app.add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 256u));
    app.add_flag("--debug-checks", debug, "Run the Giraud and coefficient-equivalence checks at every step");
    CLI11_PARSE(app, argc, argv);

    std::ifstream in(problem);
    std::stringstream text;
    text << in.rdbuf();

    cli::RunConfig cfg;
    if (!mode.empty()) cfg.mode = cli::parse_mode(mode);
    cfg.out_dir = out_dir;
    cfg.dot = dot;
    cfg.options.workers = workers;
    cfg.options.debug_checks = debug;
    cfg.options.max_steps = max_steps;
    if (max_spairs) cfg.options.budget.max_spairs = *max_spairs;
    if (max_coeff_bits) cfg.options.budget.max_coeff_bits = *max_coeff_bits;
    return cli::run_cli(text.str(), cfg, std::cerr);
}
