#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "desing/driver/driver.hpp"

namespace desing::cli {

// Positioned problem-file error; line and column are 1-based, 0 when the error has no position.
class ProblemError : public std::runtime_error {
public:
    ProblemError(std::size_t line, std::size_t column, std::string token, const std::string& msg);
    std::size_t line;
    std::size_t column;
    std::string token;
};

struct ProblemSpec {
    std::vector<std::string> vars;
    std::vector<std::string> ideal;
    unsigned b = 1;
    Mode mode = Mode::resolve;
    std::vector<std::string> divisors;
    // Line and column of each ideal and divisor entry, for positioned errors.
    std::vector<std::pair<std::size_t, std::size_t>> ideal_pos;
    std::vector<std::pair<std::size_t, std::size_t>> divisor_pos;
};

// Grammar: one "key: value" per line, '#' starts a comment. Keys: vars, ideal (repeatable), b, mode,
// divisor (repeatable). Polynomials are checked here as well.
ProblemSpec parse_problem(const std::string& text);

Mode parse_mode(const std::string& s);

struct Problem {
    Ring ring;
    Pair pair;
    Ideal ideal;
};
// Divisors must be coordinate variables of the input ring.
Problem build_problem(const ProblemSpec& spec);

RunResult run_problem(const ProblemSpec& spec, const Options& opt);

nlohmann::json tree_to_json(const RunResult& r);
std::string tree_to_dot(const ResolutionTree& t);
std::string render_report(const RunResult& r);

struct RunConfig {
    std::optional<Mode> mode;
    std::filesystem::path out_dir = ".";
    bool dot = false;
    Options options;
};

// Runs the problem and writes tree.json, report.txt and optionally tree.dot.
// Exit status: 0 all green, 1 bad input, 2 budget exceeded, 3 verification or driver failure.
int run_cli(const std::string& problem_text, const RunConfig& cfg, std::ostream& log);

}  // namespace desing::cli
