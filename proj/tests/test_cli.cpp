#include <doctest.h>

#include <fstream>
#include <sstream>

#include "desing/cli/cli.hpp"

using namespace desing;
using namespace desing::cli;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string problem(const std::string& name) { return slurp(std::filesystem::path(DESING_PROBLEMS_DIR) / (name + ".txt")); }

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("desing_cli_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

ProblemError parse_error(const std::string& text) {
    try {
        parse_problem(text);
    } catch (const ProblemError& e) {
        return e;
    }
    FAIL("expected a parse error");
    return ProblemError(0, 0, "", "");
}

}  // namespace

TEST_CASE("parse_problem: valid file") {
    auto s = parse_problem("vars: x y z\nideal: z^2 + x^3*y^3\nb: 2\nmode: resolve");
    CHECK(s.vars == std::vector<std::string>{"x", "y", "z"});
    CHECK(s.ideal == std::vector<std::string>{"z^2 + x^3*y^3"});
    CHECK(s.b == 2);
    CHECK(s.mode == Mode::resolve);
}

TEST_CASE("parse_problem: comments, repeated keys and defaults") {
    auto s = parse_problem("# header\n\nvars: x, y   # two variables\nideal: x\nideal: y # second\ndivisor: x\n");
    CHECK(s.vars == std::vector<std::string>{"x", "y"});
    CHECK(s.ideal.size() == 2);
    CHECK(s.divisors == std::vector<std::string>{"x"});
    CHECK(s.b == 1);
    CHECK(s.mode == Mode::resolve);
}

TEST_CASE("parse_problem: errors") {
    auto e = parse_error("ideal: x\nb: 2\n");
    CHECK(std::string(e.what()).find("vars") != std::string::npos);

    e = parse_error("vars: x\nideal: x\nb: 0\n");
    CHECK(e.line == 3);
    CHECK(e.column == 4);

    e = parse_error("vars: x y\nideal: x\ncolour: red\n");
    CHECK(e.line == 3);
    CHECK(e.column == 1);
    CHECK(e.token == "colour");

    e = parse_error("vars: x y x\nideal: x\n");
    CHECK(e.line == 1);
    CHECK(e.column == 11);
    CHECK(e.token == "x");

    e = parse_error("vars: x y\nideal: x + * y\n");
    CHECK(e.line == 2);
    CHECK(e.column > 7);
    CHECK(std::string(e.what()).find("malformed polynomial") != std::string::npos);

    e = parse_error("vars: x y\nideal: x + w\n");
    CHECK(e.line == 2);

    e = parse_error("vars: x\nideal: x\nmode: blowdown\n");
    CHECK(e.token == "blowdown");

    e = parse_error("vars: x\nvars: y\nideal: x\n");
    CHECK(e.line == 2);

    e = parse_error("vars: x\nideal: x\nb: two\n");
    CHECK(e.line == 3);

    CHECK_THROWS_AS(parse_problem("vars: x\n"), ProblemError);
    CHECK_THROWS_AS(parse_problem("vars x\nideal: x\n"), ProblemError);
}

TEST_CASE("build_problem: divisors must be coordinate variables") {
    CHECK_NOTHROW(build_problem(parse_problem("vars: x y\nideal: x*y\ndivisor: y\n")));
    CHECK_THROWS_AS(build_problem(parse_problem("vars: x y\nideal: x*y\ndivisor: x + y\n")), ProblemError);
    CHECK_THROWS_AS(build_problem(parse_problem("vars: x y\nideal: x*y\ndivisor: 2*x\n")), ProblemError);
    CHECK_THROWS_AS(build_problem(parse_problem("vars: x y\nideal: x*y\ndivisor: x\ndivisor: x\n")), ProblemError);
}

TEST_CASE("run_cli: cusp in desingularize mode is green and writes artifacts") {
    auto dir = scratch("cusp");
    RunConfig cfg;
    cfg.out_dir = dir;
    cfg.dot = true;
    std::ostringstream log;
    CHECK(run_cli(problem("cusp"), cfg, log) == 0);
    CHECK(std::filesystem::exists(dir / "tree.json"));
    CHECK(std::filesystem::exists(dir / "tree.dot"));
    std::string report = slurp(dir / "report.txt");
    CHECK(report.find("strict_smooth ok") != std::string::npos);
    CHECK(report.find("strict_normal_crossings ok") != std::string::npos);
    CHECK(report.find("FAILED") == std::string::npos);
    auto j = nlohmann::json::parse(slurp(dir / "tree.json"));
    CHECK(j["schema"] == 1);
    CHECK(j["report"]["all_green"] == true);
    CHECK(j["nodes"].size() > 1);
    CHECK(!j["edges"].empty());
    CHECK(!j["leaves"].empty());
    CHECK(slurp(dir / "tree.dot").rfind("digraph", 0) == 0);
}

TEST_CASE("run_cli: monomial problem report lists the max-h values") {
    auto dir = scratch("mono");
    RunConfig cfg;
    cfg.out_dir = dir;
    std::ostringstream log;
    CHECK(run_cli(problem("monomial"), cfg, log) == 0);
    std::string report = slurp(dir / "report.txt");
    for (const char* v : {"step 1  max f = ((-2,10/9,[1,2,0,0]), inf, inf, inf)",
                          "step 2  max f = ((-3,10/9,[1,3,4,0]), inf, inf, inf)",
                          "step 3  max f = ((-3,1,[1,4,6,0]), inf, inf, inf)",
                          "step 4  max f = ((-3,1,[1,4,5,0]), inf, inf, inf)"})
        CHECK(report.find(v) != std::string::npos);
}

TEST_CASE("run_cli: exit codes") {
    RunConfig cfg;
    cfg.out_dir = scratch("codes");
    std::ostringstream log;
    CHECK(run_cli("vars: x\n", cfg, log) == 1);
    cfg.options.budget.max_spairs = 1;
    log.str("");
    CHECK(run_cli(problem("double_surface"), cfg, log) == 2);
    CHECK(log.str().find("max-spairs") != std::string::npos);
    cfg.options.budget = {};
    cfg.options.max_steps = 1;
    log.str("");
    CHECK(run_cli(problem("double_surface"), cfg, log) == 2);
    CHECK(log.str().find("max-steps") != std::string::npos);
    cfg.options.max_steps.reset();
    cfg.mode = Mode::principalize;
    CHECK(run_cli(problem("smooth_surface"), cfg, log) == 0);
}

TEST_CASE("tree.json is byte-identical across runs and worker counts") {
    for (const char* name : {"diagonal", "double_surface"}) {
        std::string first;
        for (unsigned workers : {1u, 8u, 1u, 8u}) {
            RunConfig cfg;
            cfg.out_dir = scratch(std::string("det_") + name);
            cfg.options.workers = workers;
            std::ostringstream log;
            REQUIRE(run_cli(problem(name), cfg, log) == 0);
            std::string json = slurp(cfg.out_dir / "tree.json");
            if (first.empty()) first = json;
            CHECK(json == first);
        }
    }
}

TEST_CASE("printed polynomials re-parse to the same polynomials") {
    auto res = run_problem(parse_problem(problem("double_surface")), {});
    std::size_t checked = 0;
    for (const auto& n : res.tree.nodes) {
        const Chart& c = n.state.top.pair.chart;
        std::vector<Polynomial> all = c.parameters();
        all.insert(all.end(), c.dependencies().begin(), c.dependencies().end());
        all.insert(all.end(), c.inequations().begin(), c.inequations().end());
        for (const auto& g : n.state.controlled.generators()) all.push_back(g);
        for (const auto& p : all) {
            CHECK(parse_polynomial(c.ring(), to_string(p, c.ring())) == p);
            ++checked;
        }
    }
    CHECK(checked > 100);
}
