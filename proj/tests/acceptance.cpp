#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "desing/cli/cli.hpp"
#include "support.hpp"

using namespace desing;
using namespace testing_support;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string problem_text(const std::string& name) {
    return slurp(std::filesystem::path(DESING_PROBLEMS_DIR) / (name + ".txt"));
}

RunResult run_named(const std::string& name, const Options& opt = {}) {
    return cli::run_problem(cli::parse_problem(problem_text(name)), opt);
}

std::vector<Polynomial> center_parameters(const ChartNode& n) {
    std::vector<Polynomial> g;
    for (auto s : n.center->slots) g.push_back(n.state.top.pair.chart.parameters()[s]);
    return g;
}

std::vector<int> center_labels(const ChartNode& n) { return divisors_containing(n.state.top.pair, n.center->slots); }

bool report_has(const VerificationReport& r, const std::string& name) {
    bool seen = false;
    for (const auto& e : r.entries)
        if (e.name == name) {
            if (!e.ok) return false;
            seen = true;
        }
    return seen;
}

TElem gam(int neg_p, Rational omega, std::vector<int> ell) { return TElem::gamma(Gamma{neg_p, omega, std::move(ell)}); }

Outcome delta_chain() {
    Outcome o;
    Ring r({"x", "y", "z"});
    Chart c = Chart::affine(r);
    Ideal j = I(r, {"z^2 + x^3*y^3"});
    Ideal d1 = delta(c, j);
    o.require(d1.same_as(I(r, {"z^2 + x^3*y^3", "2*z", "3*x^2*y^3", "3*x^3*y^2"})), "delta(J) differs");
    o.require(delta(c, d1).is_unit(), "delta^2(J) is not the unit ideal");
    Ideal sing = sing_locus(c, j, 2);
    Ideal expected = ideal_intersection(I(r, {"x", "z"}), I(r, {"y", "z"}));
    o.require(expected.same_as(I(r, {"z", "x*y"})), "V(x,z) u V(y,z) is not V(z, xy)");
    o.require(c.same_locus(sing, expected), "Sing(J,2) is not V(x,z) u V(y,z)");
    for (const char* g : {"z", "x*y"}) o.require(c.vanishes_on(sing, P(r, g)), std::string(g) + " does not vanish on Sing");
    for (const auto& g : sing.generators()) o.require(c.vanishes_on(expected, g), "Sing generator not in the radical");
    return o;
}

Outcome coefficient_ideal() {
    Outcome o;
    Ring r({"x", "y", "z"});
    Chart c = Chart::affine(r);
    CoeffIdeal ci = coeff_ideal(c, 2, I(r, {"z^2 + x^3*y^3"}), 2);
    o.require(ci.control == 2, "control is " + std::to_string(ci.control));
    o.require(ci.ideal.same_as(Ideal::principal(parse_polynomial(ci.ring, "x^3*y^3"))), "coefficient ideal is not <x^3*y^3>");
    return o;
}

Outcome monomial_replay() {
    Outcome o;
    auto res = run_named("monomial");
    const auto& t = res.tree;
    std::vector<Composite> expected = {
        {gam(-2, Rational(10, 9), {1, 2, 0, 0}), TElem::infinity(), TElem::infinity(), TElem::infinity()},
        {gam(-3, Rational(10, 9), {1, 3, 4, 0}), TElem::infinity(), TElem::infinity(), TElem::infinity()},
        {gam(-3, 1, {1, 4, 6, 0}), TElem::infinity(), TElem::infinity(), TElem::infinity()},
        {gam(-3, 1, {1, 4, 5, 0}), TElem::infinity(), TElem::infinity(), TElem::infinity()},
    };
    std::vector<std::vector<int>> centers = {{1, 2}, {1, 3, 4}, {1, 4, 6}, {1, 4, 5}};
    for (std::size_t k = 0; k < expected.size(); ++k) {
        if (k >= t.steps.size()) {
            o.require(false, "only " + std::to_string(t.steps.size()) + " steps");
            break;
        }
        o.require(t.steps[k].value == expected[k], "step " + std::to_string(k + 1) + " max h is " + to_string(t.steps[k].value));
        for (auto id : t.steps[k].charts)
            o.require(center_labels(t.nodes[id]) == centers[k], "step " + std::to_string(k + 1) + " center differs");
    }
    // New exponent: sum of the exponents of the divisors through the center minus b.
    for (const auto& e : t.edges) {
        if (e.kind != "blow-up") continue;
        const auto& parent = t.nodes[e.from];
        const auto& kid = t.nodes[e.to];
        int label = t.steps[std::size_t(e.step - 1)].label;
        int sum = 0;
        for (int l : center_labels(parent)) sum += int(parent.state.top.exponents().count(l) ? parent.state.top.exponents().at(l) : 0);
        int got = int(kid.state.top.exponents().count(label) ? kid.state.top.exponents().at(label) : 0);
        o.require(got == sum - int(t.b), "exponent of H" + std::to_string(label) + " is " + std::to_string(got));
    }
    o.require(res.report.all_green(), "verification not green");
    o.require(t.steps.size() == 5, std::to_string(t.steps.size()) + " transformations, expected exactly 5");
    return o;
}

Outcome diagonal() {
    Outcome o;
    auto res = run_named("diagonal");
    const auto& t = res.tree;
    o.require(t.steps.size() == 2, std::to_string(t.steps.size()) + " blow-ups");
    if (t.steps.size() >= 1)
        for (auto id : t.steps[0].charts) {
            o.require(center_labels(t.nodes[id]) == std::vector<int>{1, 2}, "first center is not the origin");
            o.require(t.nodes[id].center->slots.size() == 2, "first center is not a point");
        }
    if (t.steps.size() >= 2)
        for (auto id : t.steps[1].charts) {
            const auto& n = t.nodes[id];
            const Chart& c = n.state.top.pair.chart;
            Ideal center(c.nvars(), center_parameters(n));
            o.require(c.same_locus(center, strict_transform(t, n)), "second center is not the strict transform of the diagonal");
        }
    o.require(res.report.all_green(), "verification not green");
    return o;
}

Outcome smooth_constants() {
    Outcome o;
    auto surface = run_named("smooth_surface");
    auto curve = run_named("smooth_curve");
    Composite a2 = {TElem::pair(1, 0), TElem::infinity(), TElem::infinity()};
    Composite a1 = {TElem::pair(1, 0), TElem::pair(1, 0), TElem::infinity()};
    for (auto* r : {&surface, &curve}) {
        o.require(r->tree.steps.empty(), "blow-ups performed on a smooth input");
        o.require(r->tree.nodes[0].center.has_value(), "no value on the root chart");
        o.require(report_has(r->report, "max_locus_is_strict_transform"), "Max f is not X");
        o.require(r->report.all_green(), "verification not green");
    }
    if (surface.tree.nodes[0].center) o.require(surface.tree.nodes[0].center->value == a2, "surface value " + to_string(surface.tree.nodes[0].center->value));
    if (curve.tree.nodes[0].center) o.require(curve.tree.nodes[0].center->value == a1, "curve value " + to_string(curve.tree.nodes[0].center->value));
    return o;
}

Outcome umbrella() {
    Outcome o;
    auto res = run_named("umbrella");
    for (const char* check : {"strict_smooth", "strict_normal_crossings", "max_locus_is_strict_transform", "factorization",
                              "exceptional_normal_crossings", "strict_descent"})
        o.require(report_has(res.report, check), std::string(check) + " not green");
    o.require(res.report.all_green(), "verification not green");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(res.tree.steps.size()) + " blow-ups, " +
                std::to_string(res.tree.leaves.size()) + " leaves";
    return o;
}

Outcome properties() {
    Outcome o;
    std::mt19937 rng(20031215);
    Ring r({"x", "y", "z"});
    Chart a3 = Chart::affine(r);
    Ideal origin = I(r, {"x", "y", "z"});
    auto report = [&](const std::string& name, int cases, int failures, int min_cases = 200) {
        o.require(failures == 0 && cases >= min_cases, name + ": " + std::to_string(failures) + " failures in " + std::to_string(cases));
        std::cout << "    " << name << ": " << cases << " cases, " << failures << " failures\n";
    };

    int cases = 0, failures = 0;
    while (cases < 200) {
        std::vector<Polynomial> gens;
        for (int k = 0; k < 2; ++k) gens.push_back(random_poly(rng, 3, 4, 3) * P(r, "x + y*z").pow(unsigned(cases % 3)));
        Ideal j(3, gens);
        if (j.is_zero() || j.is_unit()) continue;
        ++cases;
        bool ok = true;
        unsigned maxdeg = 0;
        for (const auto& g : j.generators()) maxdeg = std::max(maxdeg, g.total_degree());
        Ideal cur = j;
        std::vector<Ideal> chain{j};
        unsigned steps = 0;
        while (!cur.is_unit() && steps <= maxdeg) {
            Ideal next = delta(a3, cur);
            ok &= next.contains(cur);
            cur = next;
            chain.push_back(cur);
            ++steps;
        }
        ok &= cur.is_unit();
        unsigned ord = max_order(a3, j, origin);
        if (ord > 1) ok &= ord == 1 + max_order(a3, delta(a3, j), origin);
        // Order at the origin is at least b exactly when the origin lies in V(delta^(b-1)(J)).
        for (unsigned b = 1; b <= ord + 1 && b <= chain.size(); ++b) {
            bool in_locus = std::all_of(chain[b - 1].generators().begin(), chain[b - 1].generators().end(),
                                        [](const Polynomial& g) { return g.is_zero() || g.order_at_origin() > 0; });
            ok &= in_locus == (ord >= b);
        }
        failures += !ok;
    }
    report("delta P1-P3", cases, failures);

    cases = failures = 0;
    for (int trial = 0; cases < 200; ++trial) {
        unsigned b = 2 + unsigned(trial % 2);
        std::vector<std::size_t> center = trial % 3 == 0 ? std::vector<std::size_t>{0, 1, 2} : std::vector<std::size_t>{0, 1};
        Polynomial f(3);
        for (unsigned k = 0; k <= b; ++k) {
            Polynomial mono = Polynomial::constant(3, 1);
            for (unsigned s = 0; s < b; ++s) mono *= r.var(center[(k + s * unsigned(trial % 5 + 1)) % center.size()]);
            f += mono * (random_poly(rng, 3, 1, 2, 3) + r.constant(int(k) + 1));
        }
        if (f.is_zero()) continue;
        ++cases;
        Ideal j = Ideal::principal(f);
        Ideal dj = delta(a3, j);
        bool ok = true;
        for (const auto& kid : blow_up(Pair{a3, {}}, center, 1, 1)) {
            const Chart& c = kid.pair.chart;
            Polynomial e = c.parameters()[kid.exceptional_slot];
            ok &= c.contains(delta(c, divide_ideal(c, kid.map(j), e, b)), divide_ideal(c, kid.map(dj), e, b - 1));
        }
        failures += !ok;
    }
    report("Giraud containment", cases, failures);

    cases = failures = 0;
    while (cases < 200) {
        Ideal j(3, {random_poly(rng, 3, 3, 3), random_poly(rng, 3, 3, 2)});
        Ideal i(3, {random_poly(rng, 3, 3, 3)});
        if (j.is_zero() || i.is_zero()) continue;
        unsigned b = 1 + unsigned(cases % 3), c = 1 + unsigned((cases / 3) % 2);
        BasicObject bj = BasicObject::make(Pair{a3, {}}, j, b);
        BasicObject bi = BasicObject::make(Pair{a3, {}}, i, c);
        ++cases;
        failures += !a3.same_locus(sing_ideal(intersect(bj, bi)), ideal_sum(sing_ideal(bj), sing_ideal(bi)));
    }
    report("intersection locus", cases, failures);

    std::vector<std::string> names = {"diagonal", "monomial", "cusp", "double_surface", "monomial_ideal", "umbrella"};
    std::map<std::string, RunResult> runs;
    for (const auto& n : names) runs.emplace(n, run_named(n));
    cases = failures = 0;
    for (const auto& [n, res] : runs)
        for (const auto& e : res.report.entries)
            if (e.name == "factorization") {
                ++cases;
                failures += !e.ok;
            }
    report("factorization exactness", cases, failures, 1);

    cases = failures = 0;
    for (const auto& [n, res] : runs) {
        for (std::size_t k = 1; k < res.tree.steps.size(); ++k) {
            ++cases;
            failures += !less(res.tree.steps[k].value, res.tree.steps[k - 1].value);
        }
        for (const auto& e : res.report.entries)
            if (e.name == "strict_descent") {
                ++cases;
                failures += !e.ok;
            }
    }
    report("strict descent", cases, failures, 1);

    cases = failures = 0;
    while (cases < 200) {
        const auto& name = names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)];
        cli::ProblemSpec spec = cli::parse_problem(problem_text(name));
        std::shuffle(spec.vars.begin(), spec.vars.end(), rng);
        auto res = cli::run_problem(spec, {});
        const auto& ref = runs.at(name).tree;
        bool ok = res.tree.steps.size() == ref.steps.size();
        for (std::size_t k = 0; ok && k < ref.steps.size(); ++k) {
            ok &= res.tree.steps[k].value == ref.steps[k].value;
            ok &= res.tree.steps[k].charts.size() == ref.steps[k].charts.size();
        }
        if (ok && !ref.steps.empty()) {
            auto first = [](const ResolutionTree& t) {
                std::vector<std::string> out;
                for (const auto& p : center_parameters(t.nodes[t.steps[0].charts[0]])) out.push_back(to_string(p, t.ring));
                std::sort(out.begin(), out.end());
                return out;
            };
            ok &= first(res.tree) == first(ref);
        }
        ++cases;
        failures += !ok;
    }
    report("permutation equivariance", cases, failures);
    return o;
}

Outcome coefficient_equivalence() {
    Outcome o;
    Options opt;
    opt.debug_checks = true;
    for (const char* name : {"diagonal", "umbrella"}) {
        try {
            auto res = run_named(name, opt);
            o.require(res.tree.debug_checks > 0, std::string(name) + ": no step reached a maximal-contact level");
            o.detail += (o.detail.empty() ? "" : "; ") + std::string(name) + ": " + std::to_string(res.tree.debug_checks) + " checks";
        } catch (const std::exception& e) {
            o.require(false, std::string(name) + ": " + e.what());
        }
    }
    return o;
}

Outcome determinism() {
    Outcome o;
    auto base = std::filesystem::temp_directory_path() / "desing_acceptance";
    for (const char* name : {"monomial", "diagonal", "umbrella"}) {
        std::string first;
        int run = 0;
        for (unsigned workers : {1u, 8u, 1u, 8u, 1u, 8u}) {
            cli::RunConfig cfg;
            cfg.out_dir = base / (std::string(name) + "_" + std::to_string(run++));
            cfg.options.workers = workers;
            std::ostringstream log;
            cli::run_cli(problem_text(name), cfg, log);
            std::string json = slurp(cfg.out_dir / "tree.json");
            o.require(!json.empty(), std::string(name) + ": no tree.json");
            if (first.empty()) first = json;
            o.require(json == first, std::string(name) + ": tree.json differs with " + std::to_string(workers) + " workers");
        }
    }
    std::filesystem::remove_all(base);
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        double limit;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria = {
        {1, "delta chain on z^2 + x^3*y^3", 1, delta_chain},
        {2, "coefficient ideal on V(z)", 1, coefficient_ideal},
        {3, "monomial example replay", 5, monomial_replay},
        {4, "diagonal with both axes: two blow-ups", 5, diagonal},
        {5, "constant f on smooth inputs", 1, smooth_constants},
        {6, "Whitney umbrella desingularization", 120, umbrella},
        {7, "property suites", 0, properties},
        {8, "runtime coefficient equivalence", 0, coefficient_equivalence},
        {9, "determinism of tree.json", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double s = seconds_since(t0);
        if (c.limit > 0 && s > c.limit) o.require(false, "took longer than " + std::to_string(int(c.limit)) + " s");
        failed += !o.pass;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << s << " s)";
        if (!o.detail.empty()) line << " - " << o.detail;
        std::cout << line.str() << std::endl;
    }
    std::cout << (criteria.size() - std::size_t(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
