#include <fstream>
#include <ostream>
#include <sstream>

#include "desing/cli/cli.hpp"

namespace desing::cli {

using nlohmann::json;

namespace {

json polys(const std::vector<Polynomial>& ps, const Ring& r) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(to_string(p, r));
    return a;
}

std::string ideal_text(const std::vector<Polynomial>& ps, const Ring& r) {
    std::string s = "<";
    for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + to_string(ps[i], r);
    return s + ">";
}

std::string sign_text(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

json value_json(const Composite& v) {
    json a = json::array();
    for (const auto& t : v) a.push_back(to_string(t));
    return a;
}

std::vector<Polynomial> center_params(const ChartNode& n) {
    std::vector<Polynomial> g;
    for (auto s : n.center->slots) g.push_back(n.state.top.pair.chart.parameters()[s]);
    return g;
}

json node_json(const ChartNode& n) {
    const Chart& c = n.state.top.pair.chart;
    const Ring& r = c.ring();
    json j;
    j["id"] = n.id;
    j["parent"] = n.parent ? json(*n.parent) : json(nullptr);
    j["origin"] = n.origin;
    j["step"] = n.step;
    j["resolved"] = n.resolved;
    j["leaf"] = n.leaf;
    j["chart"] = {{"vars", r.names()},
                  {"dependencies", polys(c.dependencies(), r)},
                  {"parameters", polys(c.parameters(), r)},
                  {"inequations", polys(c.inequations(), r)}};
    json divs = json::array();
    for (const auto& d : n.state.top.pair.divisors)
        divs.push_back({{"label", d.label}, {"birth", d.birth}, {"equation", to_string(d.equation, r)}, {"sign", sign_text(d.sign)}});
    j["divisors"] = divs;
    json members = json::array();
    for (const auto& m : n.state.top.members) {
        json ex = json::array();
        for (const auto& [l, a] : m.alpha) ex.push_back({{"label", l}, {"exponent", a}});
        members.push_back({{"weak", polys(m.weak.generators(), r)}, {"exponents", ex}, {"control", m.control}});
    }
    j["members"] = members;
    json totals = json::array();
    for (const auto& [l, a] : n.state.totals) totals.push_back({{"label", l}, {"exponent", a}});
    j["totals"] = totals;
    j["controlled"] = polys(n.state.controlled.generators(), r);
    if (n.center) {
        j["center"] = {{"parameters", polys(center_params(n), r)},
                       {"slots", n.center->slots},
                       {"value", value_json(n.center->value)},
                       {"kind", to_string(n.center->kind)}};
    } else {
        j["center"] = nullptr;
    }
    return j;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}

bool node_green(const VerificationReport* rep, std::size_t id) {
    if (!rep) return true;
    for (const auto& e : rep->entries)
        if (e.node == id && !e.ok) return false;
    return true;
}

}  // namespace

json tree_to_json(const RunResult& res) {
    const auto& t = res.tree;
    json j;
    j["schema"] = 1;
    j["mode"] = to_string(t.mode);
    j["vars"] = t.ring.names();
    j["input"] = polys(t.input.generators(), t.ring);
    j["b"] = t.b;
    j["stop_value"] = t.stop_value ? value_json(*t.stop_value) : json(nullptr);
    j["dim_x"] = t.dim_x;
    j["debug_checks"] = t.debug_checks;
    json steps = json::array();
    for (const auto& s : t.steps)
        steps.push_back({{"step", s.step}, {"value", value_json(s.value)}, {"label", s.label}, {"charts", s.charts}});
    j["steps"] = steps;
    json nodes = json::array();
    for (const auto& n : t.nodes) nodes.push_back(node_json(n));
    j["nodes"] = nodes;
    json edges = json::array();
    for (const auto& e : t.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", e.kind}, {"step", e.step}});
    j["edges"] = edges;
    j["leaves"] = t.leaves;
    json entries = json::array();
    for (const auto& e : res.report.entries) entries.push_back({{"node", e.node}, {"check", e.name}, {"ok", e.ok}});
    j["report"] = {{"all_green", res.report.all_green()}, {"entries", entries}};
    return j;
}

std::string tree_to_dot(const ResolutionTree& t) {
    std::ostringstream os;
    os << "digraph resolution {\n  node [shape=box, fontname=\"monospace\"];\n";
    auto rep = verify_tree(t);
    for (const auto& n : t.nodes) {
        const Ring& r = n.state.top.pair.chart.ring();
        std::string label = std::to_string(n.id) + " " + n.origin;
        if (n.center) label += "\\ncenter " + dot_escape(ideal_text(center_params(n), r)) + "\\nf = " + dot_escape(to_string(n.center->value));
        if (n.resolved) label += "\\nresolved";
        os << "  n" << n.id << " [label=\"" << label << "\"";
        if (n.leaf) os << ", style=filled, fillcolor=\"" << (node_green(&rep, n.id) ? "palegreen" : "salmon") << "\"";
        os << "];\n";
    }
    for (const auto& e : t.edges)
        os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.kind << " " << e.step << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string render_report(const RunResult& res) {
    const auto& t = res.tree;
    std::ostringstream os;
    os << "mode: " << to_string(t.mode) << "\n";
    os << "input: " << ideal_text(t.input.generators(), t.ring) << "  b = " << t.b << "\n";
    if (t.stop_value) os << "stop value: " << to_string(*t.stop_value) << "\n";
    os << "blow-ups: " << t.steps.size() << "\n";
    for (const auto& s : t.steps) {
        os << "step " << s.step << "  max f = " << to_string(s.value) << "  new divisor H" << s.label << "\n";
        for (auto id : s.charts) {
            const auto& n = t.nodes[id];
            os << "  chart " << id << "  center " << ideal_text(center_params(n), n.state.top.pair.chart.ring()) << "  f = "
               << to_string(n.center->value) << "  (" << to_string(n.center->kind) << ")\n";
        }
    }
    os << "leaves: " << t.leaves.size() << "\n";
    for (auto id : t.leaves) {
        const auto& n = t.nodes[id];
        const Ring& r = n.state.top.pair.chart.ring();
        os << "leaf " << id << (n.resolved ? "  resolved" : "");
        if (n.center) os << "  f = " << to_string(n.center->value);
        os << "\n";
        if (t.mode == Mode::desingularize) os << "  strict transform " << ideal_text(strict_transform(t, n).basis(), r) << "\n";
        for (const auto& e : res.report.entries)
            if (e.node == id) os << "  " << e.name << " " << (e.ok ? "ok" : "FAILED") << "\n";
    }
    std::size_t failed = 0;
    for (const auto& e : res.report.entries) failed += !e.ok;
    os << "checks: " << res.report.entries.size() << "  failed: " << failed << "\n";
    os << "verification: " << (res.report.all_green() ? "all green" : "FAILED") << "\n";
    return os.str();
}

int run_cli(const std::string& problem_text, const RunConfig& cfg, std::ostream& log) {
    try {
        ProblemSpec spec = parse_problem(problem_text);
        if (cfg.mode) spec.mode = *cfg.mode;
        RunResult res = run_problem(spec, cfg.options);
        std::filesystem::create_directories(cfg.out_dir);
        std::ofstream(cfg.out_dir / "tree.json") << tree_to_json(res).dump(2) << "\n";
        std::ofstream(cfg.out_dir / "report.txt") << render_report(res);
        if (cfg.dot) std::ofstream(cfg.out_dir / "tree.dot") << tree_to_dot(res.tree);
        log << "blow-ups: " << res.tree.steps.size() << ", leaves: " << res.tree.leaves.size() << ", verification "
            << (res.report.all_green() ? "all green" : "FAILED") << "\n";
        return res.report.all_green() ? 0 : 3;
    } catch (const ProblemError& e) {
        log << "error: " << e.what() << "\n";
        return 1;
    } catch (const ResourceError& e) {
        log << "budget exceeded (" << e.budget() << "): " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        log << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        log << "failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace desing::cli
