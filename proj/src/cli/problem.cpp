#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "desing/cli/cli.hpp"

namespace desing::cli {

namespace {

std::string message(std::size_t line, std::size_t column, const std::string& token, const std::string& msg) {
    std::ostringstream os;
    if (line) os << "line " << line << ", column " << column << ": ";
    os << msg;
    if (!token.empty()) os << " near '" << token << "'";
    return os.str();
}

bool blank(char c) { return std::isspace(static_cast<unsigned char>(c)); }

// Splits on whitespace and commas, reporting the 1-based column of each word.
std::vector<std::pair<std::string, std::size_t>> words(const std::string& s, std::size_t offset) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (blank(s[i]) || s[i] == ',')) ++i;
        std::size_t start = i;
        while (i < s.size() && !blank(s[i]) && s[i] != ',') ++i;
        if (i > start) out.push_back({s.substr(start, i - start), offset + start});
    }
    return out;
}

bool valid_name(const std::string& v) {
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_')) return false;
    return std::all_of(v.begin(), v.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

Polynomial parse_at(const Ring& ring, const std::string& text, std::pair<std::size_t, std::size_t> pos) {
    try {
        return parse_polynomial(ring, text);
    } catch (const ParseError& e) {
        throw ProblemError(pos.first, pos.second + e.column, e.token, std::string("malformed polynomial: ") + e.what());
    }
}

}  // namespace

ProblemError::ProblemError(std::size_t l, std::size_t c, std::string t, const std::string& msg)
    : std::runtime_error(message(l, c, t, msg)), line(l), column(c), token(std::move(t)) {}

Mode parse_mode(const std::string& s) {
    if (s == "resolve") return Mode::resolve;
    if (s == "desingularize") return Mode::desingularize;
    if (s == "principalize") return Mode::principalize;
    throw ProblemError(0, 0, s, "unknown mode (expected resolve, desingularize or principalize)");
}

ProblemSpec parse_problem(const std::string& text) {
    ProblemSpec spec;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (std::all_of(line.begin(), line.end(), blank)) continue;
        std::size_t k0 = 0;
        while (blank(line[k0])) ++k0;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw ProblemError(lineno, k0 + 1, line.substr(k0), "expected 'key: value'");
        std::string key = line.substr(k0, colon - k0);
        while (!key.empty() && blank(key.back())) key.pop_back();
        std::size_t v0 = colon + 1;
        while (v0 < line.size() && blank(line[v0])) ++v0;
        std::string value = line.substr(v0);
        while (!value.empty() && blank(value.back())) value.pop_back();
        std::size_t vcol = v0 + 1;
        bool repeatable = key == "ideal" || key == "divisor";
        if (key != "vars" && key != "ideal" && key != "b" && key != "mode" && key != "divisor")
            throw ProblemError(lineno, k0 + 1, key, "unknown key");
        if (!repeatable && !seen.insert(key).second) throw ProblemError(lineno, k0 + 1, key, "duplicate key");
        seen.insert(key);
        if (value.empty()) throw ProblemError(lineno, vcol, key, "missing value");
        if (key == "vars") {
            std::set<std::string> names;
            for (const auto& [w, col] : words(value, vcol)) {
                if (!valid_name(w)) throw ProblemError(lineno, col, w, "invalid variable name");
                if (!names.insert(w).second) throw ProblemError(lineno, col, w, "duplicate variable");
                spec.vars.push_back(w);
            }
            if (spec.vars.size() > kMaxVars) throw ProblemError(lineno, vcol, value, "too many variables");
        } else if (key == "ideal") {
            spec.ideal.push_back(value);
            spec.ideal_pos.push_back({lineno, vcol});
        } else if (key == "divisor") {
            spec.divisors.push_back(value);
            spec.divisor_pos.push_back({lineno, vcol});
        } else if (key == "b") {
            bool digits = std::all_of(value.begin(), value.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
            if (!digits || value.size() > 6) throw ProblemError(lineno, vcol, value, "b must be a positive integer");
            unsigned b = unsigned(std::stoul(value));
            if (b < 1) throw ProblemError(lineno, vcol, value, "b must be at least 1");
            spec.b = b;
        } else {
            try {
                spec.mode = parse_mode(value);
            } catch (const ProblemError&) {
                throw ProblemError(lineno, vcol, value, "unknown mode (expected resolve, desingularize or principalize)");
            }
        }
    }
    if (!seen.count("vars")) throw ProblemError(0, 0, "", "missing key 'vars'");
    if (!seen.count("ideal")) throw ProblemError(0, 0, "", "missing key 'ideal'");
    Ring ring(spec.vars);
    for (std::size_t i = 0; i < spec.ideal.size(); ++i) parse_at(ring, spec.ideal[i], spec.ideal_pos[i]);
    for (std::size_t i = 0; i < spec.divisors.size(); ++i) parse_at(ring, spec.divisors[i], spec.divisor_pos[i]);
    return spec;
}

Problem build_problem(const ProblemSpec& spec) {
    if (spec.b < 1) throw ProblemError(0, 0, "", "b must be at least 1");
    Problem p;
    p.ring = Ring(spec.vars);
    std::size_t n = p.ring.size();
    p.pair.chart = Chart::affine(p.ring);
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < spec.ideal.size(); ++i) {
        auto pos = i < spec.ideal_pos.size() ? spec.ideal_pos[i] : std::pair<std::size_t, std::size_t>{0, 0};
        gens.push_back(parse_at(p.ring, spec.ideal[i], pos));
    }
    p.ideal = Ideal(n, std::move(gens));
    std::set<std::size_t> used;
    for (std::size_t i = 0; i < spec.divisors.size(); ++i) {
        auto pos = i < spec.divisor_pos.size() ? spec.divisor_pos[i] : std::pair<std::size_t, std::size_t>{0, 0};
        Polynomial f = parse_at(p.ring, spec.divisors[i], pos);
        const auto& t = f.terms();
        std::optional<std::size_t> var;
        if (t.size() == 1 && t[0].coef == 1 && f.total_degree() == 1)
            for (std::size_t v = 0; v < n; ++v)
                if (t[0].mono[v] == 1) var = v;
        if (!var) throw ProblemError(pos.first, pos.second, spec.divisors[i], "divisor must be a coordinate variable");
        if (!used.insert(*var).second) throw ProblemError(pos.first, pos.second, spec.divisors[i], "duplicate divisor");
        p.pair.divisors.push_back(Divisor{int(i + 1), 0, f, Sign::minus});
    }
    return p;
}

RunResult run_problem(const ProblemSpec& spec, const Options& opt) {
    Problem p = build_problem(spec);
    switch (spec.mode) {
    case Mode::resolve:
        return resolve(BasicObject::make(p.pair, p.ideal, spec.b), opt);
    case Mode::desingularize:
        if (spec.b != 1) throw ProblemError(0, 0, "", "desingularize uses b = 1");
        if (!spec.divisors.empty()) throw ProblemError(0, 0, "", "desingularize takes no initial divisors");
        return desingularize(p.pair, p.ideal, opt);
    case Mode::principalize:
        if (spec.b != 1) throw ProblemError(0, 0, "", "principalize uses b = 1");
        return principalize(p.pair, p.ideal, opt);
    }
    throw ProblemError(0, 0, "", "unknown mode");
}

}  // namespace desing::cli
