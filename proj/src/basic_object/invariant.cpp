#include "desing/basic_object/invariant.hpp"

#include <stdexcept>

namespace desing {

namespace {

std::strong_ordering cmp_rational(const Rational& a, const Rational& b) {
    int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
    q.canonicalize();
    return q;
}

std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '[' || ch == '(') ++depth;
        if (ch == ']' || ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

TElem TElem::pair(Rational w, int n) {
    TElem t(Kind::pair);
    t.w_ = std::move(w);
    t.n_ = n;
    return t;
}

TElem TElem::gamma(Gamma g) {
    TElem t(Kind::gamma);
    t.g_ = std::move(g);
    return t;
}

std::strong_ordering TElem::operator<=>(const TElem& o) const {
    if (kind_ != o.kind_) return int(kind_) <=> int(o.kind_);
    switch (kind_) {
    case Kind::infinity:
        return std::strong_ordering::equal;
    case Kind::pair:
        if (auto c = cmp_rational(w_, o.w_); c != 0) return c;
        return n_ <=> o.n_;
    case Kind::gamma: {
        if (auto c = g_.neg_p <=> o.g_.neg_p; c != 0) return c;
        if (auto c = cmp_rational(g_.omega, o.g_.omega); c != 0) return c;
        std::size_t len = std::max(g_.ell.size(), o.g_.ell.size());
        for (std::size_t i = 0; i < len; ++i) {
            int a = i < g_.ell.size() ? g_.ell[i] : 0;
            int b = i < o.g_.ell.size() ? o.g_.ell[i] : 0;
            if (auto c = a <=> b; c != 0) return c;
        }
        return std::strong_ordering::equal;
    }
    }
    return std::strong_ordering::equal;
}

std::strong_ordering compare(const Composite& a, const Composite& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    return a.size() <=> b.size();
}

Composite stopping_value(std::size_t d, std::size_t r) {
    if (r > d) throw std::invalid_argument("dimension of the subvariety exceeds the ambient dimension");
    Composite c;
    for (std::size_t i = 0; i < d - r; ++i) c.push_back(TElem::pair(1, 0));
    for (std::size_t i = 0; i < r; ++i) c.push_back(TElem::infinity());
    return c;
}

std::string to_string(const TElem& t) {
    switch (t.kind()) {
    case TElem::Kind::infinity:
        return "inf";
    case TElem::Kind::pair:
        return "(" + to_string(t.word()) + "," + std::to_string(t.n()) + ")";
    case TElem::Kind::gamma: {
        std::string s = "(" + std::to_string(t.gamma_value().neg_p) + "," + to_string(t.gamma_value().omega) + ",[";
        for (std::size_t i = 0; i < t.gamma_value().ell.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(t.gamma_value().ell[i]);
        }
        return s + "])";
    }
    }
    return "";
}

std::string to_string(const Composite& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ", ";
        s += to_string(c[i]);
    }
    return s + ")";
}

TElem parse_telem(const std::string& text) {
    if (text == "inf") return TElem::infinity();
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') throw std::invalid_argument("malformed value: " + text);
    auto parts = split_top(text.substr(1, text.size() - 2));
    if (parts.size() == 2) return TElem::pair(parse_rational(parts[0]), std::stoi(parts[1]));
    if (parts.size() == 3) {
        Gamma g;
        g.neg_p = std::stoi(parts[0]);
        g.omega = parse_rational(parts[1]);
        const std::string& l = parts[2];
        if (l.size() < 2 || l.front() != '[' || l.back() != ']') throw std::invalid_argument("malformed index tuple: " + l);
        std::string inner = l.substr(1, l.size() - 2);
        if (!inner.empty())
            for (const auto& e : split_top(inner)) g.ell.push_back(std::stoi(e));
        return TElem::gamma(std::move(g));
    }
    throw std::invalid_argument("malformed value: " + text);
}

}  // namespace desing
