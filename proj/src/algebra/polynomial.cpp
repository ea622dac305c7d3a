#include "desing/algebra/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace desing {

Monomial::Monomial(std::size_t nvars) : n_(static_cast<std::uint8_t>(nvars)) {
    if (nvars > kMaxVars) throw ResourceError("variables", "too many variables in one ring");
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, unsigned power) {
    Monomial m(nvars);
    m.set(index, power);
    return m;
}

void Monomial::set(std::size_t i, unsigned v) {
    if (v > 0xFFFF) throw ResourceError("degree", "exponent overflow");
    deg_ = deg_ - e_[i] + v;
    e_[i] = static_cast<std::uint16_t>(v);
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < n_; ++i) {
        unsigned v = unsigned(e_[i]) + o.e_[i];
        if (v > 0xFFFF) throw ResourceError("degree", "exponent overflow");
        r.e_[i] = static_cast<std::uint16_t>(v);
    }
    r.deg_ = deg_ + o.deg_;
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    for (std::size_t i = 0; i < n_; ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
    Monomial r(o);
    for (std::size_t i = 0; i < n_; ++i) r.e_[i] = static_cast<std::uint16_t>(o.e_[i] - e_[i]);
    r.deg_ = o.deg_ - deg_;
    return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
    Monomial r(n_);
    for (std::size_t i = 0; i < n_; ++i) r.set(i, std::max(e_[i], o.e_[i]));
    return r;
}

bool Monomial::coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < n_; ++i)
        if (e_[i] && o.e_[i]) return false;
    return true;
}

Monomial Monomial::extended(std::size_t nvars) const {
    Monomial r(nvars);
    for (std::size_t i = 0; i < std::min<std::size_t>(n_, nvars); ++i) r.set(i, e_[i]);
    return r;
}

std::size_t Monomial::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < n_; ++i) h = (h ^ e_[i]) * 1099511628211ull;
    return h;
}

int cmp_degrevlex(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
        case Kind::degrevlex:
            return cmp_degrevlex(a, b);
        case Kind::lex:
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
            return 0;
        case Kind::block: {
            auto block_cmp = [&](std::size_t lo, std::size_t hi) {
                unsigned da = 0, db = 0;
                for (std::size_t i = lo; i < hi; ++i) da += a[i], db += b[i];
                if (da != db) return da > db ? 1 : -1;
                for (std::size_t i = hi; i-- > lo;)
                    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
                return 0;
            };
            std::size_t s = std::min(split_, a.size());
            if (int c = block_cmp(0, s)) return c;
            return block_cmp(s, a.size());
        }
    }
    return 0;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    if (c != 0) p.terms_.push_back({Monomial(nvars), c});
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw AlgebraError("variable index out of range");
    return monomial(Monomial::variable(nvars, index), 1);
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
    Polynomial p(m.size());
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
    Polynomial p(nvars);
    p.terms_ = std::move(terms);
    std::sort(p.terms_.begin(), p.terms_.end(),
              [](const Term& a, const Term& b) { return cmp_degrevlex(a.mono, b.mono) > 0; });
    p.normalize_sorted_merge();
    return p;
}

void Polynomial::normalize_sorted_merge() {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coef += t.coef;
        } else {
            if (!out.empty() && out.back().coef == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().coef == 0) out.pop_back();
    terms_ = std::move(out);
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0);
}

Rational Polynomial::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.degree() == 0) return terms_.back().coef;
    return 0;
}

unsigned Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

unsigned Polynomial::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono[var]);
    return d;
}

unsigned Polynomial::order_at_origin() const { return terms_.empty() ? 0 : terms_.back().mono.degree(); }

bool Polynomial::uses_variable(std::size_t var) const {
    for (const auto& t : terms_)
        if (t.mono[var]) return true;
    return false;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

static void check_same_ring(std::size_t a, std::size_t b) {
    if (a != b) throw AlgebraError("polynomials live in rings of different size");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_same_ring(nvars_, o.nvars_);
    Polynomial r(nvars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        int c = i == terms_.size()     ? -1
                : j == o.terms_.size() ? 1
                                       : cmp_degrevlex(terms_[i].mono, o.terms_[j].mono);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Rational s = terms_[i].coef + o.terms_[j].coef;
            if (s != 0) r.terms_.push_back({terms_[i].mono, s});
            ++i, ++j;
        }
    }
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_same_ring(nvars_, o.nvars_);
    if (is_zero() || o.is_zero()) return Polynomial(nvars_);
    std::vector<Term> out;
    out.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) out.push_back({a.mono * b.mono, a.coef * b.coef});
    return from_terms(nvars_, std::move(out));
}

Polynomial Polynomial::operator*(const Rational& c) const {
    if (c == 0) return Polynomial(nvars_);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coef *= c;
    return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
    if (c == 0) return Polynomial(nvars_);
    Polynomial r(nvars_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
    return r;
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial result = constant(nvars_, 1);
    Polynomial base = *this;
    while (n) {
        if (n & 1u) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coef != o.terms_[i].coef) return false;
    return true;
}

bool Polynomial::operator<(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size();
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (int c = cmp_degrevlex(terms_[i].mono, o.terms_[i].mono)) return c < 0;
        if (terms_[i].coef != o.terms_[i].coef) return terms_[i].coef < o.terms_[i].coef;
    }
    return false;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    if (var >= nvars_) throw AlgebraError("derivative variable out of range");
    std::vector<Term> out;
    for (const auto& t : terms_) {
        unsigned e = t.mono[var];
        if (!e) continue;
        Monomial m = t.mono;
        m.set(var, e - 1);
        out.push_back({m, t.coef * e});
    }
    return from_terms(nvars_, std::move(out));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    Rational inv = 1 / terms_.front().coef;
    return *this * inv;
}

Polynomial Polynomial::primitive() const {
    if (is_zero()) return *this;
    Integer g = 0, l = 1;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
    }
    Rational scale(l, g);
    scale.canonicalize();
    if (terms_.front().coef < 0) scale = -scale;
    return *this * scale;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images, std::size_t target_nvars) const {
    if (images.size() != nvars_) throw AlgebraError("substitution arity mismatch");
    Polynomial result(target_nvars);
    std::vector<std::vector<Polynomial>> powers(nvars_);
    auto power_of = [&](std::size_t v, unsigned e) -> const Polynomial& {
        auto& cache = powers[v];
        if (cache.empty()) cache.push_back(Polynomial::constant(target_nvars, 1));
        while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
        return cache[e];
    };
    std::vector<Term> acc;
    for (const auto& t : terms_) {
        Polynomial term = Polynomial::constant(target_nvars, t.coef);
        for (std::size_t v = 0; v < nvars_ && !term.is_zero(); ++v)
            if (t.mono[v]) term = term * power_of(v, t.mono[v]);
        for (auto& tt : term.terms_) acc.push_back(std::move(tt));
    }
    return from_terms(target_nvars, std::move(acc));
}

Polynomial Polynomial::extended(std::size_t nvars) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        for (std::size_t i = nvars; i < nvars_; ++i)
            if (t.mono[i]) throw AlgebraError("cannot drop a variable in use");
        out.push_back({t.mono.extended(nvars), t.coef});
    }
    return from_terms(nvars, std::move(out));
}

unsigned Polynomial::variable_valuation(std::size_t var) const {
    if (is_zero()) return 0xFFFF;
    unsigned k = 0xFFFF;
    for (const auto& t : terms_) k = std::min(k, t.mono[var]);
    return k;
}

Polynomial Polynomial::divide_by_variable(std::size_t var, unsigned k) const {
    Polynomial r(*this);
    for (auto& t : r.terms_) {
        if (t.mono[var] < k) throw AlgebraError("inexact division by variable power");
        t.mono.set(var, t.mono[var] - k);
    }
    return r;
}

std::size_t Polynomial::hash() const {
    std::size_t h = nvars_;
    for (const auto& t : terms_) {
        h = h * 31 + t.mono.hash();
        h = h * 31 + mpz_get_ui(t.coef.get_num_mpz_t()) + 7 * mpz_get_ui(t.coef.get_den_mpz_t());
    }
    return h;
}

Ring::Ring(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > kMaxVars) throw ResourceError("variables", "too many variables in one ring");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!index_.emplace(names_[i], i).second) throw AlgebraError("duplicate variable " + names_[i]);
    }
}

long Ring::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : long(it->second);
}

Ring Ring::with_variable(const std::string& name) const {
    auto n = names_;
    n.push_back(name);
    return Ring(std::move(n));
}

std::string Ring::fresh_name(const std::string& stem) const {
    if (index_of(stem) < 0) return stem;
    for (std::size_t k = 1;; ++k) {
        std::string candidate = stem + std::to_string(k);
        if (index_of(candidate) < 0) return candidate;
    }
}

Polynomial Ring::var(const std::string& name) const {
    long i = index_of(name);
    if (i < 0) throw AlgebraError("unknown variable " + name);
    return var(std::size_t(i));
}

namespace {

class Parser {
public:
    Parser(const Ring& ring, const std::string& s) : ring_(ring), s_(s) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip();
        if (pos_ < s_.size()) fail("unexpected token");
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) {
        std::size_t end = pos_;
        while (end < s_.size() && !std::isspace(static_cast<unsigned char>(s_[end]))) ++end;
        std::string tok = pos_ < s_.size() ? s_.substr(pos_, std::max<std::size_t>(1, end - pos_)) : "<end>";
        throw ParseError(pos_ + 1, tok, msg + " at column " + std::to_string(pos_ + 1) + " near '" + tok + "'");
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    Polynomial expr() {
        Polynomial acc(ring_.size());
        bool first = true;
        for (;;) {
            skip();
            int sign = 1;
            if (peek('+') || peek('-')) {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            Polynomial t = term();
            acc = sign > 0 ? acc + t : acc - t;
            first = false;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial t = factor();
        while (peek('*')) {
            ++pos_;
            t = t * factor();
        }
        skip();
        if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(' ||
                                 s_[pos_] == '_'))
            fail("implicit multiplication is not allowed");
        return t;
    }

    Polynomial factor() {
        Polynomial base = primary();
        if (peek('^')) {
            ++pos_;
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            unsigned long e = std::stoul(s_.substr(start, pos_ - start));
            if (e > 0xFFFF) fail("exponent too large");
            base = base.pow(unsigned(e));
        }
        return base;
    }

    Integer integer() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return Integer(s_.substr(start, pos_ - start));
    }

    Polynomial primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = integer();
            Integer den = 1;
            skip();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                skip();
                if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    fail("expected denominator");
                den = integer();
                if (den == 0) fail("zero denominator");
            }
            Rational q(num, den);
            q.canonicalize();
            return ring_.constant(q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            long idx = ring_.index_of(name);
            if (idx < 0) {
                pos_ = start;
                fail("unknown variable '" + name + "'");
            }
            return ring_.var(std::size_t(idx));
        }
        fail("unexpected character");
    }

    const Ring& ring_;
    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const Ring& ring, const std::string& text) { return Parser(ring, text).parse(); }

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Polynomial& p, const Ring& ring) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        Rational c = t.coef;
        if (c < 0) {
            os << (first ? "-" : " - ");
            c = -c;
        } else if (!first) {
            os << " + ";
        }
        first = false;
        bool unit = c == 1;
        bool wrote = false;
        if (!unit || t.mono.degree() == 0) {
            os << to_string(c);
            wrote = true;
        }
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            if (!t.mono[i]) continue;
            if (wrote) os << "*";
            os << ring.name(i);
            if (t.mono[i] > 1) os << "^" << t.mono[i];
            wrote = true;
        }
    }
    return os.str();
}

}  // namespace desing
