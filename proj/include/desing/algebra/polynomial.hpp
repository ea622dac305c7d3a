#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace desing {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr std::size_t kMaxVars = 40;

// Raised when a configured computational budget is exceeded.
class ResourceError : public std::runtime_error {
public:
    ResourceError(std::string budget, const std::string& what)
        : std::runtime_error(what), budget_(std::move(budget)) {}
    const std::string& budget() const { return budget_; }

private:
    std::string budget_;
};

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars);
    static Monomial variable(std::size_t nvars, std::size_t index, unsigned power = 1);

    std::size_t size() const { return n_; }
    unsigned operator[](std::size_t i) const { return e_[i]; }
    unsigned degree() const { return deg_; }
    void set(std::size_t i, unsigned v);

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    // Requires divides(o); returns o / *this.
    Monomial quotient_of(const Monomial& o) const;
    Monomial lcm(const Monomial& o) const;
    bool coprime(const Monomial& o) const;
    Monomial extended(std::size_t nvars) const;

    bool operator==(const Monomial& o) const { return n_ == o.n_ && e_ == o.e_; }
    std::size_t hash() const;

private:
    std::array<std::uint16_t, kMaxVars> e_{};
    std::uint8_t n_ = 0;
    std::uint32_t deg_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// Degree-reverse-lexicographic comparison, returns <0, 0, >0.
int cmp_degrevlex(const Monomial& a, const Monomial& b);

class MonomialOrder {
public:
    enum class Kind { degrevlex, lex, block };

    static MonomialOrder degrevlex() { return MonomialOrder(Kind::degrevlex, 0); }
    static MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
    // Variables [0, split) form the first block; each block is degrevlex.
    static MonomialOrder block(std::size_t split) { return MonomialOrder(Kind::block, split); }

    Kind kind() const { return kind_; }
    std::size_t split() const { return split_; }
    int compare(const Monomial& a, const Monomial& b) const;
    bool operator==(const MonomialOrder& o) const { return kind_ == o.kind_ && split_ == o.split_; }

private:
    MonomialOrder(Kind k, std::size_t s) : kind_(k), split_(s) {}
    Kind kind_;
    std::size_t split_;
};

struct Term {
    Monomial mono;
    Rational coef;
};

// Sparse polynomial with rational coefficients. Terms are kept sorted by
// descending degrevlex with no zero coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial variable(std::size_t nvars, std::size_t index);
    static Polynomial monomial(const Monomial& m, const Rational& c);
    static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);

    std::size_t nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    unsigned total_degree() const;
    unsigned degree_in(std::size_t var) const;
    // Lowest total degree among the terms (the order at the origin).
    unsigned order_at_origin() const;
    bool uses_variable(std::size_t var) const;
    const Term& leading() const { return terms_.front(); }
    std::size_t length() const { return terms_.size(); }

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial mul_term(const Monomial& m, const Rational& c) const;
    Polynomial pow(unsigned n) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }
    // Total order used only for deterministic containers.
    bool operator<(const Polynomial& o) const;

    Polynomial derivative(std::size_t var) const;
    // Scales so the leading coefficient (degrevlex) is 1.
    Polynomial monic() const;
    // Integer coefficients with gcd 1 and positive leading coefficient.
    Polynomial primitive() const;

    // Replaces variable i by images[i]; images live in a ring of target_nvars.
    Polynomial substitute(const std::vector<Polynomial>& images, std::size_t target_nvars) const;
    Polynomial extended(std::size_t nvars) const;
    // Highest k with var^k dividing every term.
    unsigned variable_valuation(std::size_t var) const;
    Polynomial divide_by_variable(std::size_t var, unsigned k) const;

    std::size_t hash() const;

private:
    void normalize_sorted_merge();
    std::size_t nvars_ = 0;
    std::vector<Term> terms_;
};

// Variable naming for parsing and printing.
class Ring {
public:
    Ring() = default;
    explicit Ring(std::vector<std::string> names);
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    // -1 when absent.
    long index_of(const std::string& name) const;
    Ring with_variable(const std::string& name) const;
    std::string fresh_name(const std::string& stem) const;

    Polynomial var(std::size_t i) const { return Polynomial::variable(size(), i); }
    Polynomial var(const std::string& name) const;
    Polynomial constant(const Rational& c) const { return Polynomial::constant(size(), c); }

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
};

struct ParseError : std::runtime_error {
    ParseError(std::size_t col, std::string token, const std::string& msg)
        : std::runtime_error(msg), column(col), token(std::move(token)) {}
    std::size_t column;
    std::string token;
};

Polynomial parse_polynomial(const Ring& ring, const std::string& text);
std::string to_string(const Polynomial& p, const Ring& ring);
std::string to_string(const Rational& q);

}  // namespace desing
