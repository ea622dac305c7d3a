#pragma once

#include <compare>
#include <string>
#include <vector>

#include "desing/algebra/polynomial.hpp"

namespace desing {

// Monomial-case value (-p, omega, ell) with ell padded by zeros.
struct Gamma {
    int neg_p = 0;
    Rational omega;
    std::vector<int> ell;
};

// Element of T = {inf} + (Q x Z) + Gamma; inf is greatest, every (Q x Z) element exceeds every Gamma element.
class TElem {
public:
    enum class Kind { gamma = 0, pair = 1, infinity = 2 };

    static TElem infinity() { return TElem(Kind::infinity); }
    static TElem pair(Rational w, int n);
    static TElem gamma(Gamma g);

    Kind kind() const { return kind_; }
    const Rational& word() const { return w_; }
    int n() const { return n_; }
    const Gamma& gamma_value() const { return g_; }

    std::strong_ordering operator<=>(const TElem& o) const;
    bool operator==(const TElem& o) const { return (*this <=> o) == 0; }

private:
    explicit TElem(Kind k) : kind_(k) {}
    Kind kind_;
    Rational w_;
    int n_ = 0;
    Gamma g_;
};

// Element of I_d: d components compared lexicographically.
using Composite = std::vector<TElem>;

std::strong_ordering compare(const Composite& a, const Composite& b);
inline bool less(const Composite& a, const Composite& b) { return compare(a, b) < 0; }

// (d - r) copies of (1,0) followed by r infinities.
Composite stopping_value(std::size_t d, std::size_t r);

std::string to_string(const TElem& t);
std::string to_string(const Composite& c);
// Inverse of to_string for a single element; throws std::invalid_argument on malformed text.
TElem parse_telem(const std::string& text);

}  // namespace desing
