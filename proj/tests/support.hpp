#pragma once

#include <random>
#include <string>

#include "desing/algebra/ideal.hpp"

namespace testing_support {

using namespace desing;

inline Polynomial P(const Ring& r, const std::string& s) { return parse_polynomial(r, s); }

inline Ideal I(const Ring& r, std::initializer_list<const char*> gens) {
    std::vector<Polynomial> g;
    for (const char* s : gens) g.push_back(parse_polynomial(r, s));
    return Ideal(r.size(), std::move(g));
}

inline Polynomial random_poly(std::mt19937& rng, std::size_t nvars, unsigned max_deg, int terms,
                              int coef_range = 5) {
    std::uniform_int_distribution<int> deg(0, int(max_deg));
    std::uniform_int_distribution<int> coef(-coef_range, coef_range);
    std::vector<Term> t;
    for (int k = 0; k < terms; ++k) {
        Monomial m(nvars);
        unsigned budget = unsigned(deg(rng));
        for (std::size_t v = 0; v < nvars && budget; ++v) {
            unsigned e = std::uniform_int_distribution<unsigned>(0, budget)(rng);
            m.set(v, e);
            budget -= e;
        }
        int c = coef(rng);
        if (c) t.push_back({m, Rational(c)});
    }
    return Polynomial::from_terms(nvars, std::move(t));
}

}  // namespace testing_support
