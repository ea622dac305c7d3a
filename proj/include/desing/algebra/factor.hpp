#pragma once

#include "desing/algebra/polynomial.hpp"

namespace desing {

struct SquarefreeFactor {
    Polynomial factor;
    unsigned multiplicity;
};

// Primitive integer-coefficient gcd with positive leading coefficient.
Polynomial multivariate_gcd(const Polynomial& f, const Polynomial& g);

// f = unit * prod factor^multiplicity; factors pairwise coprime, multiplicities increasing.
std::vector<SquarefreeFactor> squarefree_decomposition(const Polynomial& f);

Polynomial partial_derivative(const Polynomial& f, std::size_t var);

}  // namespace desing
