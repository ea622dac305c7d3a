#include "desing/algebra/factor.hpp"

#include "desing/algebra/ideal.hpp"

namespace desing {

namespace {

long main_variable(const Polynomial& f, const Polynomial& g) {
    for (std::size_t v = f.nvars(); v-- > 0;)
        if (f.uses_variable(v) || g.uses_variable(v)) return long(v);
    return -1;
}

Polynomial coefficient_in(const Polynomial& f, std::size_t v, unsigned k) {
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        if (t.mono[v] != k) continue;
        Monomial m = t.mono;
        m.set(v, 0);
        out.push_back({m, t.coef});
    }
    return Polynomial::from_terms(f.nvars(), std::move(out));
}

Polynomial content_in(const Polynomial& f, std::size_t v) {
    Polynomial c(f.nvars());
    unsigned d = f.degree_in(v);
    for (unsigned k = 0; k <= d; ++k) {
        Polynomial ck = coefficient_in(f, v, k);
        if (ck.is_zero()) continue;
        c = multivariate_gcd(c, ck);
        if (c.is_constant()) break;
    }
    return c;
}

Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, std::size_t v) {
    unsigned db = b.degree_in(v);
    Polynomial lb = coefficient_in(b, v, db);
    while (!a.is_zero() && a.degree_in(v) >= db) {
        unsigned da = a.degree_in(v);
        Polynomial la = coefficient_in(a, v, da);
        Polynomial shift = Polynomial::monomial(Monomial::variable(a.nvars(), v, da - db), 1);
        a = lb * a - la * shift * b;
    }
    return a;
}

Polynomial primitive_part_in(const Polynomial& f, std::size_t v) {
    if (f.is_zero()) return f;
    return divide_exact(f, content_in(f, v)).primitive();
}

}  // namespace

Polynomial multivariate_gcd(const Polynomial& f, const Polynomial& g) {
    if (f.nvars() != g.nvars()) throw AlgebraError("gcd: mismatched variable count");
    if (f.is_zero() && g.is_zero()) return f;
    if (f.is_zero()) return g.primitive();
    if (g.is_zero()) return f.primitive();
    if (f.is_constant() || g.is_constant()) return Polynomial::constant(f.nvars(), 1);
    long mv = main_variable(f, g);
    std::size_t v = std::size_t(mv);
    if (!f.uses_variable(v)) return multivariate_gcd(f, content_in(g, v));
    if (!g.uses_variable(v)) return multivariate_gcd(content_in(f, v), g);

    Polynomial cf = content_in(f, v), cg = content_in(g, v);
    Polynomial content = multivariate_gcd(cf, cg);
    Polynomial a = divide_exact(f, cf), b = divide_exact(g, cg);
    if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
    while (!b.is_zero() && b.uses_variable(v)) {
        Polynomial r = pseudo_remainder(a, b, v);
        a = std::move(b);
        b = primitive_part_in(r, v);
    }
    Polynomial last = b.is_zero() ? primitive_part_in(a, v) : Polynomial::constant(f.nvars(), 1);
    return (content * last).primitive();
}

std::vector<SquarefreeFactor> squarefree_decomposition(const Polynomial& f) {
    if (f.is_zero()) throw AlgebraError("squarefree decomposition of zero");
    std::vector<SquarefreeFactor> out;
    if (f.is_constant()) return out;
    Polynomial a = f.primitive();
    for (std::size_t v = 0; v < f.nvars(); ++v)
        if (f.uses_variable(v)) a = multivariate_gcd(a, f.derivative(v));
    Polynomial b = divide_exact(f, a).primitive();
    unsigned m = 1;
    while (!b.is_constant()) {
        Polynomial c = multivariate_gcd(a, b);
        Polynomial piece = divide_exact(b, c).primitive();
        if (!piece.is_constant()) out.push_back({piece, m});
        a = divide_exact(a, c);
        b = c;
        ++m;
    }
    return out;
}

Polynomial partial_derivative(const Polynomial& f, std::size_t var) { return f.derivative(var); }

}  // namespace desing
