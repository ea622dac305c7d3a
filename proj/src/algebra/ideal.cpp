#include "desing/algebra/ideal.hpp"

#include <algorithm>
#include <tuple>

namespace desing {

namespace {

thread_local Budget g_budget{};

using TermList = std::vector<Term>;

struct Ordered {
    const MonomialOrder& ord;
    bool operator()(const Term& a, const Term& b) const { return ord.compare(a.mono, b.mono) > 0; }
};

TermList to_ordered(const Polynomial& p, const MonomialOrder& ord) {
    TermList t = p.terms();
    if (ord.kind() != MonomialOrder::Kind::degrevlex) std::sort(t.begin(), t.end(), Ordered{ord});
    return t;
}

// Returns a - c*m*b where the leading terms are known to cancel; a starts at index a0.
TermList sub_mul(const TermList& a, std::size_t a0, const Rational& c, const Monomial& m, const TermList& b,
                 const MonomialOrder& ord) {
    TermList out;
    out.reserve(a.size() - a0 + b.size());
    std::size_t i = a0 + 1, j = 1;
    while (i < a.size() || j < b.size()) {
        if (j == b.size()) {
            out.push_back(a[i++]);
            continue;
        }
        Monomial bm = b[j].mono * m;
        int cmp = i == a.size() ? -1 : ord.compare(a[i].mono, bm);
        if (cmp > 0) {
            out.push_back(a[i++]);
        } else if (cmp < 0) {
            out.push_back({bm, -c * b[j].coef});
            ++j;
        } else {
            Rational s = a[i].coef - c * b[j].coef;
            if (s != 0) out.push_back({a[i].mono, std::move(s)});
            ++i, ++j;
        }
    }
    return out;
}

void make_monic(TermList& t) {
    if (t.empty() || t.front().coef == 1) return;
    Rational inv = 1 / t.front().coef;
    for (auto& x : t) x.coef *= inv;
}

TermList reduce_full(TermList p, const std::vector<const TermList*>& basis, const MonomialOrder& ord) {
    TermList result;
    std::size_t start = 0;
    while (start < p.size()) {
        const Term& lead = p[start];
        const TermList* div = nullptr;
        for (const TermList* g : basis) {
            if (g->front().mono.divides(lead.mono)) {
                div = g;
                break;
            }
        }
        if (!div) {
            result.push_back(p[start]);
            ++start;
            continue;
        }
        Monomial m = div->front().mono.quotient_of(lead.mono);
        Rational c = lead.coef / div->front().coef;
        p = sub_mul(p, start, c, m, *div, ord);
        start = 0;
    }
    return result;
}

void check_coefficients(const TermList& t) {
    const std::size_t cap = g_budget.max_coeff_bits;
    for (const auto& x : t) {
        if (mpz_sizeinbase(x.coef.get_num_mpz_t(), 2) > cap || mpz_sizeinbase(x.coef.get_den_mpz_t(), 2) > cap)
            throw ResourceError("max-coeff-bits", "coefficient bit-length budget exceeded during Groebner basis");
    }
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

}  // namespace

BudgetScope::BudgetScope(const Budget& b) : saved_(g_budget) { g_budget = b; }
BudgetScope::~BudgetScope() { g_budget = saved_; }
const Budget& current_budget() { return g_budget; }

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens, std::size_t nvars,
                                       const MonomialOrder& ord) {
    std::vector<TermList> polys;
    std::vector<bool> active;
    std::vector<Pair> pairs;
    std::size_t processed = 0;

    auto active_basis = [&] {
        std::vector<const TermList*> b;
        for (std::size_t k = 0; k < polys.size(); ++k)
            if (active[k]) b.push_back(&polys[k]);
        return b;
    };

    auto update = [&](TermList h) {
        std::size_t hn = polys.size();
        const Monomial& hl = h.front().mono;
        std::vector<Pair> cand;
        for (std::size_t k = 0; k < polys.size(); ++k)
            if (active[k]) cand.push_back({k, hn, polys[k].front().mono.lcm(hl)});
        std::vector<Pair> kept;
        for (std::size_t a = 0; a < cand.size(); ++a) {
            bool keep = polys[cand[a].i].front().mono.coprime(hl);
            if (!keep) {
                keep = true;
                for (std::size_t b = a + 1; b < cand.size() && keep; ++b)
                    if (cand[b].lcm.divides(cand[a].lcm)) keep = false;
                for (std::size_t b = 0; b < kept.size() && keep; ++b)
                    if (kept[b].lcm.divides(cand[a].lcm)) keep = false;
            }
            if (keep) kept.push_back(cand[a]);
        }
        std::vector<Pair> next;
        for (auto& p : pairs) {
            bool drop = hl.divides(p.lcm) && !(polys[p.i].front().mono.lcm(hl) == p.lcm) &&
                        !(polys[p.j].front().mono.lcm(hl) == p.lcm);
            if (!drop) next.push_back(std::move(p));
        }
        for (auto& p : kept)
            if (!polys[p.i].front().mono.coprime(hl)) next.push_back(std::move(p));
        pairs = std::move(next);
        for (std::size_t k = 0; k < polys.size(); ++k)
            if (active[k] && hl.divides(polys[k].front().mono)) active[k] = false;
        polys.push_back(std::move(h));
        active.push_back(true);
    };

    std::vector<TermList> inputs;
    for (const auto& g : gens) {
        if (g.nvars() != nvars) throw AlgebraError("generator ring size mismatch");
        if (!g.is_zero()) inputs.push_back(to_ordered(g, ord));
    }
    std::sort(inputs.begin(), inputs.end(), [&](const TermList& a, const TermList& b) {
        return ord.compare(a.front().mono, b.front().mono) < 0;
    });
    for (auto& in : inputs) {
        TermList h = reduce_full(std::move(in), active_basis(), ord);
        if (h.empty()) continue;
        make_monic(h);
        if (h.front().mono.degree() == 0) return {Polynomial::constant(nvars, 1)};
        update(std::move(h));
    }

    while (!pairs.empty()) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            int c = ord.compare(pairs[k].lcm, pairs[best].lcm);
            if (c < 0 || (c == 0 && std::tie(pairs[k].j, pairs[k].i) < std::tie(pairs[best].j, pairs[best].i)))
                best = k;
        }
        Pair p = pairs[best];
        pairs.erase(pairs.begin() + long(best));
        if (++processed > g_budget.max_spairs)
            throw ResourceError("max-spairs", "S-pair budget exceeded during Groebner basis");
        const TermList& f = polys[p.i];
        const TermList& g = polys[p.j];
        Monomial mf = f.front().mono.quotient_of(p.lcm);
        Monomial mg = g.front().mono.quotient_of(p.lcm);
        TermList s;
        for (const auto& t : f) s.push_back({t.mono * mf, t.coef / f.front().coef});
        s = sub_mul(s, 0, 1 / g.front().coef, mg, g, ord);
        TermList h = reduce_full(std::move(s), active_basis(), ord);
        if (h.empty()) continue;
        make_monic(h);
        check_coefficients(h);
        if (h.front().mono.degree() == 0) return {Polynomial::constant(nvars, 1)};
        update(std::move(h));
    }

    std::vector<TermList> minimal;
    for (std::size_t k = 0; k < polys.size(); ++k)
        if (active[k]) minimal.push_back(polys[k]);
    std::sort(minimal.begin(), minimal.end(), [&](const TermList& a, const TermList& b) {
        return ord.compare(a.front().mono, b.front().mono) > 0;
    });
    std::vector<Polynomial> out;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
        std::vector<const TermList*> others;
        for (std::size_t l = 0; l < minimal.size(); ++l)
            if (l != k) others.push_back(&minimal[l]);
        TermList head{minimal[k].front()};
        TermList tail(minimal[k].begin() + 1, minimal[k].end());
        TermList red = reduce_full(std::move(tail), others, ord);
        head.insert(head.end(), red.begin(), red.end());
        out.push_back(Polynomial::from_terms(nvars, std::move(head)));
    }
    return out;
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis, const MonomialOrder& ord) {
    std::vector<TermList> b;
    for (const auto& g : basis) b.push_back(to_ordered(g, ord));
    std::vector<const TermList*> ptrs;
    for (const auto& x : b) ptrs.push_back(&x);
    return Polynomial::from_terms(f.nvars(), reduce_full(to_ordered(f, ord), ptrs, ord));
}

std::optional<Polynomial> try_divide(const Polynomial& g, const Polynomial& f) {
    if (f.is_zero()) throw AlgebraError("division by zero polynomial");
    if (f.is_constant()) return g * (1 / f.leading().coef);
    Polynomial rem = g;
    std::vector<Term> q;
    const Term& lf = f.leading();
    while (!rem.is_zero()) {
        const Term& lr = rem.leading();
        if (!lf.mono.divides(lr.mono)) return std::nullopt;
        Monomial m = lf.mono.quotient_of(lr.mono);
        Rational c = lr.coef / lf.coef;
        q.push_back({m, c});
        rem = rem - f.mul_term(m, c);
    }
    return Polynomial::from_terms(g.nvars(), std::move(q));
}

Polynomial divide_exact(const Polynomial& g, const Polynomial& f) {
    auto q = try_divide(g, f);
    if (!q) throw AlgebraError("inexact polynomial division");
    return *q;
}

Ideal::Ideal(std::size_t nvars, std::vector<Polynomial> gens) : nvars_(nvars) {
    for (auto& g : gens) {
        if (g.nvars() != nvars) throw AlgebraError("generator ring size mismatch");
        if (g.is_zero()) continue;
        if (std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(std::move(g));
    }
}

const std::vector<Polynomial>& Ideal::basis() const {
    std::call_once(cache_->once, [&] { cache_->gb = groebner_basis(gens_, nvars_, MonomialOrder::degrevlex()); });
    return cache_->gb;
}

std::vector<Polynomial> Ideal::basis(const MonomialOrder& ord) const {
    if (ord.kind() == MonomialOrder::Kind::degrevlex) return basis();
    return groebner_basis(gens_, nvars_, ord);
}

bool Ideal::is_unit() const {
    for (const auto& g : gens_)
        if (g.is_constant()) return true;
    const auto& b = basis();
    return b.size() == 1 && b[0].is_constant();
}

Polynomial Ideal::reduce(const Polynomial& f) const { return normal_form(f, basis(), MonomialOrder::degrevlex()); }

bool Ideal::contains(const Polynomial& f) const {
    if (f.is_zero()) return true;
    if (is_zero()) return false;
    return reduce(f).is_zero();
}

bool Ideal::contains(const Ideal& other) const {
    for (const auto& g : other.generators())
        if (!contains(g)) return false;
    return true;
}

Ideal Ideal::extended(std::size_t nvars) const {
    std::vector<Polynomial> g;
    for (const auto& p : gens_) g.push_back(p.extended(nvars));
    return Ideal(nvars, std::move(g));
}

Ideal Ideal::substitute(const std::vector<Polynomial>& images, std::size_t target_nvars) const {
    std::vector<Polynomial> g;
    for (const auto& p : gens_) g.push_back(p.substitute(images, target_nvars));
    return Ideal(target_nvars, std::move(g));
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
    if (a.nvars() != b.nvars()) throw AlgebraError("ideal sum: mismatched variable count");
    auto g = a.generators();
    g.insert(g.end(), b.generators().begin(), b.generators().end());
    return Ideal(a.nvars(), std::move(g));
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
    if (a.nvars() != b.nvars()) throw AlgebraError("ideal product: mismatched variable count");
    std::vector<Polynomial> g;
    for (const auto& x : a.generators())
        for (const auto& y : b.generators()) g.push_back(x * y);
    return Ideal(a.nvars(), std::move(g));
}

Ideal ideal_power(const Ideal& a, unsigned n) {
    Ideal r = Ideal::unit(a.nvars());
    for (unsigned k = 0; k < n; ++k) r = ideal_product(r, a);
    return r;
}

Polynomial shift_variables(const Polynomial& f, std::size_t k) {
    std::vector<Polynomial> images;
    std::size_t n = f.nvars() + k;
    for (std::size_t i = 0; i < f.nvars(); ++i) images.push_back(Polynomial::variable(n, i + k));
    return f.substitute(images, n);
}

static Polynomial shift_down(const Polynomial& f, std::size_t k) {
    std::vector<Term> t;
    std::size_t n = f.nvars() - k;
    for (const auto& term : f.terms()) {
        Monomial m(n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, term.mono[i + k]);
        t.push_back({m, term.coef});
    }
    return Polynomial::from_terms(n, std::move(t));
}

Ideal eliminate_leading(const Ideal& a, std::size_t k) {
    auto gb = a.basis(MonomialOrder::block(k));
    std::vector<Polynomial> kept;
    for (const auto& g : gb) {
        bool uses = false;
        for (std::size_t v = 0; v < k && !uses; ++v) uses = g.uses_variable(v);
        if (!uses) kept.push_back(shift_down(g, k));
    }
    return Ideal(a.nvars() - k, std::move(kept));
}

Ideal ideal_intersection(const Ideal& a, const Ideal& b) {
    std::size_t n = a.nvars() + 1;
    Polynomial t = Polynomial::variable(n, 0);
    Polynomial one_minus_t = Polynomial::constant(n, 1) - t;
    std::vector<Polynomial> g;
    for (const auto& p : a.generators()) g.push_back(t * shift_variables(p, 1));
    for (const auto& p : b.generators()) g.push_back(one_minus_t * shift_variables(p, 1));
    return eliminate_leading(Ideal(n, std::move(g)), 1);
}

Ideal ideal_quotient(const Ideal& a, const Polynomial& f) {
    if (f.is_zero()) throw AlgebraError("quotient by zero polynomial");
    if (f.is_constant()) return a;
    if (a.is_unit()) return Ideal::unit(a.nvars());
    Ideal inter = ideal_intersection(a, Ideal::principal(f));
    std::vector<Polynomial> g;
    for (const auto& p : inter.generators()) g.push_back(divide_exact(p, f));
    return Ideal(a.nvars(), std::move(g));
}

Ideal saturate(const Ideal& a, const Polynomial& f) {
    if (f.is_zero()) throw AlgebraError("saturation by zero polynomial");
    if (f.is_constant()) return a;
    std::size_t n = a.nvars() + 1;
    std::vector<Polynomial> g;
    for (const auto& p : a.generators()) g.push_back(shift_variables(p, 1));
    g.push_back(Polynomial::constant(n, 1) - Polynomial::variable(n, 0) * shift_variables(f, 1));
    return eliminate_leading(Ideal(n, std::move(g)), 1);
}

Saturation saturation(const Ideal& a, const Polynomial& f) {
    if (f.is_zero()) throw AlgebraError("saturation by zero polynomial");
    Ideal cur = a;
    unsigned k = 0;
    for (;;) {
        Ideal next = ideal_quotient(cur, f);
        if (cur.contains(next)) return {Ideal(a.nvars(), cur.basis()), k};
        cur = Ideal(a.nvars(), next.basis());
        ++k;
    }
}

bool unit_on_open(const Ideal& a, const Polynomial& g) {
    if (g.is_zero()) return true;
    if (g.is_constant()) return a.is_unit();
    if (a.is_unit()) return true;
    std::size_t n = a.nvars() + 1;
    std::vector<Polynomial> gens;
    for (const auto& p : a.generators()) gens.push_back(shift_variables(p, 1));
    gens.push_back(Polynomial::constant(n, 1) - Polynomial::variable(n, 0) * shift_variables(g, 1));
    return Ideal(n, std::move(gens)).is_unit();
}

bool in_radical(const Ideal& a, const Polynomial& f, const Polynomial& g) {
    if (f.is_zero()) return true;
    if (a.contains(f)) return true;
    return unit_on_open(a, f * g);
}

}  // namespace desing
