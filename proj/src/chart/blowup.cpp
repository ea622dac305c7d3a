#include <algorithm>

#include "desing/chart/chart.hpp"

namespace desing {

namespace {

std::optional<std::size_t> as_variable(const Polynomial& p) {
    if (p.length() != 1 || p.leading().coef != 1 || p.leading().mono.degree() != 1) return std::nullopt;
    for (std::size_t v = 0; v < p.nvars(); ++v)
        if (p.leading().mono[v]) return v;
    return std::nullopt;
}

Polynomial determinant(std::vector<std::vector<Polynomial>> m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    std::size_t nv = m[0][0].nvars();
    Polynomial det(nv);
    for (std::size_t col = 0; col < n; ++col) {
        if (m[0][col].is_zero()) continue;
        std::vector<std::vector<Polynomial>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Polynomial> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != col) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Polynomial term = m[0][col] * determinant(std::move(minor));
        det = col % 2 ? det - term : det + term;
    }
    return det;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::size_t>> choose(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    subsets(n, k, 0, cur, out);
    return out;
}

std::vector<Polynomial> minors(const std::vector<std::vector<Polynomial>>& jac, std::size_t k) {
    std::vector<Polynomial> out;
    if (jac.empty() || k == 0 || k > jac.size() || k > jac[0].size()) return out;
    for (const auto& rows : choose(jac.size(), k))
        for (const auto& cols : choose(jac[0].size(), k)) {
            std::vector<std::vector<Polynomial>> m;
            for (auto r : rows) {
                std::vector<Polynomial> row;
                for (auto c : cols) row.push_back(jac[r][c]);
                m.push_back(std::move(row));
            }
            Polynomial d = determinant(std::move(m));
            if (!d.is_zero()) out.push_back(d);
        }
    return out;
}

Polynomial strip_factor(Polynomial h, const Polynomial& e) {
    if (h.is_zero()) return h;
    for (;;) {
        auto q = try_divide(h, e);
        if (!q) return h;
        h = std::move(*q);
    }
}

}  // namespace

bool is_smooth(const Chart& c, const Ideal& z, std::size_t codim) {
    if (c.is_empty(z)) return true;
    if (codim == 0) {
        for (const auto& g : z.generators())
            if (!c.is_zero_on(g)) return false;
        return true;
    }
    std::vector<std::vector<Polynomial>> jac;
    for (const auto& g : z.generators()) {
        std::vector<Polynomial> row;
        for (std::size_t j = 0; j < c.dim(); ++j) row.push_back(c.derive(g, j));
        jac.push_back(std::move(row));
    }
    auto top = minors(jac, codim);
    if (!c.is_empty(ideal_sum(z, Ideal(c.nvars(), top)))) return false;
    for (const auto& m : minors(jac, codim + 1))
        if (!c.vanishes_on(z, m)) return false;
    return true;
}

bool has_normal_crossings(const Chart& c, const std::vector<Ideal>& hyps) {
    std::size_t n = hyps.size();
    std::vector<std::vector<std::size_t>> frontier{{}};
    for (std::size_t size = 1; size <= n; ++size) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& base : frontier) {
            std::size_t start = base.empty() ? 0 : base.back() + 1;
            for (std::size_t i = start; i < n; ++i) {
                auto s = base;
                s.push_back(i);
                Ideal sum = Ideal::zero(c.nvars());
                for (auto k : s) sum = ideal_sum(sum, hyps[k]);
                if (c.is_empty(sum)) continue;
                if (!is_smooth(c, sum, s.size())) return false;
                next.push_back(std::move(s));
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return true;
}

std::vector<Exchange> cover_and_exchange(const Chart& c, const Polynomial& f, const Ideal& target,
                                         const std::vector<std::size_t>& avoid) {
    if (auto idx = c.parameter_index(f)) return {Exchange{c, RingMap::identity(c.nvars()), *idx}};
    std::vector<Polynomial> g;
    for (std::size_t j = 0; j < c.dim(); ++j) g.push_back(c.derive(f, j));
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < c.dim(); ++j)
        if (std::find(avoid.begin(), avoid.end(), j) == avoid.end()) order.push_back(j);
    for (std::size_t j : avoid)
        if (j < c.dim()) order.push_back(j);

    std::vector<std::size_t> chosen;
    for (std::size_t j : order) {
        if (g[j].is_zero()) continue;
        if (c.is_empty(ideal_sum(target, Ideal::principal(g[j])))) {
            chosen = {j};
            break;
        }
    }
    if (chosen.empty()) {
        Ideal acc = target;
        for (std::size_t j : order) {
            if (g[j].is_zero()) continue;
            Ideal next = ideal_sum(acc, Ideal::principal(g[j]));
            if (c.same_locus(next, acc)) continue;
            chosen.push_back(j);
            acc = next;
            if (c.is_empty(acc)) break;
        }
        if (!c.is_empty(acc)) throw ChartError("no unit derivative: the function has order >= 2 on the target");
    }

    std::vector<Exchange> out;
    for (std::size_t j : chosen) {
        Chart ex = c.exchanged(j, f);
        std::size_t n = c.nvars();
        Ring ring = c.ring().with_variable(c.ring().fresh_name("w"));
        RingMap widen;
        widen.target_nvars = n + 1;
        for (std::size_t i = 0; i < n; ++i) widen.images.push_back(Polynomial::variable(n + 1, i));
        Chart wide;
        ChartAccess::ring(wide) = ring;
        Polynomial w = Polynomial::variable(n + 1, n);
        for (const auto& d : ex.dependencies()) ChartAccess::deps(wide).push_back(widen(d));
        ChartAccess::deps(wide).push_back(w - widen(f));
        for (std::size_t k = 0; k < ex.dim(); ++k)
            ChartAccess::params(wide).push_back(k == j ? w : widen(ex.parameters()[k]));
        for (const auto& s : ex.scales()) ChartAccess::scales(wide).push_back(widen(s));
        for (const auto& row : ex.deriv_matrix()) {
            std::vector<Polynomial> r;
            for (const auto& e : row) r.push_back(widen(e));
            ChartAccess::deriv(wide).push_back(std::move(r));
        }
        std::vector<Polynomial> wrow;
        for (std::size_t k = 0; k < ex.dim(); ++k)
            wrow.push_back(k == j ? widen(ex.scales()[j]) : Polynomial(n + 1));
        ChartAccess::deriv(wide).push_back(std::move(wrow));
        for (const auto& q : ex.inequations()) ChartAccess::ineqs(wide).push_back(widen(q));
        ChartChange simp = simplify(wide);
        out.push_back(Exchange{std::move(simp.chart), widen.then(simp.map), j});
    }
    return out;
}

std::vector<BlowUpChild> blow_up(const Pair& pair, const std::vector<std::size_t>& center, int new_label,
                                 int new_birth, bool check) {
    const Chart& c = pair.chart;
    if (center.empty()) throw ChartError("empty blow-up center");
    for (std::size_t i = 0; i < center.size(); ++i) {
        if (center[i] >= c.dim()) throw ChartError("center parameter out of range");
        for (std::size_t j = 0; j < i; ++j)
            if (center[i] == center[j]) throw ChartError("repeated center parameter");
    }
    if (check) {
        for (const auto& d : pair.divisors)
            if (!c.parameter_index(d.equation) && !c.is_unit(d.equation))
                throw ChartError("center does not have normal crossings with the divisors");
    }
    const std::size_t r = center.size();
    const std::size_t n = c.nvars();
    std::vector<BlowUpChild> out;

    for (std::size_t k = 0; k < r; ++k) {
        const Polynomial& e = c.parameters()[center[k]];
        std::vector<std::string> names = c.ring().names();
        std::vector<std::optional<std::size_t>> elim(r);
        std::vector<std::size_t> tvar(r, 0);
        Ring probe(names);
        for (std::size_t l = 0; l < r; ++l) {
            if (l == k) continue;
            auto v = as_variable(c.parameters()[center[l]]);
            if (v && !e.uses_variable(*v) && c.dependencies().empty()) {
                elim[l] = *v;
                tvar[l] = *v;
            } else {
                std::string name = probe.fresh_name("t");
                probe = probe.with_variable(name);
                tvar[l] = probe.size() - 1;
            }
        }
        const std::size_t N = probe.size();
        RingMap sigma;
        sigma.target_nvars = N;
        Polynomial eN = e.extended(N);
        for (std::size_t i = 0; i < n; ++i) sigma.images.push_back(Polynomial::variable(N, i));
        for (std::size_t l = 0; l < r; ++l)
            if (elim[l]) sigma.images[*elim[l]] = Polynomial::variable(N, *elim[l]) * eN;
        auto T = [&](std::size_t l) { return Polynomial::variable(N, tvar[l]); };

        Chart child;
        ChartAccess::ring(child) = probe;
        for (const auto& d : c.dependencies()) ChartAccess::deps(child).push_back(sigma(d));
        for (std::size_t l = 0; l < r; ++l)
            if (l != k && !elim[l]) ChartAccess::deps(child).push_back(sigma(c.parameters()[center[l]]) - T(l) * eN);

        std::vector<Polynomial> s;
        for (const auto& x : c.scales()) s.push_back(sigma(x));
        auto others_product = [&](std::size_t m) {
            Polynomial p = Polynomial::constant(N, 1);
            for (std::size_t q = 0; q < r; ++q)
                if (q != m) p *= s[center[q]];
            return p;
        };
        Polynomial S = others_product(r);
        std::vector<bool> is_t_row(N, false);
        for (std::size_t l = 0; l < r; ++l)
            if (l != k) is_t_row[tvar[l]] = true;

        auto& deriv = ChartAccess::deriv(child);
        deriv.assign(N, std::vector<Polynomial>(c.dim(), Polynomial(N)));
        for (std::size_t i = 0; i < n; ++i) {
            if (is_t_row[i]) continue;
            const auto& row = c.deriv_matrix()[i];
            for (std::size_t col = 0; col < c.dim(); ++col) {
                auto pos = std::find(center.begin(), center.end(), col);
                if (pos == center.end()) {
                    deriv[i][col] = sigma(row[col]);
                } else if (std::size_t(pos - center.begin()) == k) {
                    Polynomial acc(N);
                    for (std::size_t m = 0; m < r; ++m) {
                        Polynomial coef = m == k ? Polynomial::constant(N, 1) : T(m);
                        acc += others_product(m) * coef * sigma(row[center[m]]);
                    }
                    deriv[i][col] = acc;
                } else {
                    deriv[i][col] = eN * sigma(row[col]);
                }
            }
        }
        for (std::size_t l = 0; l < r; ++l)
            if (l != k) deriv[tvar[l]][center[l]] = s[center[l]];

        auto& scales = ChartAccess::scales(child);
        scales = s;
        scales[center[k]] = S;
        auto& params = ChartAccess::params(child);
        for (const auto& p : c.parameters()) params.push_back(sigma(p));
        params[center[k]] = eN;
        for (std::size_t l = 0; l < r; ++l)
            if (l != k) params[center[l]] = T(l);
        for (const auto& q : c.inequations()) ChartAccess::ineqs(child).push_back(sigma(q));

        std::vector<Divisor> divs;
        for (const auto& d : pair.divisors) {
            Divisor nd = d;
            auto idx = c.parameter_index(d.equation);
            auto pos = idx ? std::find(center.begin(), center.end(), *idx) : center.end();
            if (pos != center.end()) {
                std::size_t l = std::size_t(pos - center.begin());
                if (l == k) continue;
                nd.equation = T(l);
            } else {
                nd.equation = strip_factor(sigma(d.equation), eN);
                if (nd.equation.is_constant()) continue;
            }
            divs.push_back(std::move(nd));
        }
        divs.push_back(Divisor{new_label, new_birth, eN, Sign::plus});

        ChartChange simp = simplify(child);
        BlowUpChild bc;
        bc.map = sigma.then(simp.map);
        bc.pair.chart = std::move(simp.chart);
        for (auto& d : divs) {
            d.equation = simp.map(d.equation);
            if (d.equation.is_constant() || bc.pair.chart.is_unit(d.equation)) continue;
            bc.pair.divisors.push_back(std::move(d));
        }
        if (bc.pair.chart.is_empty(Ideal::zero(bc.pair.chart.nvars()))) continue;
        bc.exceptional_slot = center[k];
        for (std::size_t l = 0; l < r; ++l) bc.center_slots.push_back(l == k ? std::nullopt : std::optional(center[l]));
        out.push_back(std::move(bc));
    }
    return out;
}

Pair restrict_to_hypersurface(const Pair& pair, std::size_t slot, bool eliminate) {
    const Chart& c = pair.chart;
    if (slot >= c.dim()) throw ChartError("restriction slot out of range");
    const Polynomial& z = c.parameters()[slot];
    Pair out;
    out.chart = c.restricted(slot);
    for (const auto& d : pair.divisors) {
        if (d.equation.monic() == z.monic()) throw ChartError("divisor is not transversal to the hypersurface");
        if (out.chart.is_unit(d.equation)) continue;
        auto idx = c.parameter_index(d.equation);
        if (!idx) throw ChartError("divisor is not transversal to the hypersurface");
        out.divisors.push_back(d);
    }
    if (!eliminate) return out;
    ChartChange simp = simplify(out.chart);
    out.chart = std::move(simp.chart);
    for (auto& d : out.divisors) d.equation = simp.map(d.equation);
    return out;
}

namespace {

// Dependencies are all single variables other than v, so they can be set to zero.
bool variable_dependencies_only(const Chart& c, std::size_t v) {
    for (const auto& d : c.dependencies()) {
        auto dv = as_variable(d.monic());
        if (!dv || *dv == v) return false;
    }
    return true;
}

}  // namespace

Polynomial reduce_on(const Chart& c, const Polynomial& f) {
    if (c.dependencies().empty()) return f;
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < c.nvars(); ++i) images.push_back(Polynomial::variable(c.nvars(), i));
    bool any = false;
    for (const auto& d : c.dependencies())
        if (auto dv = as_variable(d.monic())) {
            images[*dv] = Polynomial(c.nvars());
            any = true;
        }
    return any ? f.substitute(images, c.nvars()) : f;
}

Ideal reduce_on(const Chart& c, const Ideal& i) {
    if (c.dependencies().empty()) return i;
    std::vector<Polynomial> g;
    for (const auto& p : i.generators()) {
        Polynomial r = reduce_on(c, p);
        if (!r.is_zero()) g.push_back(std::move(r));
    }
    return Ideal(i.nvars(), std::move(g));
}

unsigned ideal_valuation(const Chart& c, const Ideal& i0, const Polynomial& e) {
    auto v = as_variable(e.monic());
    if (v && variable_dependencies_only(c, *v)) {
        Ideal i = reduce_on(c, i0);
        unsigned k = 0xFFFF;
        for (const auto& g : i.generators()) k = std::min(k, g.variable_valuation(*v));
        if (k == 0xFFFF) throw ChartError("valuation of the zero ideal");
        return k;
    }
    const Ideal& i = i0;
    unsigned k = 0;
    Polynomial power = e;
    for (; k < 4096; ++k) {
        for (const auto& g : i.generators())
            if (!c.contains(Ideal::principal(power), g)) return k;
        power *= e;
    }
    throw ChartError("valuation of an ideal vanishing on the chart");
}

Ideal divide_ideal(const Chart& c, const Ideal& i0, const Polynomial& e, unsigned k) {
    auto v = as_variable(e.monic());
    bool fast = v && variable_dependencies_only(c, *v);
    Ideal i = fast ? reduce_on(c, i0) : i0;
    if (k == 0) return i;
    if (fast) {
        Rational scale = 1 / e.leading().coef;
        std::vector<Polynomial> g;
        for (const auto& p : i.generators()) {
            Rational sk = 1;
            for (unsigned s = 0; s < k; ++s) sk *= scale;
            g.push_back(p.divide_by_variable(*v, k) * sk);
        }
        return Ideal(i.nvars(), std::move(g));
    }
    Polynomial ek = e.pow(k);
    std::vector<Polynomial> g;
    bool syntactic = true;
    for (const auto& p : i.generators()) {
        auto q = try_divide(p, ek);
        if (!q) {
            syntactic = false;
            break;
        }
        g.push_back(std::move(*q));
    }
    if (syntactic) return Ideal(i.nvars(), std::move(g));
    Ideal q = ideal_quotient(c.with_dependencies(i), ek);
    return Ideal(i.nvars(), q.basis());
}

}  // namespace desing
