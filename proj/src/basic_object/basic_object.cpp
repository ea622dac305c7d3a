#include "desing/basic_object/basic_object.hpp"

#include <algorithm>
#include <set>

#include "desing/algebra/factor.hpp"

namespace desing {

namespace {

const Polynomial& equation(const Pair& pair, int label) {
    const Divisor* d = pair.find(label);
    if (!d) throw BasicObjectError("unknown divisor label " + std::to_string(label));
    return d->equation;
}

bool nonempty(const Chart& c, const Ideal& i) { return !c.is_empty(i); }

Ideal delta_on(const Chart& c, const Ideal& i) { return reduce_on(c, delta(c, i)); }

Ideal delta_power_on(const Chart& c, const Ideal& i, unsigned k) {
    Ideal cur = reduce_on(c, i);
    for (unsigned s = 0; s < k && !cur.is_unit(); ++s) cur = delta_on(c, cur);
    return cur;
}

Rational ratio(unsigned a, unsigned b) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

void append(std::vector<Polynomial>& g, const Ideal& i) { g.insert(g.end(), i.generators().begin(), i.generators().end()); }

Integer ceil_of(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

unsigned ceil_u(const Rational& q) {
    Integer r = ceil_of(q);
    return r <= 0 ? 0u : unsigned(r.get_ui());
}

Integer lcm_of(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

std::vector<int> labels_of(const Pair& pair) {
    std::vector<int> out;
    for (const auto& d : pair.divisors) out.push_back(d.label);
    std::sort(out.begin(), out.end());
    return out;
}

Ideal sum_with(const Pair& pair, Ideal base, const std::vector<int>& labels) {
    std::vector<Polynomial> g = base.generators();
    for (int l : labels) g.push_back(equation(pair, l));
    return Ideal(base.nvars(), std::move(g));
}

// Label subsets whose divisors meet V(base) on the chart, by increasing size.
std::vector<std::vector<int>> meeting_subsets(const Pair& pair, const Ideal& base, const std::vector<int>& labels) {
    std::vector<std::vector<int>> out;
    if (!nonempty(pair.chart, base)) return out;
    std::vector<std::vector<std::size_t>> frontier{{}};
    out.push_back({});
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& s : frontier) {
            std::size_t start = s.empty() ? 0 : s.back() + 1;
            for (std::size_t i = start; i < labels.size(); ++i) {
                auto t = s;
                t.push_back(i);
                std::vector<int> ls;
                for (auto k : t) ls.push_back(labels[k]);
                if (!nonempty(pair.chart, sum_with(pair, base, ls))) continue;
                out.push_back(ls);
                next.push_back(std::move(t));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

std::map<int, Rational> min_ratios(const BasicObject& b) {
    std::set<int> labels;
    for (const auto& m : b.members)
        for (const auto& [l, a] : m.alpha) labels.insert(l);
    std::map<int, Rational> out;
    for (int l : labels) {
        std::optional<Rational> best;
        for (const auto& m : b.members) {
            auto it = m.alpha.find(l);
            Rational r = it == m.alpha.end() ? Rational(0) : ratio(it->second, m.control);
            if (!best || r < *best) best = r;
        }
        if (*best > 0) out[l] = *best;
    }
    return out;
}

bool same_member(const Marked& a, const Marked& b) {
    return a.control == b.control && a.alpha == b.alpha && a.weak.basis() == b.weak.basis();
}

void add_member(std::vector<Marked>& members, Marked m) {
    if (m.weak.is_zero()) return;
    for (const auto& x : members)
        if (same_member(x, m)) return;
    members.push_back(std::move(m));
}

Polynomial gcd_of(const Ideal& i) {
    Polynomial g(i.nvars());
    for (const auto& p : i.generators()) {
        g = multivariate_gcd(g, p);
        if (g.is_constant()) break;
    }
    return g;
}

}  // namespace

Marked make_marked(const Pair& pair, const Ideal& i, unsigned control, const std::vector<int>& labels) {
    if (control == 0) throw BasicObjectError("control must be positive");
    Marked m;
    m.control = control;
    Ideal cur = reduce_on(pair.chart, i);
    if (cur.is_zero()) throw BasicObjectError("ideal vanishes identically on the chart");
    for (int l : labels) {
        const Polynomial& e = equation(pair, l);
        unsigned a = ideal_valuation(pair.chart, cur, e);
        if (a == 0) continue;
        cur = divide_ideal(pair.chart, cur, e, a);
        m.alpha[l] = a;
    }
    m.weak = Ideal(cur.nvars(), cur.basis());
    return m;
}

BasicObject BasicObject::make(Pair pair, const Ideal& j, unsigned b) {
    BasicObject out;
    auto labels = labels_of(pair);
    out.members.push_back(make_marked(pair, j, b, labels));
    out.pair = std::move(pair);
    return out;
}

const Marked& BasicObject::single() const {
    if (members.size() != 1) throw BasicObjectError("operation requires an ordinary basic object");
    return members.front();
}

Ideal BasicObject::J() const { return full_ideal(pair, single()); }

Ideal full_ideal(const Pair& pair, const Marked& m) {
    Polynomial mono = Polynomial::constant(pair.chart.nvars(), 1);
    for (const auto& [l, a] : m.alpha) mono *= equation(pair, l).pow(a);
    if (mono.is_constant()) return m.weak;
    std::vector<Polynomial> g;
    for (const auto& p : m.weak.generators()) g.push_back(p * mono);
    return Ideal(m.weak.nvars(), std::move(g));
}

Ideal sing_ideal(const BasicObject& b) {
    const Chart& c = b.pair.chart;
    std::vector<Polynomial> g;
    for (const auto& m : b.members) {
        Ideal d = delta_power_on(c, full_ideal(b.pair, m), m.control - 1);
        if (d.is_unit()) return Ideal::unit(c.nvars());
        for (const auto& p : d.generators()) g.push_back(p);
    }
    Ideal s(c.nvars(), std::move(g));
    return c.with_dependencies(Ideal(c.nvars(), s.basis()));
}

bool sing_empty(const BasicObject& b) { return b.pair.chart.is_empty(sing_ideal(b)); }

std::optional<Rational> ord_max(const BasicObject& b) {
    const Chart& c = b.pair.chart;
    Ideal sing = sing_ideal(b);
    if (c.is_empty(sing)) return std::nullopt;
    std::vector<Ideal> full;
    std::vector<unsigned> top;
    Rational upper;
    for (std::size_t j = 0; j < b.members.size(); ++j) {
        full.push_back(full_ideal(b.pair, b.members[j]));
        top.push_back(max_order(c, full[j], sing));
        Rational r = ratio(top[j], b.members[j].control);
        if (j == 0 || r < upper) upper = r;
    }
    if (b.members.size() == 1) return upper;
    std::set<Rational> cand;
    for (std::size_t j = 0; j < b.members.size(); ++j)
        for (unsigned k = b.members[j].control; k <= top[j]; ++k) {
            Rational q = ratio(k, b.members[j].control);
            if (q <= upper) cand.insert(q);
        }
    for (auto it = cand.rbegin(); it != cand.rend(); ++it) {
        std::vector<Polynomial> g = sing.generators();
        for (std::size_t j = 0; j < b.members.size(); ++j) {
            unsigned k = ceil_u(*it * b.members[j].control);
            append(g, delta_power_on(c, full[j], k - 1));
        }
        if (nonempty(c, Ideal(c.nvars(), std::move(g)))) return *it;
    }
    return Rational(1);
}

std::vector<int> e_minus(const BasicObject& b) {
    std::vector<int> out;
    for (const auto& d : b.pair.divisors)
        if (d.birth <= b.stage_birth) out.push_back(d.label);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> e_plus(const BasicObject& b) {
    std::vector<int> out;
    for (const auto& d : b.pair.divisors)
        if (d.birth > b.stage_birth) out.push_back(d.label);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<WordResult> max_word(const BasicObject& b) {
    const Chart& c = b.pair.chart;
    Ideal sing = sing_ideal(b);
    if (c.is_empty(sing)) return std::nullopt;
    if (b.members.size() == 1) {
        const Marked& m = b.members[0];
        unsigned bk = max_order(c, m.weak, sing);
        Ideal locus = bk == 0 ? sing : ideal_sum(sing, delta_power_on(c, m.weak, bk - 1));
        return WordResult{ratio(bk, m.control), c.with_dependencies(Ideal(c.nvars(), locus.basis()))};
    }
    auto ahat = min_ratios(b);
    auto strata = meeting_subsets(b.pair, sing, labels_of(b.pair));
    std::optional<Rational> best;
    struct Piece {
        std::vector<int> s;
        std::vector<unsigned> need;
    };
    std::vector<std::pair<Rational, Piece>> found;
    for (const auto& s : strata) {
        Ideal vs = sum_with(b.pair, sing, s);
        Rational gamma = 0;
        for (int l : s)
            if (auto it = ahat.find(l); it != ahat.end()) gamma += it->second;
        std::vector<Rational> beta;
        std::vector<unsigned> top;
        Rational upper;
        for (std::size_t j = 0; j < b.members.size(); ++j) {
            const Marked& m = b.members[j];
            Rational bj = 0;
            for (int l : s)
                if (auto it = m.alpha.find(l); it != m.alpha.end()) bj += ratio(it->second, m.control);
            beta.push_back(bj);
            top.push_back(max_order(c, m.weak, vs));
            Rational r = ratio(top[j], m.control) + bj;
            if (j == 0 || r < upper) upper = r;
        }
        upper -= gamma;
        if (best && upper < *best) continue;
        std::set<Rational> cand;
        for (std::size_t j = 0; j < b.members.size(); ++j)
            for (unsigned k = 0; k <= top[j]; ++k) {
                Rational q = ratio(k, b.members[j].control) + beta[j] - gamma;
                if (q <= upper && (!best || q >= *best)) cand.insert(q);
            }
        for (auto it = cand.rbegin(); it != cand.rend(); ++it) {
            std::vector<Polynomial> g = vs.generators();
            std::vector<unsigned> need;
            for (std::size_t j = 0; j < b.members.size(); ++j) {
                unsigned k = ceil_u((*it + gamma - beta[j]) * b.members[j].control);
                need.push_back(k);
                if (k > 0)
                    append(g, delta_power_on(c, b.members[j].weak, k - 1));
            }
            if (nonempty(c, Ideal(c.nvars(), std::move(g)))) {
                if (!best || *it > *best) {
                    best = *it;
                    found.clear();
                }
                found.push_back({*it, Piece{s, need}});
                break;
            }
        }
    }
    // Locus of the maximum: union over strata of the pieces at the maximal value.
    Ideal locus = Ideal::unit(c.nvars());
    for (const auto& s : strata) {
        Ideal vs = sum_with(b.pair, sing, s);
        Rational gamma = 0;
        for (int l : s)
            if (auto it = ahat.find(l); it != ahat.end()) gamma += it->second;
        std::vector<Polynomial> g = vs.generators();
        for (const auto& m : b.members) {
            Rational bj = 0;
            for (int l : s)
                if (auto it = m.alpha.find(l); it != m.alpha.end()) bj += ratio(it->second, m.control);
            unsigned k = ceil_u((*best + gamma - bj) * m.control);
            if (k > 0)
                append(g, delta_power_on(c, m.weak, k - 1));
        }
        Ideal piece(c.nvars(), std::move(g));
        if (!nonempty(c, piece)) continue;
        locus = Ideal(c.nvars(), ideal_product(locus, piece).basis());
    }
    return WordResult{*best, c.with_dependencies(locus)};
}

std::optional<TResult> t_invariant(const BasicObject& b) {
    auto w = max_word(b);
    if (!w) return std::nullopt;
    if (w->value == 0) throw BasicObjectError("t is defined only where max w-ord is positive");
    TResult t;
    t.word = w->value;
    t.word_locus = w->locus;
    auto subs = meeting_subsets(b.pair, w->locus, e_minus(b));
    for (const auto& s : subs) t.n = std::max(t.n, int(s.size()));
    for (const auto& s : subs)
        if (int(s.size()) == t.n) t.subsets.push_back(s);
    const Chart& c = b.pair.chart;
    if (t.n == 0) {
        t.locus = w->locus;
    } else {
        Ideal locus = Ideal::unit(c.nvars());
        for (const auto& s : t.subsets) locus = Ideal(c.nvars(), ideal_product(locus, sum_with(b.pair, w->locus, s)).basis());
        t.locus = c.with_dependencies(locus);
    }
    return t;
}

BasicObject intersect(const BasicObject& a, const BasicObject& b) {
    unsigned ca = a.b(), cb = b.b();
    Ideal k = ideal_sum(ideal_power(a.J(), cb), ideal_power(b.J(), ca));
    BasicObject out = BasicObject::make(a.pair, Ideal(k.nvars(), k.basis()), ca * cb);
    out.stage_birth = a.stage_birth;
    out.stage_word = a.stage_word;
    return out;
}

BasicObject family_intersection(const BasicObject& a, const BasicObject& b) {
    BasicObject out = a;
    for (const auto& m : b.members) add_member(out.members, m);
    return out;
}

BasicObject companion_case3(const BasicObject& b, const Rational& word) {
    if (word <= 0) throw BasicObjectError("case 3 companion needs positive max w-ord");
    BasicObject out = b;
    auto ahat = min_ratios(b);
    for (const auto& m : b.members) {
        Rational control = word * m.control;
        std::map<int, Rational> alpha;
        Integer q = control.get_den();
        for (const auto& [l, a] : m.alpha) {
            Rational r = Rational(a) - (ahat.count(l) ? ahat.at(l) * m.control : Rational(0));
            if (r > 0) {
                alpha[l] = r;
                q = lcm_of(q, r.get_den());
            }
        }
        Marked w;
        unsigned qq = unsigned(q.get_ui());
        w.weak = qq == 1 ? m.weak : Ideal(m.weak.nvars(), ideal_power(m.weak, qq).basis());
        for (const auto& [l, r] : alpha) w.alpha[l] = unsigned(Integer(r * qq).get_ui());
        w.control = unsigned(Integer(control * qq).get_ui());
        add_member(out.members, std::move(w));
    }
    return out;
}

BasicObject companion_case2(const BasicObject& b, int m) {
    if (m <= 0) return b;
    auto minus = e_minus(b);
    if (int(minus.size()) < m) throw BasicObjectError("max n exceeds the number of E-minus divisors");
    std::size_t nv = b.pair.chart.nvars();
    Marked p;
    p.control = 1;
    if (m == 1) {
        p.weak = Ideal::unit(nv);
        for (int l : minus) p.alpha[l] = 1;
    } else {
        Ideal prod = Ideal::unit(nv);
        std::vector<std::size_t> idx(static_cast<std::size_t>(m));
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        for (;;) {
            std::vector<int> ls;
            for (auto i : idx) ls.push_back(minus[i]);
            prod = Ideal(nv, ideal_product(prod, sum_with(b.pair, Ideal::zero(nv), ls)).basis());
            std::size_t k = idx.size();
            while (k > 0 && idx[k - 1] == minus.size() - idx.size() + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t i = k; i < idx.size(); ++i) idx[i] = idx[i - 1] + 1;
        }
        p.weak = prod;
    }
    BasicObject out = b;
    add_member(out.members, std::move(p));
    return out;
}

CoeffIdeal coeff_ideal(const Chart& w, std::size_t slot, const Ideal& j, unsigned b) {
    if (b == 0) throw BasicObjectError("control must be positive");
    ChartChange z = simplify(w.restricted(slot));
    Integer fact = 1;
    for (unsigned i = 2; i <= b; ++i) fact *= i;
    std::size_t nv = z.chart.nvars();
    Ideal acc = Ideal::zero(nv);
    Ideal d = j;
    for (unsigned i = 0; i < b; ++i) {
        if (i > 0) d = delta(w, d);
        Ideal r = reduce_on(z.chart, z.map(d));
        if (!r.is_zero()) {
            unsigned e = unsigned(Integer(fact / (b - i)).get_ui());
            acc = ideal_sum(acc, Ideal(nv, ideal_power(Ideal(nv, r.basis()), e).basis()));
        }
    }
    if (acc.is_zero()) throw BasicObjectError("maximal contact degenerate: coefficient ideal is zero");
    return CoeffIdeal{Ideal(nv, acc.basis()), unsigned(fact.get_ui()), z.chart.ring()};
}

BasicObject coefficient_family(const BasicObject& b, std::size_t slot, const std::vector<int>& labels) {
    const Chart& c = b.pair.chart;
    BasicObject out;
    out.pair.chart = c.restricted(slot);
    for (int l : labels) {
        const Divisor* d = b.pair.find(l);
        if (!d) throw BasicObjectError("unknown divisor label " + std::to_string(l));
        out.pair.divisors.push_back(*d);
    }
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& m : b.members) {
        Ideal d = full_ideal(b.pair, m);
        for (unsigned i = 0; i < m.control; ++i) {
            if (i > 0) d = delta(c, d);
            if (d.is_unit()) {
                add_member(out.members, Marked{Ideal::unit(c.nvars()), {}, m.control - i});
                break;
            }
            Ideal r = reduce_on(out.pair.chart, d);
            if (r.is_zero() || out.pair.chart.contains(Ideal::zero(c.nvars()), r)) continue;
            add_member(out.members, make_marked(out.pair, r, m.control - i, sorted));
        }
    }
    if (out.members.empty()) throw BasicObjectError("maximal contact degenerate: coefficient ideal is zero");
    return out;
}

std::vector<ContactChoice> contact_candidates(const BasicObject& b, const std::vector<std::size_t>& avoid) {
    const Chart& c = b.pair.chart;
    Ideal sing = sing_ideal(b);
    std::vector<ContactChoice> first, rest;
    std::set<Polynomial> seen;
    for (std::size_t j = 0; j < b.members.size(); ++j) {
        const Marked& m = b.members[j];
        Ideal d = delta_power_on(c, full_ideal(b.pair, m), m.control - 1);
        auto gens = d.basis();
        std::sort(gens.begin(), gens.end(), [](const Polynomial& x, const Polynomial& y) {
            if (x.total_degree() != y.total_degree()) return x.total_degree() < y.total_degree();
            if (x.length() != y.length()) return x.length() < y.length();
            return y < x;
        });
        for (const auto& g0 : gens) {
            if (g0.is_constant()) continue;
            Polynomial g = g0.primitive();
            if (!seen.insert(g).second) continue;
            std::vector<Polynomial> der = sing.generators();
            for (std::size_t k = 0; k < c.dim(); ++k) der.push_back(c.derive(g, k));
            if (!c.is_empty(Ideal(c.nvars(), std::move(der)))) continue;
            auto idx = c.parameter_index(g);
            bool good = idx && std::find(avoid.begin(), avoid.end(), *idx) == avoid.end();
            (good ? first : rest).push_back(ContactChoice{g, j});
        }
    }
    for (auto& x : rest) first.push_back(std::move(x));
    return first;
}

MaximalContact maximal_contact(const BasicObject& b, const std::vector<std::size_t>& avoid) {
    const Chart& c = b.pair.chart;
    std::vector<std::size_t> slots = avoid;
    for (const auto& d : b.pair.divisors)
        if (auto idx = c.parameter_index(d.equation)) slots.push_back(*idx);
    std::vector<Polynomial> forbidden;
    for (int l : e_plus(b)) forbidden.push_back(equation(b.pair, l).monic());
    Ideal sing = sing_ideal(b);
    for (const auto& cand : contact_candidates(b, slots)) {
        if (std::find(forbidden.begin(), forbidden.end(), cand.f.monic()) != forbidden.end()) continue;
        if (auto idx = c.parameter_index(cand.f)) {
            bool is_divisor_slot = std::find(slots.begin(), slots.end(), *idx) != slots.end();
            bool is_divisor = false;
            for (const auto& d : b.pair.divisors) is_divisor |= d.equation.monic() == cand.f.monic();
            if (!is_divisor_slot || is_divisor) return {cand.f, {Exchange{c, RingMap::identity(c.nvars()), *idx}}};
            continue;
        }
        try {
            auto ex = cover_and_exchange(c, cand.f, sing, slots);
            bool ok = true;
            for (const auto& e : ex) ok &= std::find(slots.begin(), slots.end(), e.slot) == slots.end();
            if (ok) return {cand.f, std::move(ex)};
        } catch (const ChartError&) {
        }
    }
    throw BasicObjectError("no hypersurface of maximal contact: no element of order one along Sing");
}

std::optional<Polynomial> r1_locus(const BasicObject& b) {
    const Chart& c = b.pair.chart;
    std::size_t nv = c.nvars();
    std::optional<Polynomial> acc;
    std::vector<SquarefreeFactor> pieces;
    for (const auto& m : b.members) {
        Polynomial r = Polynomial::constant(nv, 1);
        Polynomial g = gcd_of(reduce_on(c, m.weak));
        if (!g.is_zero() && !g.is_constant()) {
            auto dec = squarefree_decomposition(g);
            for (const auto& f : dec)
                if (f.multiplicity >= m.control) r *= f.factor;
            if (pieces.empty()) pieces = dec;
        }
        Ideal weak = reduce_on(c, m.weak);
        if (!weak.is_zero() && !weak.is_unit()) {
            for (const auto& p : c.parameters()) {
                if (try_divide(r, p)) continue;
                bool is_divisor = std::any_of(b.pair.divisors.begin(), b.pair.divisors.end(),
                                              [&](const Divisor& d) { return d.equation == p; });
                if (is_divisor) continue;
                Ideal power = Ideal::principal(p.pow(m.control));
                bool inside = std::all_of(weak.generators().begin(), weak.generators().end(),
                                          [&](const Polynomial& g) { return c.contains(power, g); });
                if (inside) r *= p;
            }
        }
        for (const auto& [l, a] : m.alpha)
            if (a >= m.control) r *= equation(b.pair, l);
        acc = acc ? multivariate_gcd(*acc, r) : r.primitive();
        if (acc->is_constant()) return std::nullopt;
    }
    if (!acc || acc->is_constant() || c.is_empty(Ideal::principal(*acc))) return std::nullopt;
    Polynomial g = *acc;
    for (const auto& p : c.parameters()) {
        auto u = try_divide(g, p);
        if (u && c.is_unit(*u)) {
            g = p;
            break;
        }
    }
    Ideal sing = sing_ideal(b);
    for (const auto& s : sing.generators())
        if (!c.vanishes_on(Ideal::principal(g), s))
            throw BasicObjectError("codimension-one candidate is not contained in Sing");
    if (!is_smooth(c, Ideal::principal(g), 1)) {
        std::optional<Polynomial> part;
        for (const auto& p : pieces) {
            Polynomial h = multivariate_gcd(g, p.factor);
            if (!h.is_constant() && !c.is_empty(Ideal::principal(h))) {
                part = h;
                break;
            }
        }
        if (!part || !is_smooth(c, Ideal::principal(*part), 1))
            throw BasicObjectError("codimension-one part of Sing is not smooth");
        g = *part;
    }
    std::vector<Ideal> hyps{Ideal::principal(g)};
    for (const auto& d : b.pair.divisors) hyps.push_back(Ideal::principal(d.equation));
    if (!has_normal_crossings(c, hyps))
        throw BasicObjectError("codimension-one part of Sing does not have normal crossings with the divisors");
    return g;
}

MonomialCenter monomial_h(const BasicObject& b) {
    const Chart& c = b.pair.chart;
    auto ahat = min_ratios(b);
    auto subs = meeting_subsets(b.pair, Ideal::zero(c.nvars()), labels_of(b.pair));
    std::optional<MonomialCenter> best;
    for (const auto& s : subs) {
        if (s.empty()) continue;
        Rational sum = 0;
        for (int l : s)
            if (auto it = ahat.find(l); it != ahat.end()) sum += it->second;
        if (sum < 1) continue;
        Gamma g;
        g.neg_p = -int(s.size());
        g.omega = sum;
        g.ell = s;
        g.ell.resize(std::max(c.dim(), s.size()), 0);
        TElem cand = TElem::gamma(g);
        if (!best || TElem::gamma(best->h) < cand) best = MonomialCenter{g, s};
    }
    if (!best) throw BasicObjectError("monomial case without a qualifying divisor intersection");
    return *best;
}

std::vector<int> divisors_containing(const Pair& pair, const std::vector<std::size_t>& center) {
    std::vector<int> out;
    for (const auto& d : pair.divisors) {
        auto idx = pair.chart.parameter_index(d.equation);
        if (idx && std::find(center.begin(), center.end(), *idx) != center.end()) out.push_back(d.label);
    }
    std::sort(out.begin(), out.end());
    return out;
}

BasicObject transform(const BasicObject& b, const Pair& child, const RingMap& map, int new_label,
                      const std::vector<int>& containing) {
    BasicObject out;
    out.pair = child;
    out.stage_birth = b.stage_birth;
    out.stage_word = b.stage_word;
    const Chart& c = child.chart;
    const Polynomial& e = equation(child, new_label);
    for (const auto& m : b.members) {
        Ideal w = reduce_on(c, map(m.weak));
        if (w.is_zero()) throw BasicObjectError("weak transform vanishes on the chart");
        unsigned v = ideal_valuation(c, w, e);
        Marked n;
        n.control = m.control;
        n.weak = v ? divide_ideal(c, w, e, v) : w;
        n.weak = Ideal(n.weak.nvars(), n.weak.basis());
        unsigned s = v;
        for (const auto& [l, a] : m.alpha) {
            if (std::find(containing.begin(), containing.end(), l) != containing.end()) s += a;
            if (child.find(l)) n.alpha[l] = a;
        }
        if (s < m.control) throw BasicObjectError("center is not contained in the singular locus");
        if (s > m.control) n.alpha[new_label] = s - m.control;
        out.members.push_back(std::move(n));
    }
    return out;
}

bool inclusion_check(const BasicObject& smaller, const BasicObject& larger, const std::vector<SequenceStep>& steps) {
    BasicObject s = smaller, l = larger;
    int label = 0;
    for (const auto& d : s.pair.divisors) label = std::max(label, d.label);
    for (std::size_t k = 0;; ++k) {
        Ideal ss = sing_ideal(s);
        Ideal ls = sing_ideal(l);
        for (const auto& g : ls.generators())
            if (!s.pair.chart.vanishes_on(ss, g)) return false;
        if (k == steps.size()) return true;
        ++label;
        auto containing = divisors_containing(s.pair, steps[k].center);
        auto kids = blow_up(s.pair, steps[k].center, label, label);
        if (steps[k].child >= kids.size()) throw BasicObjectError("sequence step selects a missing chart");
        const auto& kid = kids[steps[k].child];
        s = transform(s, kid.pair, kid.map, label, containing);
        l = transform(l, kid.pair, kid.map, label, containing);
    }
}

}  // namespace desing
