#include "desing/driver/driver.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <set>
#include <thread>

#include "desing/algebra/factor.hpp"

namespace desing {

namespace {

bool has(const std::vector<std::size_t>& v, std::size_t x) { return std::find(v.begin(), v.end(), x) != v.end(); }

std::vector<std::size_t> free_slots(std::size_t dim, const std::vector<std::size_t>& fixed) {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < dim; ++s)
        if (!has(fixed, s)) out.push_back(s);
    return out;
}

std::size_t level_slot(std::size_t dim, const std::vector<std::size_t>& fixed, std::size_t top_slot) {
    auto f = free_slots(dim, fixed);
    return std::size_t(std::find(f.begin(), f.end(), top_slot) - f.begin());
}

Pair level_pair(const Pair& top, const std::vector<std::size_t>& fixed, const std::vector<int>& labels) {
    auto order = fixed;
    std::sort(order.rbegin(), order.rend());
    Pair p;
    p.chart = top.chart;
    for (auto s : order) p.chart = p.chart.restricted(s);
    for (const auto& d : top.divisors)
        if (std::find(labels.begin(), labels.end(), d.label) != labels.end()) p.divisors.push_back(d);
    return p;
}

std::optional<std::size_t> divisor_slot(const Pair& top, int label) {
    const Divisor* d = top.find(label);
    if (!d) return std::nullopt;
    return top.chart.parameter_index(d->equation);
}

std::vector<std::size_t> all_divisor_slots(const Pair& top) {
    std::vector<std::size_t> out;
    for (const auto& d : top.divisors)
        if (auto s = top.chart.parameter_index(d.equation)) out.push_back(*s);
    return out;
}

Composite padded(Composite v, std::size_t d) {
    while (v.size() < d) v.push_back(TElem::infinity());
    return v;
}

Marked map_marked(const Marked& m, const Chart& target, const RingMap& map, const std::map<int, Polynomial>& dropped) {
    Marked out;
    out.control = m.control;
    Ideal w = map(m.weak);
    Polynomial unit = Polynomial::constant(target.nvars(), 1);
    for (const auto& [l, a] : m.alpha) {
        if (auto it = dropped.find(l); it != dropped.end())
            unit *= it->second.pow(a);
        else
            out.alpha[l] = a;
    }
    if (!unit.is_constant()) {
        std::vector<Polynomial> g;
        for (const auto& p : w.generators()) g.push_back(p * unit);
        w = Ideal(w.nvars(), std::move(g));
    }
    w = reduce_on(target, w);
    out.weak = Ideal(w.nvars(), w.basis());
    return out;
}

// The state on a new chart obtained from the old one by a ring change (exchange or open restriction).
// Divisors whose equation stops being a parameter must miss the target on the new chart.
ChartState rebase(const ChartState& s, Chart chart, const RingMap& map, const Ideal& target,
                  std::optional<std::size_t> exchanged_slot) {
    Ideal t = map(target);
    std::map<int, Polynomial> dropped;
    std::vector<Divisor> kept;
    for (const auto& d : s.top.pair.divisors) {
        Polynomial e = map(d.equation);
        if (chart.parameter_index(e)) {
            Divisor n = d;
            n.equation = e;
            kept.push_back(n);
            continue;
        }
        if (!chart.is_empty(ideal_sum(t, Ideal::principal(e))))
            throw DriverError("exchange would remove divisor " + std::to_string(d.label) + " (" +
                              to_string(e, chart.ring()) + ") which meets the center");
        chart = chart.with_inequation(e);
        dropped[d.label] = e;
    }
    ChartState n;
    n.top.pair = Pair{chart, kept};
    n.top.stage_birth = s.top.stage_birth;
    n.top.stage_word = s.top.stage_word;
    for (const auto& m : s.top.members) n.top.members.push_back(map_marked(m, chart, map, dropped));
    n.controlled = Ideal(chart.nvars(), reduce_on(chart, map(s.controlled)).basis());
    for (const auto& [l, a] : s.totals)
        if (!dropped.count(l)) n.totals[l] = a;
    n.from_root = s.from_root.then(map);
    for (const auto& lv : s.levels) {
        if (exchanged_slot && has(lv.fixed, *exchanged_slot)) break;
        Level nl;
        nl.fixed = lv.fixed;
        nl.built_for = lv.built_for;
        for (int l : lv.labels)
            if (!dropped.count(l)) nl.labels.push_back(l);
        nl.object.pair = level_pair(n.top.pair, nl.fixed, nl.labels);
        nl.object.stage_birth = lv.object.stage_birth;
        nl.object.stage_word = lv.object.stage_word;
        for (const auto& m : lv.object.members) nl.object.members.push_back(map_marked(m, nl.object.pair.chart, map, dropped));
        n.levels.push_back(std::move(nl));
    }
    for (const auto& [lvl, f] : s.hints) n.hints[lvl] = map(f);
    return n;
}

Selection split(const ChartState& s, const Polynomial& f, const Ideal& target, const std::vector<std::size_t>& avoid) {
    const Chart& c = s.top.pair.chart;
    Selection out;
    for (const auto& e : cover_and_exchange(c, f, target, avoid)) {
        ChartState n = rebase(s, e.chart, e.map, target, e.slot);
        out.pieces.push_back(std::move(n));
        out.piece_kinds.push_back("exchange");
    }
    for (const auto& g : target.basis()) {
        if (c.is_zero_on(g)) continue;
        Chart open = c.with_inequation(g);
        if (open.is_empty(Ideal::zero(c.nvars()))) continue;
        out.pieces.push_back(rebase(s, open, RingMap::identity(c.nvars()), target, std::nullopt));
        out.piece_kinds.push_back("open");
    }
    return out;
}

void coeff_check(const ChartState& s, const BasicObject& comp, const Level& lv, int step) {
    const Chart& c = s.top.pair.chart;
    Polynomial z = c.parameters()[lv.fixed.back()];
    Ideal sing = sing_ideal(comp);
    if (!c.vanishes_on(sing, z))
        throw DriverError("Giraud check failed at step " + std::to_string(step) + ": Sing is not inside the contact hypersurface");
    if (!c.same_locus(ideal_sum(sing, Ideal::principal(z)), sing_ideal(lv.object)))
        throw DriverError("coefficient equivalence failed at step " + std::to_string(step));
}

template <class In, class Out>
std::vector<Out> parallel_map(const std::vector<In>& items, unsigned workers, const Budget& budget,
                              const std::function<Out(const In&)>& fn) {
    std::vector<std::optional<Out>> res(items.size());
    std::vector<std::exception_ptr> err(items.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        BudgetScope scope(budget);
        for (std::size_t k; (k = next++) < items.size();) {
            try {
                res[k] = fn(items[k]);
            } catch (...) {
                err[k] = std::current_exception();
            }
        }
    };
    unsigned n = std::max(1u, std::min<unsigned>(workers, unsigned(items.size())));
    if (n == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& e : err)
        if (e) std::rethrow_exception(e);
    std::vector<Out> out;
    for (auto& r : res) out.push_back(std::move(*r));
    return out;
}

std::vector<std::pair<ChartState, std::size_t>> blow_state(const ChartState& s, const CenterDescriptor& center, int label,
                                                           int birth) {
    const Pair& p = s.top.pair;
    auto kids = blow_up(p, center.slots, label, birth);
    auto containing = divisors_containing(p, center.slots);
    unsigned b = s.top.b();
    std::vector<std::pair<ChartState, std::size_t>> out;
    for (const auto& kid : kids) {
        ChartState n;
        const Chart& c = kid.pair.chart;
        n.top = transform(s.top, kid.pair, kid.map, label, containing);
        const Polynomial& e = kid.pair.find(label)->equation;
        Ideal m = reduce_on(c, kid.map(s.controlled));
        if (ideal_valuation(c, m, e) < b) throw DriverError("controlled transform is not exact: center outside Sing");
        Ideal q = divide_ideal(c, m, e, b);
        n.controlled = Ideal(q.nvars(), q.basis());
        unsigned total = b;
        for (int l : containing) total += s.totals.count(l) ? s.totals.at(l) : 0;
        for (const auto& [l, a] : s.totals)
            if (kid.pair.find(l)) n.totals[l] = a;
        n.totals[label] = total;
        n.from_root = s.from_root.then(kid.map);
        for (const auto& lv : s.levels) {
            if (has(lv.fixed, kid.exceptional_slot)) break;
            Level nl;
            nl.fixed = lv.fixed;
            nl.built_for = lv.built_for;
            nl.labels = lv.labels;
            nl.labels.push_back(label);
            std::vector<int> cont;
            for (int l : containing)
                if (std::find(lv.labels.begin(), lv.labels.end(), l) != lv.labels.end()) cont.push_back(l);
            nl.object = transform(lv.object, level_pair(kid.pair, nl.fixed, nl.labels), kid.map, label, cont);
            n.levels.push_back(std::move(nl));
        }
        out.push_back({std::move(n), kid.exceptional_slot});
    }
    return out;
}

}  // namespace

std::string to_string(Mode m) {
    switch (m) {
    case Mode::resolve:
        return "resolve";
    case Mode::desingularize:
        return "desingularize";
    case Mode::principalize:
        return "principalize";
    }
    return "";
}

std::string to_string(CenterKind k) {
    switch (k) {
    case CenterKind::hypersurface:
        return "hypersurface";
    case CenterKind::inductive:
        return "inductive";
    case CenterKind::monomial:
        return "monomial";
    }
    return "";
}

ChartState ChartState::make(const BasicObject& b) {
    ChartState s;
    s.top = b;
    s.controlled = b.J();
    s.from_root = RingMap::identity(b.pair.chart.nvars());
    return s;
}

ChartState restrict_to_open(const ChartState& s, const Polynomial& g) {
    const Chart& c = s.top.pair.chart;
    return rebase(s, c.with_inequation(g), RingMap::identity(c.nvars()), Ideal::zero(c.nvars()), std::nullopt);
}

Selection select_center(ChartState& s, int step, bool debug) {
    Selection out;
    const Pair& top = s.top.pair;
    const Chart& tc = top.chart;
    std::size_t d = tc.dim();
    Composite prefix;
    for (std::size_t i = 0;; ++i) {
        BasicObject& B = i == 0 ? s.top : s.levels[i - 1].object;
        std::vector<std::size_t> fixed = i == 0 ? std::vector<std::size_t>{} : s.levels[i - 1].fixed;
        if (sing_empty(B)) {
            if (i == 0) {
                s.levels.clear();
                out.resolved = true;
                return out;
            }
            throw DriverError("empty singular locus on a maximal-contact level");
        }
        auto w = max_word(B);
        if (!B.stage_word || *B.stage_word != w->value) {
            B.stage_word = w->value;
            B.stage_birth = step;
        }
        if (w->value == 0) {
            s.levels.resize(i);
            auto mc = monomial_h(B);
            CenterDescriptor c;
            c.kind = CenterKind::monomial;
            c.slots = fixed;
            for (int l : mc.labels) c.slots.push_back(*divisor_slot(top, l));
            std::sort(c.slots.begin(), c.slots.end());
            prefix.push_back(TElem::gamma(mc.h));
            c.value = padded(prefix, d);
            out.center = c;
            return out;
        }
        auto t = t_invariant(B);
        TElem te = TElem::pair(t->word, t->n);
        prefix.push_back(te);
        BasicObject comp = companion_case2(companion_case3(B, w->value), t->n);
        if (auto r = r1_locus(comp)) {
            s.levels.resize(i);
            auto idx = tc.parameter_index(*r);
            if (!idx || has(fixed, *idx)) {
                auto avoid = fixed;
                for (auto x : all_divisor_slots(top)) avoid.push_back(x);
                return split(s, *r, sing_ideal(comp), avoid);
            }
            CenterDescriptor c;
            c.kind = CenterKind::hypersurface;
            c.slots = fixed;
            c.slots.push_back(*idx);
            std::sort(c.slots.begin(), c.slots.end());
            c.value = padded(prefix, d);
            out.center = c;
            return out;
        }
        if (s.levels.size() <= i || s.levels[i].built_for != te) {
            auto plus = e_plus(B);
            std::vector<std::size_t> plus_slots;
            for (int l : plus) {
                plus_slots.push_back(*divisor_slot(top, l));
            }
            auto usable = [&](const Polynomial& f) -> std::optional<std::size_t> {
                auto idx = tc.parameter_index(f);
                if (!idx || has(fixed, *idx)) return std::nullopt;
                return idx;
            };
            std::optional<Polynomial> f;
            if (auto it = s.hints.find(i); it != s.hints.end() && usable(it->second)) f = it->second;
            if (!f) {
                std::vector<std::size_t> avoid;
                for (auto x : plus_slots) avoid.push_back(level_slot(d, fixed, x));
                auto cands = contact_candidates(comp, avoid);
                if (!cands.empty()) f = cands.front().f;
            }
            if (!f) throw DriverError("no hypersurface of maximal contact: no element of order one along Sing");
            Ideal target = sing_ideal(comp);
            if (!usable(*f)) {
                // A parameter times a unit near Sing cuts out the same hypersurface there.
                auto order = free_slots(d, fixed);
                std::stable_partition(order.begin(), order.end(), [&](std::size_t k) { return !has(plus_slots, k); });
                for (std::size_t k : order) {
                    auto u = try_divide(*f, tc.parameters()[k]);
                    if (u && tc.is_empty(ideal_sum(target, Ideal::principal(*u)))) {
                        f = tc.parameters()[k];
                        break;
                    }
                }
            }
            auto idx = usable(*f);
            if (!idx) {
                auto avoid = fixed;
                for (auto x : all_divisor_slots(top)) avoid.push_back(x);
                s.hints[i] = *f;
                return split(s, *f, target, avoid);
            }
            s.hints.erase(i);
            Level nl;
            nl.fixed = fixed;
            nl.fixed.push_back(*idx);
            for (int l : plus)
                if (divisor_slot(top, l) != idx) nl.labels.push_back(l);
            nl.built_for = te;
            nl.object = coefficient_family(comp, level_slot(d, fixed, *idx), nl.labels);
            nl.object.pair = level_pair(top, nl.fixed, nl.labels);
            nl.object.stage_birth = step;
            nl.object.stage_word.reset();
            s.levels.resize(i);
            s.levels.push_back(std::move(nl));
        }
        if (debug) {
            coeff_check(s, comp, s.levels[i], step);
            ++out.debug_checks;
        }
    }
}

bool VerificationReport::all_green() const {
    return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.ok; });
}

std::size_t affine_dimension(const Ideal& i) {
    const auto& basis = i.basis();
    std::size_t n = i.nvars();
    if (basis.empty()) return n;
    if (i.is_unit()) return 0;
    std::vector<std::vector<std::size_t>> supports;
    for (const auto& g : basis) {
        std::vector<std::size_t> s;
        for (std::size_t v = 0; v < n; ++v)
            if (g.leading().mono[v] > 0) s.push_back(v);
        supports.push_back(std::move(s));
    }
    std::size_t best = 0;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        std::size_t size = std::size_t(__builtin_popcountll(mask));
        if (size <= best) continue;
        bool independent = true;
        for (const auto& s : supports) {
            bool inside = true;
            for (auto v : s) inside &= ((mask >> v) & 1) != 0;
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best = size;
    }
    return best;
}

Ideal strict_transform(const ResolutionTree& tree, const ChartNode& leaf) {
    const Chart& c = leaf.state.top.pair.chart;
    Ideal x = c.with_dependencies(leaf.state.from_root(tree.input));
    for (const auto& d : leaf.state.top.pair.divisors)
        if (d.birth > 0) x = saturate(x, d.equation);
    Polynomial q = c.inequation_product();
    if (!q.is_constant()) x = saturate(x, q);
    return Ideal(x.nvars(), x.basis());
}

namespace {

std::vector<Composite> descendant_values(const ResolutionTree& tree, std::size_t id) {
    std::vector<Composite> out;
    for (const auto& e : tree.edges) {
        if (e.from != id) continue;
        const auto& n = tree.nodes[e.to];
        if (n.center)
            out.push_back(n.center->value);
        else if (e.kind != "blow-up" || !n.resolved)
            for (auto& v : descendant_values(tree, e.to)) out.push_back(std::move(v));
    }
    return out;
}

void leaf_checks(const ResolutionTree& tree, const ChartNode& n, VerificationReport& r) {
    const Chart& c = n.state.top.pair.chart;
    auto add = [&](const std::string& name, bool ok) { r.entries.push_back({n.id, name, ok}); };
    if (tree.mode != Mode::desingularize) add("sing_empty", sing_empty(n.state.top));
    if (tree.mode == Mode::principalize) {
        Polynomial mono = Polynomial::constant(c.nvars(), 1);
        for (const auto& [l, a] : n.state.totals)
            if (const Divisor* d = n.state.top.pair.find(l)) mono *= d->equation.pow(a);
        Ideal image = reduce_on(c, n.state.from_root(tree.input));
        add("principal_certificate", c.same_ideal(image, Ideal::principal(mono)));
    }
    if (tree.mode == Mode::desingularize) {
        Ideal x = strict_transform(tree, n);
        std::size_t codim = c.dim() - tree.dim_x;
        bool empty = c.is_empty(x);
        add("strict_smooth", empty || is_smooth(c, x, codim));
        bool nc = true;
        if (!empty) {
            const auto& ds = n.state.top.pair.divisors;
            for (std::size_t mask = 1; mask < (std::size_t(1) << ds.size()) && nc; ++mask) {
                std::vector<Polynomial> g = x.generators();
                std::size_t k = 0;
                for (std::size_t i = 0; i < ds.size(); ++i)
                    if ((mask >> i) & 1) {
                        g.push_back(ds[i].equation);
                        ++k;
                    }
                Ideal meet(c.nvars(), std::move(g));
                if (c.is_empty(meet)) continue;
                nc = codim + k <= c.dim() && is_smooth(c, meet, codim + k);
            }
        }
        add("strict_normal_crossings", nc);
        bool at_stop = n.resolved || (n.center && tree.stop_value && compare(n.center->value, *tree.stop_value) <= 0);
        if (!empty && n.center && n.center->value == *tree.stop_value) {
            std::vector<Polynomial> g;
            for (auto s : n.center->slots) g.push_back(c.parameters()[s]);
            at_stop = at_stop && c.same_locus(Ideal(c.nvars(), std::move(g)), x);
        }
        add("max_locus_is_strict_transform", at_stop);
    }
}

}  // namespace

VerificationReport verify_tree(const ResolutionTree& tree) {
    VerificationReport r;
    for (const auto& n : tree.nodes) {
        const Pair& p = n.state.top.pair;
        const Chart& c = p.chart;
        auto add = [&](const std::string& name, bool ok) { r.entries.push_back({n.id, name, ok}); };
        bool fact = n.state.top.is_single() && c.same_ideal(n.state.controlled, full_ideal(p, n.state.top.members[0]));
        if (fact)
            for (const auto& d : p.divisors) fact &= ideal_valuation(c, n.state.top.weak_J(), d.equation) == 0;
        add("factorization", fact);
        std::vector<Ideal> hyps;
        for (const auto& d : p.divisors) hyps.push_back(Ideal::principal(d.equation));
        add("exceptional_normal_crossings", has_normal_crossings(c, hyps));
        bool blown = std::any_of(tree.edges.begin(), tree.edges.end(),
                                 [&](const Edge& e) { return e.from == n.id && e.kind == "blow-up"; });
        if (blown && n.center) {
            bool ok = true;
            for (const auto& v : descendant_values(tree, n.id)) ok &= less(v, n.center->value);
            add("strict_descent", ok);
        }
        if (n.leaf) leaf_checks(tree, n, r);
    }
    return r;
}

namespace {

RunResult run(Mode mode, const BasicObject& init, const Ideal& input, const Options& opt,
              std::optional<Composite> stop, std::size_t dim_x) {
    BudgetScope scope(opt.budget);
    ResolutionTree tree;
    tree.mode = mode;
    tree.ring = init.pair.chart.ring();
    tree.input = input;
    tree.b = init.b();
    tree.stop_value = stop;
    tree.dim_x = dim_x;
    int r0 = 0;
    for (const auto& d : init.pair.divisors) r0 = std::max(r0, d.label);
    ChartNode root;
    root.origin = "root";
    root.state = ChartState::make(init);
    tree.nodes.push_back(std::move(root));
    std::vector<std::size_t> active{0};
    std::vector<char> done{0};
    int step = 0;
    std::optional<Composite> prev;
    std::optional<TElem> lead;
    std::size_t drops = 0, bound = 0;
    const std::size_t d = init.pair.chart.dim();

    auto add_node = [&](std::size_t parent, std::string origin, ChartState st, const std::string& edge) {
        ChartNode n;
        n.id = tree.nodes.size();
        n.parent = parent;
        n.origin = std::move(origin);
        n.step = step;
        n.state = std::move(st);
        tree.nodes.push_back(std::move(n));
        done.push_back(0);
        tree.edges.push_back({parent, tree.nodes.back().id, edge, step});
        return tree.nodes.back().id;
    };

    for (;;) {
        for (;;) {
            std::vector<std::size_t> pending;
            for (auto id : active)
                if (!done[id]) pending.push_back(id);
            if (pending.empty()) break;
            using Res = std::pair<ChartState, Selection>;
            auto results = parallel_map<std::size_t, Res>(pending, opt.workers, opt.budget, [&](const std::size_t& id) {
                ChartState st = tree.nodes[id].state;
                Selection sel = select_center(st, step, opt.debug_checks);
                return Res{std::move(st), std::move(sel)};
            });
            std::vector<std::size_t> next;
            std::size_t k = 0;
            for (auto id : active) {
                if (done[id]) {
                    next.push_back(id);
                    continue;
                }
                auto& [st, sel] = results[k++];
                done[id] = 1;
                tree.debug_checks += sel.debug_checks;
                tree.nodes[id].state = std::move(st);
                if (sel.resolved) {
                    tree.nodes[id].resolved = true;
                    tree.nodes[id].leaf = true;
                } else if (sel.center) {
                    tree.nodes[id].center = sel.center;
                    next.push_back(id);
                } else {
                    for (std::size_t p = 0; p < sel.pieces.size(); ++p)
                        next.push_back(add_node(id, sel.piece_kinds[p], std::move(sel.pieces[p]), sel.piece_kinds[p]));
                }
            }
            active = std::move(next);
        }
        if (active.empty()) break;
        Composite gmax = tree.nodes[active[0]].center->value;
        for (auto id : active)
            if (less(gmax, tree.nodes[id].center->value)) gmax = tree.nodes[id].center->value;
        if (prev && !less(gmax, *prev))
            throw DriverError("max f failed to drop at step " + std::to_string(step) + ": " + to_string(gmax) +
                              " after " + to_string(*prev));
        if (stop && compare(gmax, *stop) <= 0) break;
        if (gmax[0].kind() == TElem::Kind::pair) {
            if (!lead) {
                bound = std::size_t(Integer(gmax[0].word() * tree.b).get_ui()) * (d + 1);
            } else if (*lead != gmax[0] && ++drops > bound) {
                throw DriverError("stage-drop guard exceeded at step " + std::to_string(step) + " with max f " +
                                  to_string(gmax));
            }
            lead = gmax[0];
        }
        if (opt.max_steps && std::size_t(step) >= *opt.max_steps)
            throw ResourceError("max-steps", "step cap of " + std::to_string(*opt.max_steps) + " reached");
        ++step;
        int label = r0 + step;
        StepRecord rec{step, gmax, label, {}};
        std::vector<std::size_t> blown;
        for (auto id : active)
            if (tree.nodes[id].center->value == gmax) blown.push_back(id);
        using Kids = std::vector<std::pair<ChartState, std::size_t>>;
        auto kids = parallel_map<std::size_t, Kids>(blown, opt.workers, opt.budget, [&](const std::size_t& id) {
            return blow_state(tree.nodes[id].state, *tree.nodes[id].center, label, step);
        });
        std::vector<std::size_t> next;
        std::size_t k = 0;
        for (auto id : active) {
            if (k < blown.size() && blown[k] == id) {
                rec.charts.push_back(id);
                for (auto& [st, slot] : kids[k]) next.push_back(add_node(id, "blow-up", std::move(st), "blow-up"));
                ++k;
            } else {
                next.push_back(id);
            }
        }
        tree.steps.push_back(std::move(rec));
        prev = gmax;
        active = std::move(next);
    }
    for (auto id : active) tree.nodes[id].leaf = true;
    for (const auto& n : tree.nodes)
        if (n.leaf) tree.leaves.push_back(n.id);
    RunResult out{std::move(tree), {}};
    out.report = verify_tree(out.tree);
    return out;
}

}  // namespace

RunResult resolve(const BasicObject& initial, const Options& opt) {
    if (!initial.is_single()) throw DriverError("resolve expects an ordinary basic object");
    return run(Mode::resolve, initial, initial.J(), opt, std::nullopt, 0);
}

RunResult desingularize(const Pair& w, const Ideal& x, const Options& opt) {
    if (!w.divisors.empty()) throw DriverError("desingularize expects an ambient space without divisors");
    if (x.generators().size() == 1 && !x.generators()[0].is_constant())
        for (const auto& f : squarefree_decomposition(x.generators()[0]))
            if (f.multiplicity > 1) throw DriverError("X is not reduced: repeated factor in its equation");
    BudgetScope scope(opt.budget);
    const Chart& c = w.chart;
    std::size_t ambient = affine_dimension(c.dependency_ideal());
    std::size_t dx = affine_dimension(c.with_dependencies(x));
    std::size_t r = dx >= ambient - c.dim() ? dx - (ambient - c.dim()) : 0;
    if (r > c.dim()) r = c.dim();
    return run(Mode::desingularize, BasicObject::make(w, x, 1), x, opt, stopping_value(c.dim(), r), r);
}

RunResult principalize(const Pair& w, const Ideal& i, const Options& opt) {
    return run(Mode::principalize, BasicObject::make(w, i, 1), i, opt, std::nullopt, 0);
}

}  // namespace desing
