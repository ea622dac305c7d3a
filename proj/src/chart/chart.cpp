#include "desing/chart/chart.hpp"

#include <algorithm>

namespace desing {

RingMap RingMap::identity(std::size_t n) {
    RingMap m;
    m.target_nvars = n;
    for (std::size_t i = 0; i < n; ++i) m.images.push_back(Polynomial::variable(n, i));
    return m;
}

RingMap RingMap::then(const RingMap& g) const {
    RingMap out;
    out.target_nvars = g.target_nvars;
    for (const auto& p : images) out.images.push_back(g(p));
    return out;
}

Chart Chart::affine(const Ring& ring) {
    Chart c;
    c.ring_ = ring;
    std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        c.params_.push_back(ring.var(i));
        c.scales_.push_back(ring.constant(1));
        std::vector<Polynomial> row;
        for (std::size_t j = 0; j < n; ++j) row.push_back(ring.constant(i == j ? 1 : 0));
        c.deriv_.push_back(std::move(row));
    }
    return c;
}

bool Chart::is_plain() const {
    if (!deps_.empty() || !ineqs_.empty() || params_.size() != nvars()) return false;
    for (std::size_t i = 0; i < nvars(); ++i) {
        if (params_[i] != ring_.var(i) || scales_[i] != ring_.constant(1)) return false;
        for (std::size_t j = 0; j < params_.size(); ++j)
            if (deriv_[i][j] != ring_.constant(i == j ? 1 : 0)) return false;
    }
    return true;
}

Polynomial Chart::derive(const Polynomial& f, std::size_t j) const {
    Polynomial out(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
        if (deriv_[i][j].is_zero() || !f.uses_variable(i)) continue;
        out += f.derivative(i) * deriv_[i][j];
    }
    return out;
}

Polynomial Chart::inequation_product() const {
    Polynomial h = ring_.constant(1);
    for (const auto& g : ineqs_) h *= g;
    return h;
}

Ideal Chart::with_dependencies(const Ideal& i) const {
    if (deps_.empty()) return i;
    return ideal_sum(i, dependency_ideal());
}

bool Chart::is_empty(const Ideal& i) const { return unit_on_open(with_dependencies(i), inequation_product()); }

bool Chart::contains(const Ideal& i, const Polynomial& f) const {
    if (f.is_zero()) return true;
    Ideal a = with_dependencies(i);
    if (a.contains(f)) return true;
    if (ineqs_.empty()) return false;
    return saturate(a, inequation_product()).contains(f);
}

bool Chart::contains(const Ideal& i, const Ideal& j) const {
    Ideal a = with_dependencies(i);
    std::optional<Ideal> sat;
    for (const auto& g : j.generators()) {
        if (a.contains(g)) continue;
        if (ineqs_.empty()) return false;
        if (!sat) sat = saturate(a, inequation_product());
        if (!sat->contains(g)) return false;
    }
    return true;
}

bool Chart::vanishes_on(const Ideal& i, const Polynomial& f) const {
    return in_radical(with_dependencies(i), f, inequation_product());
}

bool Chart::same_locus(const Ideal& a, const Ideal& b) const {
    for (const auto& g : a.generators())
        if (!vanishes_on(b, g)) return false;
    for (const auto& g : b.generators())
        if (!vanishes_on(a, g)) return false;
    return true;
}

bool Chart::is_zero_on(const Polynomial& f) const { return contains(Ideal::zero(nvars()), f); }

std::optional<std::size_t> Chart::parameter_index(const Polynomial& f) const {
    if (f.is_zero() || f.is_constant()) return std::nullopt;
    Polynomial m = f.monic();
    for (std::size_t j = 0; j < params_.size(); ++j)
        if (params_[j].monic() == m) return j;
    return std::nullopt;
}

Chart Chart::with_inequation(const Polynomial& g) const {
    Chart c(*this);
    if (g.is_constant()) return c;
    Polynomial p = g.primitive();
    if (std::find(c.ineqs_.begin(), c.ineqs_.end(), p) == c.ineqs_.end()) c.ineqs_.push_back(p);
    return c;
}

Chart Chart::exchanged(std::size_t slot, const Polynomial& f) const {
    Chart c(*this);
    Polynomial g = derive(f, slot);
    std::vector<Polynomial> df;
    for (std::size_t m = 0; m < dim(); ++m) df.push_back(m == slot ? g : derive(f, m));
    for (std::size_t m = 0; m < dim(); ++m) {
        if (m == slot || df[m].is_zero()) continue;
        for (std::size_t i = 0; i < nvars(); ++i) c.deriv_[i][m] = g * deriv_[i][m] - df[m] * deriv_[i][slot];
        c.scales_[m] = g * scales_[m];
    }
    c.scales_[slot] = g;
    c.params_[slot] = f;
    return c.with_inequation(g);
}

Chart Chart::restricted(std::size_t slot) const {
    Chart c(*this);
    c.deps_.push_back(params_[slot]);
    c.params_.erase(c.params_.begin() + long(slot));
    c.scales_.erase(c.scales_.begin() + long(slot));
    for (auto& row : c.deriv_) row.erase(row.begin() + long(slot));
    return c;
}

const Divisor* Pair::find(int label) const {
    for (const auto& d : divisors)
        if (d.label == label) return &d;
    return nullptr;
}

namespace {

// Variable v such that g = c*v + h with c a nonzero constant and v not in h.
std::optional<std::pair<std::size_t, Rational>> linear_variable(const Polynomial& g) {
    for (std::size_t v = 0; v < g.nvars(); ++v) {
        int uses = 0;
        Rational coef;
        bool ok = true;
        for (const auto& t : g.terms()) {
            if (!t.mono[v]) continue;
            ++uses;
            if (t.mono.degree() != 1) ok = false;
            coef = t.coef;
        }
        if (ok && uses == 1) return std::make_pair(v, coef);
    }
    return std::nullopt;
}

}  // namespace

ChartChange simplify(const Chart& input) {
    Chart c = input;
    RingMap total = RingMap::identity(c.nvars());
    for (;;) {
        auto& deps = ChartAccess::deps(c);
        std::optional<std::size_t> which;
        std::optional<std::pair<std::size_t, Rational>> lin;
        for (std::size_t k = 0; k < deps.size() && !which; ++k) {
            lin = linear_variable(deps[k]);
            if (lin) which = k;
        }
        if (!which) break;
        auto [v, coef] = *lin;
        std::size_t n = c.nvars();
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i)
            if (i != v) names.push_back(c.ring().name(i));
        Ring ring(names);
        Polynomial g = deps[*which];
        Polynomial h = g - Polynomial::monomial(Monomial::variable(n, v), coef);
        RingMap shrink;
        shrink.target_nvars = n - 1;
        std::vector<Polynomial> drop_images;
        for (std::size_t i = 0; i < n; ++i)
            drop_images.push_back(i == v ? Polynomial(n - 1) : Polynomial::variable(n - 1, i < v ? i : i - 1));
        Polynomial solved = (-h).substitute(drop_images, n - 1) * (1 / coef);
        for (std::size_t i = 0; i < n; ++i)
            shrink.images.push_back(i == v ? solved : Polynomial::variable(n - 1, i < v ? i : i - 1));

        Chart next;
        ChartAccess::ring(next) = ring;
        for (std::size_t k = 0; k < deps.size(); ++k) {
            if (k == *which) continue;
            Polynomial d = shrink(deps[k]);
            if (d.is_zero()) continue;
            if (d.is_constant()) throw ChartError("dependencies became inconsistent during simplification");
            ChartAccess::deps(next).push_back(d.primitive());
        }
        for (const auto& p : c.parameters()) ChartAccess::params(next).push_back(shrink(p));
        for (const auto& s : c.scales()) ChartAccess::scales(next).push_back(shrink(s));
        for (std::size_t i = 0; i < n; ++i) {
            if (i == v) continue;
            std::vector<Polynomial> row;
            for (const auto& e : c.deriv_matrix()[i]) row.push_back(shrink(e));
            ChartAccess::deriv(next).push_back(std::move(row));
        }
        for (const auto& q : c.inequations()) {
            Polynomial s = shrink(q);
            if (s.is_zero()) throw ChartError("inequation vanishes identically");
            if (!s.is_constant()) ChartAccess::ineqs(next).push_back(s.primitive());
        }
        total = total.then(shrink);
        c = std::move(next);
    }
    return {std::move(c), std::move(total)};
}

Ideal delta(const Chart& c, const Ideal& i) {
    std::vector<Polynomial> gens = i.generators();
    for (const auto& g : i.generators())
        for (std::size_t j = 0; j < c.dim(); ++j) {
            Polynomial d = c.derive(g, j);
            if (!d.is_zero()) gens.push_back(d);
        }
    Ideal out(c.nvars(), std::move(gens));
    return Ideal(c.nvars(), out.basis());
}

Ideal delta_power(const Chart& c, const Ideal& i, unsigned k) {
    Ideal cur = i;
    for (unsigned s = 0; s < k; ++s) {
        if (cur.is_unit()) break;
        cur = delta(c, cur);
    }
    return cur;
}

unsigned max_order(const Chart& c, const Ideal& i, const std::optional<Ideal>& restrict_to) {
    Ideal where = restrict_to ? *restrict_to : Ideal::zero(c.nvars());
    Ideal cur = i;
    for (unsigned t = 0; t < 256; ++t) {
        if (c.is_empty(ideal_sum(cur, where))) return t;
        Ideal next = delta(c, cur);
        if (cur.is_zero() || next.basis() == Ideal(c.nvars(), cur.generators()).basis()) break;
        cur = std::move(next);
    }
    throw ChartError("ideal vanishes identically on the chart (order is unbounded)");
}

Ideal sing_locus(const Chart& c, const Ideal& i, unsigned b) {
    if (b == 0) throw ChartError("control must be positive");
    return c.with_dependencies(delta_power(c, i, b - 1));
}

}  // namespace desing
