#pragma once

#include <optional>
#include <string>

#include "desing/algebra/ideal.hpp"

namespace desing {

class ChartError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Polynomial map from the variables of one ring into another.
struct RingMap {
    std::vector<Polynomial> images;
    std::size_t target_nvars = 0;

    static RingMap identity(std::size_t n);
    Polynomial operator()(const Polynomial& p) const { return p.substitute(images, target_nvars); }
    Ideal operator()(const Ideal& i) const { return i.substitute(images, target_nvars); }
    // (g after this): first apply *this, then g.
    RingMap then(const RingMap& g) const;
};

enum class Sign { plus, minus };

struct Divisor {
    int label = 0;
    int birth = 0;
    Polynomial equation;
    Sign sign = Sign::minus;
};

// Smooth affine patch: ambient variables, dependency ideal, regular parameters, and
// derivations D_j with D_j(X_i) = deriv[i][j] and D_j(P_k) = scale[j] * delta_jk.
class Chart {
public:
    Chart() = default;
    static Chart affine(const Ring& ring);

    const Ring& ring() const { return ring_; }
    std::size_t nvars() const { return ring_.size(); }
    std::size_t dim() const { return params_.size(); }
    const std::vector<Polynomial>& dependencies() const { return deps_; }
    const std::vector<Polynomial>& parameters() const { return params_; }
    const std::vector<std::vector<Polynomial>>& deriv_matrix() const { return deriv_; }
    const std::vector<Polynomial>& scales() const { return scales_; }
    const std::vector<Polynomial>& inequations() const { return ineqs_; }
    bool is_plain() const;

    Polynomial derive(const Polynomial& f, std::size_t j) const;
    Polynomial inequation_product() const;
    Ideal dependency_ideal() const { return Ideal(nvars(), deps_); }
    Ideal with_dependencies(const Ideal& i) const;

    // V(I) does not meet the chart.
    bool is_empty(const Ideal& i) const;
    bool is_unit(const Polynomial& g) const { return is_empty(Ideal::principal(g)); }
    // f lies in I on the chart (after localizing at the inequations).
    bool contains(const Ideal& i, const Polynomial& f) const;
    bool contains(const Ideal& i, const Ideal& j) const;
    // f vanishes on V(I) within the chart.
    bool vanishes_on(const Ideal& i, const Polynomial& f) const;
    bool same_locus(const Ideal& a, const Ideal& b) const;
    bool same_ideal(const Ideal& a, const Ideal& b) const { return contains(a, b) && contains(b, a); }
    bool is_zero_on(const Polynomial& f) const;

    // Index of the parameter equal to f up to a nonzero constant.
    std::optional<std::size_t> parameter_index(const Polynomial& f) const;

    // Raw builders; callers keep the invariants.
    Chart with_inequation(const Polynomial& g) const;
    Chart exchanged(std::size_t slot, const Polynomial& f) const;
    // Moves parameter slot into the dependencies and drops its derivation.
    Chart restricted(std::size_t slot) const;

private:
    Ring ring_;
    std::vector<Polynomial> deps_;
    std::vector<Polynomial> params_;
    std::vector<std::vector<Polynomial>> deriv_;
    std::vector<Polynomial> scales_;
    std::vector<Polynomial> ineqs_;
    friend struct ChartAccess;
};

// Grants blow-up and simplification code mutable access.
struct ChartAccess {
    static Ring& ring(Chart& c) { return c.ring_; }
    static std::vector<Polynomial>& deps(Chart& c) { return c.deps_; }
    static std::vector<Polynomial>& params(Chart& c) { return c.params_; }
    static std::vector<std::vector<Polynomial>>& deriv(Chart& c) { return c.deriv_; }
    static std::vector<Polynomial>& scales(Chart& c) { return c.scales_; }
    static std::vector<Polynomial>& ineqs(Chart& c) { return c.ineqs_; }
};

struct Pair {
    Chart chart;
    std::vector<Divisor> divisors;

    const Divisor* find(int label) const;
};

// Ring change of a chart together with the map taking old polynomials to new ones.
struct ChartChange {
    Chart chart;
    RingMap map;
};

// Eliminates dependencies of the form c*v - h with c constant and v not in h.
ChartChange simplify(const Chart& c);

Ideal delta(const Chart& c, const Ideal& i);
Ideal delta_power(const Chart& c, const Ideal& i, unsigned k);
unsigned max_order(const Chart& c, const Ideal& i, const std::optional<Ideal>& restrict_to = std::nullopt);
Ideal sing_locus(const Chart& c, const Ideal& i, unsigned b);

bool is_smooth(const Chart& c, const Ideal& z, std::size_t expected_codim);
bool has_normal_crossings(const Chart& c, const std::vector<Ideal>& hypersurfaces);

struct Exchange {
    Chart chart;
    RingMap map;
    std::size_t slot;
};

// Covers V(target) by opens on which f becomes a parameter. Slots listed in avoid
// are used only when no other slot has a unit derivative.
std::vector<Exchange> cover_and_exchange(const Chart& c, const Polynomial& f, const Ideal& target,
                                         const std::vector<std::size_t>& avoid = {});

struct BlowUpChild {
    Pair pair;
    RingMap map;
    std::size_t exceptional_slot;
    // Parameter slot of the strict transform of each center parameter (nullopt for the exceptional one).
    std::vector<std::optional<std::size_t>> center_slots;
};

// Blow-up along the parameters in center; the new exceptional divisor gets label/birth given.
std::vector<BlowUpChild> blow_up(const Pair& pair, const std::vector<std::size_t>& center, int new_label,
                                 int new_birth, bool check_preconditions = true);

Pair restrict_to_hypersurface(const Pair& pair, std::size_t slot, bool eliminate = true);

// Sets every dependency that is a single variable to zero.
Polynomial reduce_on(const Chart& c, const Polynomial& f);
Ideal reduce_on(const Chart& c, const Ideal& i);

// Highest power of the parameter dividing every generator of I on the chart; I / e^k.
unsigned ideal_valuation(const Chart& c, const Ideal& i, const Polynomial& e);
Ideal divide_ideal(const Chart& c, const Ideal& i, const Polynomial& e, unsigned k);

}  // namespace desing
