#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "desing/algebra/polynomial.hpp"

namespace desing {

struct Budget {
    std::size_t max_spairs = 2'000'000;
    std::size_t max_coeff_bits = 200'000;
};

// Installs a budget for Groebner computations on the current thread.
class BudgetScope {
public:
    explicit BudgetScope(const Budget& b);
    ~BudgetScope();
    BudgetScope(const BudgetScope&) = delete;
    BudgetScope& operator=(const BudgetScope&) = delete;

private:
    Budget saved_;
};

const Budget& current_budget();

// Reduced Groebner basis of the polynomials under ord, sorted by descending leading monomial.
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens, std::size_t nvars,
                                       const MonomialOrder& ord);

// Remainder of f modulo a Groebner basis computed under ord.
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis, const MonomialOrder& ord);

// Exact quotient g / f; throws AlgebraError if f does not divide g.
Polynomial divide_exact(const Polynomial& g, const Polynomial& f);
std::optional<Polynomial> try_divide(const Polynomial& g, const Polynomial& f);

class Ideal {
public:
    Ideal() = default;
    Ideal(std::size_t nvars, std::vector<Polynomial> gens);
    static Ideal zero(std::size_t nvars) { return Ideal(nvars, {}); }
    static Ideal unit(std::size_t nvars) { return Ideal(nvars, {Polynomial::constant(nvars, 1)}); }
    static Ideal principal(const Polynomial& f) { return Ideal(f.nvars(), {f}); }

    std::size_t nvars() const { return nvars_; }
    const std::vector<Polynomial>& generators() const { return gens_; }
    // Reduced degrevlex Groebner basis, computed once and shared by copies.
    const std::vector<Polynomial>& basis() const;
    std::vector<Polynomial> basis(const MonomialOrder& ord) const;

    bool is_zero() const { return gens_.empty(); }
    bool is_unit() const;
    bool contains(const Polynomial& f) const;
    bool contains(const Ideal& other) const;
    bool same_as(const Ideal& other) const { return contains(other) && other.contains(*this); }
    Polynomial reduce(const Polynomial& f) const;

    // Ideal generated by the reduced basis (canonical presentation).
    Ideal canonical() const { return Ideal(nvars_, basis()); }
    Ideal extended(std::size_t nvars) const;
    Ideal substitute(const std::vector<Polynomial>& images, std::size_t target_nvars) const;

private:
    struct Cache {
        std::once_flag once;
        std::vector<Polynomial> gb;
    };
    std::size_t nvars_ = 0;
    std::vector<Polynomial> gens_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);
Ideal ideal_power(const Ideal& a, unsigned n);
Ideal ideal_intersection(const Ideal& a, const Ideal& b);
Ideal ideal_quotient(const Ideal& a, const Polynomial& f);

struct Saturation {
    Ideal ideal;
    unsigned index;
};
Saturation saturation(const Ideal& a, const Polynomial& f);

// I : f^infinity computed in one elimination (no stabilization index).
Ideal saturate(const Ideal& a, const Polynomial& f);

// Eliminates the first k variables; the result lives in nvars - k variables.
Ideal eliminate_leading(const Ideal& a, std::size_t k);

// Maps variable i to i + k in a ring of nvars + k variables.
Polynomial shift_variables(const Polynomial& f, std::size_t k);

// True iff 1 lies in I + <1 - t*g> (V(I) does not meet the open set g != 0).
bool unit_on_open(const Ideal& a, const Polynomial& g);

// Radical membership: f vanishes on V(I) within g != 0.
bool in_radical(const Ideal& a, const Polynomial& f, const Polynomial& g);

}  // namespace desing
