#include <doctest.h>

#include <algorithm>

#include "desing/basic_object/basic_object.hpp"
#include "support.hpp"

using namespace desing;
using namespace testing_support;

namespace {
const Ring R1({"x"});
const Ring R2({"x", "y"});
const Ring R3({"x", "y", "z"});
const Ring R4({"x1", "x2", "x3", "x4"});

Pair plain_pair(const Ring& r, std::vector<Polynomial> divisor_eqs = {}) {
    Pair p{Chart::affine(r), {}};
    int label = 1;
    for (auto& e : divisor_eqs) p.divisors.push_back(Divisor{label++, 0, e, Sign::minus});
    return p;
}

BasicObject object(const Ring& r, std::initializer_list<const char*> gens, unsigned b,
                   std::vector<Polynomial> divisor_eqs = {}) {
    return BasicObject::make(plain_pair(r, std::move(divisor_eqs)), I(r, gens), b);
}

// Transform along the blow-up at center, keeping the child whose exceptional slot is given.
BasicObject blow(const BasicObject& b, const std::vector<std::size_t>& center, std::size_t exceptional_slot, int label) {
    auto kids = blow_up(b.pair, center, label, label);
    for (const auto& k : kids)
        if (k.exceptional_slot == exceptional_slot)
            return transform(b, k.pair, k.map, label, divisors_containing(b.pair, center));
    throw std::logic_error("missing chart");
}

bool same_sing(const BasicObject& a, const Ideal& locus) {
    return a.pair.chart.same_locus(sing_ideal(a), locus);
}
}  // namespace

TEST_CASE("ord_max examples") {
    CHECK(*ord_max(object(R2, {"x^3", "y^4"}, 2)) == Rational(3, 2));
    CHECK(*ord_max(object(R3, {"z^2 + x^3*y^3"}, 2)) == 1);
    CHECK(*ord_max(object(R1, {"x"}, 1)) == 1);
    CHECK_FALSE(ord_max(object(R2, {"x - 1", "y"}, 2)).has_value());
}

TEST_CASE("controlled transform of a plane curve at the origin") {
    auto b = object(R2, {"x^3", "y^4"}, 2);
    auto t = blow(b, {0, 1}, 0, 1);
    const Ring& r = t.pair.chart.ring();
    CHECK(t.weak_J().is_unit());
    CHECK(t.exponents() == std::map<int, unsigned>{{1, 1}});
    CHECK(t.J().same_as(I(r, {"x"})));
    auto s = blow(b, {0, 1}, 1, 1);
    CHECK(s.weak_J().same_as(I(s.pair.chart.ring(), {"x^3", "y"})));
    CHECK(s.exponents() == std::map<int, unsigned>{{1, 1}});
    CHECK(s.J().same_as(I(s.pair.chart.ring(), {"x^3*y", "y^2"})));

    auto h = blow(object(R1, {"x"}, 1), {0}, 0, 1);
    CHECK(h.weak_J().is_unit());
    CHECK(h.exponents().empty());
    CHECK(h.J().is_unit());
}

TEST_CASE("transform at a center outside Sing is rejected") {
    auto b = object(R2, {"x^3", "y"}, 2);
    CHECK_THROWS_AS(blow(b, {0, 1}, 0, 1), BasicObjectError);
}

TEST_CASE("max_word examples") {
    auto fresh = object(R2, {"x^3", "y^4"}, 2);
    CHECK(max_word(fresh)->value == *ord_max(fresh));

    Pair p = plain_pair(R1, {P(R1, "x")});
    auto mono = BasicObject::make(p, I(R1, {"x^2"}), 2);
    CHECK(mono.exponents() == std::map<int, unsigned>{{1, 2}});
    CHECK(max_word(mono)->value == 0);

    auto s = blow(fresh, {0, 1}, 1, 1);
    auto w = max_word(s);
    CHECK(w->value == Rational(1, 2));
    CHECK(s.pair.chart.same_locus(w->locus, I(s.pair.chart.ring(), {"x", "y"})));
}

TEST_CASE("t invariant of the diagonal") {
    auto b = object(R2, {"x - y"}, 1, {P(R2, "x"), P(R2, "y")});
    auto t = t_invariant(b);
    REQUIRE(t);
    CHECK(t->word == 1);
    CHECK(t->n == 2);
    CHECK(b.pair.chart.same_locus(t->locus, I(R2, {"x", "y"})));

    auto none = t_invariant(object(R2, {"x - y"}, 1));
    CHECK(none->word == 1);
    CHECK(none->n == 0);

    auto after = blow(b, {0, 1}, 0, 3);
    REQUIRE(after.pair.find(3));
    CHECK(e_plus(after) == std::vector<int>{3});
    auto t1 = t_invariant(after);
    CHECK(t1->word == 1);
    CHECK(t1->n == 0);
    CHECK(after.pair.chart.same_locus(t1->locus, I(after.pair.chart.ring(), {"y - 1"})));
}

TEST_CASE("intersection of basic objects") {
    auto a = intersect(object(R2, {"x"}, 1), object(R2, {"y"}, 1));
    CHECK(a.b() == 1);
    CHECK(a.J().same_as(I(R2, {"x", "y"})));
    CHECK(same_sing(a, I(R2, {"x", "y"})));

    auto j = object(R2, {"x^3", "y^4"}, 2);
    auto self = intersect(j, j);
    CHECK(self.b() == 4);
    CHECK(self.pair.chart.same_locus(sing_ideal(self), sing_ideal(j)));

    auto k = intersect(j, object(R2, {"x"}, 1));
    CHECK(k.b() == 2);
    CHECK(k.J().same_as(I(R2, {"x^2", "y^4"})));
    CHECK(same_sing(k, I(R2, {"x", "y"})));
}

TEST_CASE("case 2 companion") {
    auto b = object(R2, {"x - y"}, 1, {P(R2, "x"), P(R2, "y")});
    auto c = companion_case2(b, 2);
    REQUIRE(c.members.size() == 2);
    CHECK(full_ideal(c.pair, c.members[1]).same_as(I(R2, {"x", "y"})));
    CHECK(same_sing(c, I(R2, {"x", "y"})));

    auto b3 = object(R3, {"x*y*z"}, 1, {P(R3, "x"), P(R3, "y"), P(R3, "z")});
    auto c3 = companion_case2(b3, 2);
    REQUIRE(c3.members.size() == 2);
    Ideal expected = ideal_product(ideal_product(I(R3, {"x", "y"}), I(R3, {"x", "z"})), I(R3, {"y", "z"}));
    CHECK(full_ideal(c3.pair, c3.members[1]).same_as(expected));

    CHECK(companion_case2(b, 0).members.size() == 1);
}

TEST_CASE("case 3 companion") {
    auto fresh = object(R2, {"x^3", "y^4"}, 2);
    auto w = max_word(fresh);
    auto c = companion_case3(fresh, w->value);
    CHECK(*ord_max(c) == 1);
    CHECK(c.pair.chart.same_locus(sing_ideal(c), w->locus));

    auto s = blow(fresh, {0, 1}, 1, 1);
    auto ws = max_word(s);
    auto cs = companion_case3(s, ws->value);
    CHECK(*ord_max(cs) == 1);
    CHECK(same_sing(cs, I(s.pair.chart.ring(), {"x", "y"})));

    auto one = object(R3, {"z^2 + x^3*y^3"}, 2);
    auto c1 = companion_case3(one, max_word(one)->value);
    CHECK(c1.pair.chart.same_locus(sing_ideal(c1), sing_ideal(one)));
}

TEST_CASE("coefficient ideal") {
    Chart a3 = Chart::affine(R3);
    auto c = coeff_ideal(a3, 2, I(R3, {"z^2 + x^3*y^3"}), 2);
    CHECK(c.control == 2);
    REQUIRE(c.ring.size() == 2);
    CHECK(c.ideal.same_as(I(c.ring, {"x^3*y^3"})));

    auto c1 = coeff_ideal(a3, 2, I(R3, {"x^2 + z"}), 1);
    CHECK(c1.control == 1);
    CHECK(c1.ideal.same_as(I(c1.ring, {"x^2"})));

    CHECK_THROWS_AS(coeff_ideal(a3, 2, I(R3, {"z"}), 1), BasicObjectError);
}

TEST_CASE("coefficient family on the hypersurface of maximal contact") {
    auto b = object(R3, {"z^2 + x^3*y^3"}, 2);
    auto f = coefficient_family(b, 2, {});
    CHECK(f.pair.chart.same_locus(sing_ideal(f), ideal_sum(sing_ideal(b), I(R3, {"z"}))));
}

TEST_CASE("maximal contact") {
    auto m = maximal_contact(object(R3, {"z^2 + x^3*y^3"}, 2));
    CHECK(m.f.monic() == P(R3, "z"));
    REQUIRE(m.charts.size() == 1);

    auto d = maximal_contact(object(R2, {"x - y"}, 1));
    CHECK(d.f.monic() == P(R2, "x - y"));
    REQUIRE(d.charts.size() == 1);
    const Chart& c = d.charts[0].chart;
    CHECK(c.parameter_index(d.charts[0].map(P(R2, "x - y"))).has_value());
    CHECK(c.parameter_index(d.charts[0].map(P(R2, "y"))).has_value());

    auto e = maximal_contact(object(R3, {"z^2 + y^3*x^2"}, 2));
    CHECK(e.f.monic() == P(R3, "z"));
}

TEST_CASE("codimension one part of Sing") {
    auto r = r1_locus(object(R2, {"x^2*(1 + y)", "x^2*y*(1 + y)"}, 2));
    REQUIRE(r);
    CHECK(Chart::affine(R2).same_locus(Ideal::principal(*r), I(R2, {"x"})));

    CHECK_FALSE(r1_locus(object(R3, {"z^2 + x^3*y^3"}, 2)).has_value());

    auto xy = r1_locus(object(R2, {"x^2*y^3"}, 2));
    REQUIRE(xy);
    CHECK(xy->monic() == P(R2, "x"));
}

TEST_CASE("monomial case value") {
    std::vector<Polynomial> eqs{P(R4, "x1"), P(R4, "x2"), P(R4, "x3"), P(R4, "x4")};
    auto b = object(R4, {"x1^6*x2^4*x3^2*x4^2"}, 9, eqs);
    CHECK(b.weak_J().is_unit());
    CHECK(max_word(b)->value == 0);
    auto h = monomial_h(b);
    CHECK(to_string(TElem::gamma(h.h)) == "(-2,10/9,[1,2,0,0])");
    CHECK(h.labels == std::vector<int>{1, 2});

    auto t = blow(b, {1, 0}, 1, 5);
    CHECK(t.exponents() == std::map<int, unsigned>{{1, 6}, {3, 2}, {4, 2}, {5, 1}});
    auto h1 = monomial_h(t);
    CHECK(to_string(TElem::gamma(h1.h)) == "(-3,10/9,[1,3,4,0])");
    CHECK(h1.labels == std::vector<int>{1, 3, 4});
    CHECK(TElem::gamma(h1.h) < TElem::gamma(h.h));

    auto one = object(R2, {"x^5"}, 3, {P(R2, "x")});
    CHECK(to_string(TElem::gamma(monomial_h(one).h)) == "(-1,5/3,[1,0])");
}

TEST_CASE("inclusion check") {
    auto j = object(R2, {"x^3", "y^4"}, 2);
    auto j2 = BasicObject::make(j.pair, ideal_power(j.J(), 2), 4);
    std::vector<SequenceStep> seq{{{0, 1}, 1}};
    CHECK(inclusion_check(j2, j, seq));
    CHECK(inclusion_check(j, j2, seq));

    auto bigger = object(R2, {"x^3", "y^4", "x^2*y^2"}, 2);
    CHECK(inclusion_check(bigger, j, {{{0, 1}, 0}}));

    CHECK_FALSE(inclusion_check(object(R2, {"x"}, 1), object(R2, {"y"}, 1), {}));
}

TEST_CASE("invariant values render and parse") {
    CHECK(to_string(TElem::infinity()) == "inf");
    CHECK(to_string(TElem::pair(Rational(3, 2), 2)) == "(3/2,2)");
    Composite c{TElem::pair(1, 2), TElem::infinity()};
    CHECK(to_string(c) == "((1,2), inf)");
    CHECK(parse_telem("(-2,10/9,[1,2,0,0])") == TElem::gamma(Gamma{-2, Rational(10, 9), {1, 2, 0, 0}}));
    CHECK_THROWS_AS(parse_telem("(1"), std::invalid_argument);
    CHECK(to_string(stopping_value(3, 1)) == "((1,0), (1,0), inf)");
    CHECK(TElem::gamma(Gamma{-1, 5, {}}) < TElem::pair(0, 0));
    CHECK(TElem::pair(7, 9) < TElem::infinity());
}

TEST_CASE("property: invariant order is a strict total order and rendering round-trips") {
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> small(-3, 3), kind(0, 2), len(0, 3);
    auto random_elem = [&]() {
        switch (kind(rng)) {
        case 0: {
            Gamma g{small(rng), Rational(small(rng), 1 + std::abs(small(rng))), {}};
            g.omega.canonicalize();
            for (int i = len(rng); i > 0; --i) g.ell.push_back(std::abs(small(rng)));
            return TElem::gamma(g);
        }
        case 1: {
            Rational w(small(rng), 1 + std::abs(small(rng)));
            w.canonicalize();
            return TElem::pair(w, small(rng));
        }
        default:
            return TElem::infinity();
        }
    };
    for (int it = 0; it < 300; ++it) {
        TElem a = random_elem(), b = random_elem(), c = random_elem();
        int ab = (a < b) + (b < a) + (a == b);
        CHECK(ab == 1);
        if (a < b && b < c) CHECK(a < c);
        CHECK(parse_telem(to_string(a)) == a);
        Composite x{a, b}, y{b, c};
        int xy = less(x, y) + less(y, x) + (compare(x, y) == 0);
        CHECK(xy == 1);
    }
}

TEST_CASE("property: Sing of an intersection is the intersection of the Sing loci") {
    std::mt19937 rng(22);
    Chart a2 = Chart::affine(R2);
    for (int it = 0; it < 200; ++it) {
        unsigned b = 1 + unsigned(it % 2), c = 1 + unsigned((it / 2) % 2);
        Polynomial f = random_poly(rng, 2, 4, 3), g = random_poly(rng, 2, 4, 3);
        if (f.is_zero() || g.is_zero()) continue;
        auto A = BasicObject::make(plain_pair(R2), Ideal::principal(f), b);
        auto B = BasicObject::make(plain_pair(R2), Ideal::principal(g), c);
        Ideal both = ideal_sum(sing_ideal(A), sing_ideal(B));
        CHECK(a2.same_locus(sing_ideal(intersect(A, B)), both));
        CHECK(a2.same_locus(sing_ideal(family_intersection(A, B)), both));
    }
}

TEST_CASE("property: exponent extraction is exact") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<unsigned> e(0, 3);
    std::vector<Polynomial> eqs{P(R3, "x"), P(R3, "y")};
    Pair p = plain_pair(R3, eqs);
    for (int it = 0; it < 200; ++it) {
        Polynomial mono = P(R3, "x").pow(e(rng)) * P(R3, "y").pow(e(rng));
        Polynomial f = random_poly(rng, 3, 3, 3), g = random_poly(rng, 3, 3, 3);
        if (f.is_zero() && g.is_zero()) continue;
        Ideal j(3, {f * mono, g * mono});
        auto b = BasicObject::make(p, j, 2);
        CHECK(b.J().same_as(j));
        for (const auto& d : p.divisors) CHECK(ideal_valuation(p.chart, b.weak_J(), d.equation) == 0);
        for (const auto& [l, a] : b.exponents()) CHECK(ideal_valuation(p.chart, j, p.find(l)->equation) == a);
    }
}

TEST_CASE("property: companions cut out the maximal loci after a blow-up") {
    std::mt19937 rng(24);
    std::vector<Polynomial> eqs{P(R2, "x"), P(R2, "y")};
    int checked = 0;
    for (int it = 0; checked < 200 && it < 2000; ++it) {
        Polynomial f = P(R2, "x").pow(2 + it % 2) + P(R2, "y").pow(2 + (it / 2) % 3) + random_poly(rng, 2, 4, 2) * P(R2, "x*y");
        auto b = BasicObject::make(plain_pair(R2, eqs), Ideal::principal(f), 2);
        if (sing_empty(b)) continue;
        BasicObject s = b;
        if (it % 3) {
            s = blow(b, {0, 1}, std::size_t(it % 2), 3);
            if (sing_empty(s)) continue;
        }
        auto w = max_word(s);
        if (w->value == 0) continue;
        auto c3 = companion_case3(s, w->value);
        CHECK(s.pair.chart.same_locus(sing_ideal(c3), w->locus));
        auto t = t_invariant(s);
        auto c2 = companion_case2(c3, t->n);
        CHECK(s.pair.chart.same_locus(sing_ideal(c2), t->locus));
        ++checked;
    }
    CHECK(checked == 200);
}
