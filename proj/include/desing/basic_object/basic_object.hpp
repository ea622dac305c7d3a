#pragma once

#include <map>
#include <optional>
#include <stdexcept>

#include "desing/basic_object/invariant.hpp"
#include "desing/chart/chart.hpp"

namespace desing {

class BasicObjectError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Marked ideal (A, c) stored as A = prod_H I(H)^alpha_H * weak, with weak not divisible by any I(H).
struct Marked {
    Ideal weak;
    std::map<int, unsigned> alpha;
    unsigned control = 1;
};

// Intersection of marked ideals on a pair; an ordinary basic object (W,(J,b),E) has one member.
// stage_birth: divisors born at or before it form E-minus; stage_word: max w-ord of the current stage.
struct BasicObject {
    Pair pair;
    std::vector<Marked> members;
    int stage_birth = 0;
    std::optional<Rational> stage_word;

    static BasicObject make(Pair pair, const Ideal& j, unsigned b);

    bool is_single() const { return members.size() == 1; }
    unsigned b() const { return single().control; }
    const Ideal& weak_J() const { return single().weak; }
    const std::map<int, unsigned>& exponents() const { return single().alpha; }
    Ideal J() const;

private:
    const Marked& single() const;
};

// prod_H I(H)^alpha_H * weak on the given pair.
Ideal full_ideal(const Pair& pair, const Marked& m);

Ideal sing_ideal(const BasicObject& b);
bool sing_empty(const BasicObject& b);

// max over Sing of the order divided by the control; nullopt when Sing is empty.
std::optional<Rational> ord_max(const BasicObject& b);

struct WordResult {
    Rational value;
    Ideal locus;
};
// Max w-ord and its locus inside Sing; nullopt when Sing is empty.
std::optional<WordResult> max_word(const BasicObject& b);

struct TResult {
    Rational word;
    int n = 0;
    Ideal word_locus;
    Ideal locus;
    // Label sets of E-minus of size n meeting the Max w-ord locus.
    std::vector<std::vector<int>> subsets;
};
// Requires max w-ord > 0.
std::optional<TResult> t_invariant(const BasicObject& b);

std::vector<int> e_minus(const BasicObject& b);
std::vector<int> e_plus(const BasicObject& b);

// Literal (J^c + I^b, b*c) for two ordinary basic objects on the same pair.
BasicObject intersect(const BasicObject& a, const BasicObject& b);
// Family form: the members of both.
BasicObject family_intersection(const BasicObject& a, const BasicObject& b);

// (weak J, b_k) intersected with (J, b), where max w-ord = word > 0; family form.
BasicObject companion_case3(const BasicObject& b, const Rational& word);
// Adds (P, 1) with P the product over all m-subsets of E-minus of the sums of their ideals.
BasicObject companion_case2(const BasicObject& b, int m);

struct CoeffIdeal {
    Ideal ideal;
    unsigned control;
    Ring ring;
};
// Literal sum of (Delta^i(J) restricted to V(P_slot))^(b!/(b-i)), control b!, in the eliminated ring of Z.
CoeffIdeal coeff_ideal(const Chart& w, std::size_t slot, const Ideal& j, unsigned b);

// Coefficient family on Z = V(P_slot) (not eliminated); divisors of Z are those with the given labels.
BasicObject coefficient_family(const BasicObject& b, std::size_t slot, const std::vector<int>& labels);

struct ContactChoice {
    Polynomial f;
    std::size_t member;
};
// Candidates f in Delta^(c-1)(A) of a member, with order one along Sing; parameters outside avoid come first.
std::vector<ContactChoice> contact_candidates(const BasicObject& b, const std::vector<std::size_t>& avoid);

struct MaximalContact {
    Polynomial f;
    std::vector<Exchange> charts;
};
MaximalContact maximal_contact(const BasicObject& b, const std::vector<std::size_t>& avoid = {});

// Codimension-one part of Sing; checked smooth and with normal crossings with the divisors.
std::optional<Polynomial> r1_locus(const BasicObject& b);

struct MonomialCenter {
    Gamma h;
    std::vector<int> labels;
};
// Requires max w-ord = 0.
MonomialCenter monomial_h(const BasicObject& b);

// Labels of the divisors of the pair containing V(P_center).
std::vector<int> divisors_containing(const Pair& pair, const std::vector<std::size_t>& center);

// Transform of every member under a blow-up whose new exceptional divisor has label new_label in child.
// containing: labels of the divisors that contained the center.
BasicObject transform(const BasicObject& b, const Pair& child, const RingMap& map, int new_label,
                      const std::vector<int>& containing);

struct SequenceStep {
    std::vector<std::size_t> center;
    std::size_t child = 0;
};
// Sing(smaller) inside Sing(larger) at every stage of the sequence (which must be permissible for smaller).
bool inclusion_check(const BasicObject& smaller, const BasicObject& larger, const std::vector<SequenceStep>& steps);

// Exponent extraction: largest a_H with I in I(H)^a_H, for each label, and the remaining quotient.
Marked make_marked(const Pair& pair, const Ideal& i, unsigned control, const std::vector<int>& labels);

}  // namespace desing
