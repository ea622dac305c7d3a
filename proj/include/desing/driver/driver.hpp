#pragma once

#include <optional>
#include <string>
#include <vector>

#include "desing/basic_object/basic_object.hpp"

namespace desing {

class DriverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Mode { resolve, desingularize, principalize };
std::string to_string(Mode m);

struct Options {
    unsigned workers = 1;
    bool debug_checks = false;
    std::optional<std::size_t> max_steps;
    Budget budget;
};

// One level of the maximal-contact tower: a basic object on Z = V(top parameters at fixed).
// Members live in the top ring; the pair is the top pair restricted at the fixed slots.
struct Level {
    BasicObject object;
    std::vector<std::size_t> fixed;
    std::vector<int> labels;
    TElem built_for = TElem::infinity();
};

struct ChartState {
    BasicObject top;
    // Controlled transform of the input ideal, kept independently of the exponent bookkeeping.
    Ideal controlled;
    std::vector<Level> levels;
    // Exponent of each exceptional divisor in the total transform of the input ideal.
    std::map<int, unsigned> totals;
    RingMap from_root;
    // Contact hypersurface chosen before an exchange, per tower level, reused on the exchanged charts.
    std::map<std::size_t, Polynomial> hints;

    static ChartState make(const BasicObject& b);
};

enum class CenterKind { hypersurface, inductive, monomial };
std::string to_string(CenterKind k);

struct CenterDescriptor {
    std::vector<std::size_t> slots;
    Composite value;
    CenterKind kind = CenterKind::inductive;
};

// Outcome of center selection on one chart: resolved, a center, or a cover by smaller charts.
struct Selection {
    bool resolved = false;
    std::optional<CenterDescriptor> center;
    std::vector<ChartState> pieces;
    std::vector<std::string> piece_kinds;
    std::size_t debug_checks = 0;
};

// The state on the open subset of the chart where g does not vanish.
ChartState restrict_to_open(const ChartState& s, const Polynomial& g);

// Evaluates the invariant on the chart at the given step, updating stages and towers in place.
Selection select_center(ChartState& s, int step, bool debug_checks = false);

struct ChartNode {
    std::size_t id = 0;
    std::optional<std::size_t> parent;
    std::string origin;
    int step = 0;
    ChartState state;
    std::optional<CenterDescriptor> center;
    bool resolved = false;
    bool leaf = false;
};

struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::string kind;
    int step = 0;
};

struct StepRecord {
    int step = 0;
    Composite value;
    int label = 0;
    std::vector<std::size_t> charts;
};

struct ResolutionTree {
    Mode mode = Mode::resolve;
    Ring ring;
    Ideal input;
    unsigned b = 1;
    std::vector<ChartNode> nodes;
    std::vector<Edge> edges;
    std::vector<std::size_t> leaves;
    std::vector<StepRecord> steps;
    std::optional<Composite> stop_value;
    std::size_t dim_x = 0;
    std::size_t debug_checks = 0;
};

struct CheckEntry {
    std::size_t node = 0;
    std::string name;
    bool ok = false;
};

struct VerificationReport {
    std::vector<CheckEntry> entries;
    bool all_green() const;
};

struct RunResult {
    ResolutionTree tree;
    VerificationReport report;
};

RunResult resolve(const BasicObject& initial, const Options& opt = {});
// W must carry no divisors; X reduced.
RunResult desingularize(const Pair& w, const Ideal& x, const Options& opt = {});
RunResult principalize(const Pair& w, const Ideal& i, const Options& opt = {});

VerificationReport verify_tree(const ResolutionTree& tree);

// Krull dimension of V(I) in affine space over the ring of I.
std::size_t affine_dimension(const Ideal& i);

// Strict transform of the input on a leaf: saturation by every exceptional parameter.
Ideal strict_transform(const ResolutionTree& tree, const ChartNode& leaf);

}  // namespace desing
