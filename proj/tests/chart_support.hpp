#pragma once

#include <string>

#include "desing/chart/chart.hpp"

namespace testing_support {

using namespace desing;

// Returns an empty string when the chart satisfies its structural invariants.
inline std::string chart_invariant_failure(const Chart& c) {
    for (std::size_t j = 0; j < c.dim(); ++j) {
        for (std::size_t k = 0; k < c.dim(); ++k) {
            Polynomial d = c.derive(c.parameters()[k], j);
            Polynomial expected = j == k ? c.scales()[j] : Polynomial(c.nvars());
            if (!c.is_zero_on(d - expected)) return "chain rule fails at (" + std::to_string(j) + "," + std::to_string(k) + ")";
        }
        for (const auto& dep : c.dependencies())
            if (!c.is_zero_on(c.derive(dep, j))) return "jacobian consistency fails";
        if (!c.is_unit(c.scales()[j])) return "scale is not a unit";
    }
    if (c.is_empty(Ideal::zero(c.nvars()))) return "chart is empty";
    return "";
}

}  // namespace testing_support
