#pragma once

#include <vector>

// Two-objective dominance machinery: accuracy is maximized, latency is
// minimized. All selection functions return sorted arch_id vectors so the
// engine's traces are deterministic.

namespace sonarsim {

struct ObjectivePoint {
    int arch_id = -1;
    double accuracy = 0.0;  // fraction in [0, 1], higher is better
    double latency = 0.0;   // milliseconds, lower is better

    bool operator==(const ObjectivePoint&) const = default;
};

// Fronts F1, F2, ... from iterated Pareto-front removal. Fronts partition
// the input; every point in F(k+1) is dominated by some point in F(k).
struct NdsRanking {
    std::vector<std::vector<int>> fronts;
};

// Strict dominance: at least as good on both axes and strictly better on
// one. Identical points do not dominate each other.
bool dominates(const ObjectivePoint& p, const ObjectivePoint& q);

// Points dominated by no other input point. Throws UsageError on empty
// input or duplicate arch_ids.
std::vector<int> pareto_front(const std::vector<ObjectivePoint>& points);

NdsRanking nds(const std::vector<ObjectivePoint>& points);

// Successive-halving survivor rule: accumulate whole NDS fronts while the
// selected count is at most half the input (exact integer comparison); the
// front that crosses the boundary is kept in full.
std::vector<int> select_pareto_halving(const std::vector<ObjectivePoint>& points);

// Latency-threshold survivor rule: below the threshold keep the top
// ceil(|L|/2) points by accuracy (ties: lower latency, then lower
// arch_id); above it apply select_pareto_halving; return the union.
std::vector<int> select_threshold(const std::vector<ObjectivePoint>& points, double nu);

}  // namespace sonarsim
