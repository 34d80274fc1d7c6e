#pragma once

#include <string>
#include <vector>

#include "sonarsim/engine.hpp"
#include "sonarsim/pareto.hpp"

// Evaluation metrics: exact 2-D hypervolume, tie-corrected Kendall tau and
// the accuracy-gap-over-resources curve a run is judged by.

namespace sonarsim {

// Exact dominated area between a point set and a reference corner
// (ref.accuracy floor, ref.latency ceiling), by a latency-sorted sweep.
// Points above the latency ceiling or below the accuracy floor contribute
// nothing; duplicates and dominated points contribute nothing extra.
double hypervolume_2d(const std::vector<ObjectivePoint>& points, const ObjectivePoint& reference);

// Kendall tau-b between two paired score vectors (same arch order), via
// merge-sort discordance counting. Ties in either vector are corrected for;
// returns NaN when one vector is entirely tied.
double kendall_tau(const std::vector<double>& scores_a, const std::vector<double>& scores_b);

struct GapCurvePoint {
    std::int64_t ledger_units = 0;
    double mean_gap = 0.0;  // percentage points / 100 (same scale as accuracy)
};

// Per round boundary: for each true-front architecture P, the shortfall of
// the best validation accuracy the search has observed on any architecture
// whose true latency does not exceed P's, floored at zero; averaged over
// the distinct front members. Observed accuracies only grow round over
// round, so the curve is non-increasing.
std::vector<GapCurvePoint> gap_curve(const SearchTrace& trace, const OracleTable& oracle);

struct RankTableEntry {
    std::string name;
    double tau = 0.0;  // rank correlation against true latency
};

// Tau of each named latency estimator against the true latency, all
// evaluated over the same architecture order.
std::vector<RankTableEntry> rank_table(
    const std::vector<std::pair<std::string, std::vector<double>>>& estimators,
    const std::vector<double>& true_latency);

}  // namespace sonarsim
