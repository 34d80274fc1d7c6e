#include "sonarsim/pareto.hpp"

#include <algorithm>
#include <unordered_set>

#include "sonarsim/errors.hpp"

namespace sonarsim {

bool dominates(const ObjectivePoint& p, const ObjectivePoint& q) {
    return p.accuracy >= q.accuracy && p.latency <= q.latency &&
           (p.accuracy > q.accuracy || p.latency < q.latency);
}

namespace {

void check_points(const std::vector<ObjectivePoint>& points) {
    if (points.empty()) throw UsageError("selection over an empty point set");
    std::unordered_set<int> ids;
    for (const auto& p : points) {
        if (!ids.insert(p.arch_id).second)
            throw UsageError("duplicate arch_id in point set: " + std::to_string(p.arch_id));
    }
}

// Fast non-dominated sort (the O(n^2) NSGA-II bookkeeping); n stays small
// enough here that verifiability beats asymptotics.
std::vector<std::vector<int>> nds_fronts(const std::vector<ObjectivePoint>& points) {
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<int> dominator_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(points[i], points[j])) {
                dominated_by[i].push_back(j);
                ++dominator_count[j];
            } else if (dominates(points[j], points[i])) {
                dominated_by[j].push_back(i);
                ++dominator_count[i];
            }
        }
    }
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (dominator_count[i] == 0) current.push_back(i);

    std::vector<std::vector<int>> fronts;
    while (!current.empty()) {
        std::vector<int> front;
        front.reserve(current.size());
        for (std::size_t i : current) front.push_back(points[i].arch_id);
        std::sort(front.begin(), front.end());
        fronts.push_back(std::move(front));

        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominated_by[i]) {
                if (--dominator_count[j] == 0) next.push_back(j);
            }
        }
        current = std::move(next);
    }
    return fronts;
}

}  // namespace

std::vector<int> pareto_front(const std::vector<ObjectivePoint>& points) {
    check_points(points);
    std::vector<int> front;
    for (const auto& p : points) {
        bool dominated = false;
        for (const auto& q : points) {
            if (dominates(q, p)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) front.push_back(p.arch_id);
    }
    std::sort(front.begin(), front.end());
    return front;
}

NdsRanking nds(const std::vector<ObjectivePoint>& points) {
    check_points(points);
    return NdsRanking{nds_fronts(points)};
}

std::vector<int> select_pareto_halving(const std::vector<ObjectivePoint>& points) {
    check_points(points);
    const std::size_t n = points.size();
    const auto fronts = nds_fronts(points);
    std::vector<int> selected;
    std::size_t next_front = 0;
    // |selected| <= n/2 compared exactly as 2*|selected| <= n.
    while (2 * selected.size() <= n && next_front < fronts.size()) {
        const auto& f = fronts[next_front++];
        selected.insert(selected.end(), f.begin(), f.end());
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

std::vector<int> select_threshold(const std::vector<ObjectivePoint>& points, double nu) {
    check_points(points);
    std::vector<ObjectivePoint> below, above;
    for (const auto& p : points) (p.latency <= nu ? below : above).push_back(p);

    std::vector<int> selected;
    if (!below.empty()) {
        std::sort(below.begin(), below.end(), [](const ObjectivePoint& a, const ObjectivePoint& b) {
            if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
            if (a.latency != b.latency) return a.latency < b.latency;
            return a.arch_id < b.arch_id;
        });
        const std::size_t keep = (below.size() + 1) / 2;
        for (std::size_t i = 0; i < keep; ++i) selected.push_back(below[i].arch_id);
    }
    if (!above.empty()) {
        const auto survivors = select_pareto_halving(above);
        selected.insert(selected.end(), survivors.begin(), survivors.end());
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

}  // namespace sonarsim
