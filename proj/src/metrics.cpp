#include "sonarsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "sonarsim/errors.hpp"

namespace sonarsim {

double hypervolume_2d(const std::vector<ObjectivePoint>& points, const ObjectivePoint& reference) {
    if (!std::isfinite(reference.accuracy) || !std::isfinite(reference.latency))
        throw UsageError("hypervolume: non-finite reference point");

    std::vector<ObjectivePoint> inside;
    for (const auto& p : points) {
        if (p.latency <= reference.latency && p.accuracy >= reference.accuracy) inside.push_back(p);
    }
    if (inside.empty()) return 0.0;

    // Latency ascending; ties keep only the most accurate representative.
    std::sort(inside.begin(), inside.end(), [](const ObjectivePoint& a, const ObjectivePoint& b) {
        if (a.latency != b.latency) return a.latency < b.latency;
        return a.accuracy > b.accuracy;
    });

    // Sweep from the cheapest point; each point that raises the staircase
    // adds one horizontal strip reaching the reference latency.
    double area = 0.0;
    double best_accuracy = reference.accuracy;
    for (const auto& p : inside) {
        if (p.accuracy <= best_accuracy) continue;  // dominated or duplicate
        area += (reference.latency - p.latency) * (p.accuracy - best_accuracy);
        best_accuracy = p.accuracy;
    }
    return area;
}

double kendall_tau(const std::vector<double>& scores_a, const std::vector<double>& scores_b) {
    const std::size_t n = scores_a.size();
    if (n != scores_b.size()) throw UsageError("kendall_tau: length mismatch");
    if (n < 2) throw UsageError("kendall_tau: need at least 2 paired scores");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (scores_a[i] != scores_a[j]) return scores_a[i] < scores_a[j];
        return scores_b[i] < scores_b[j];
    });

    // Tie pair counts: n1 over a, n2 over b, n3 jointly tied.
    std::int64_t n1 = 0, n3 = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && scores_a[order[j]] == scores_a[order[i]]) ++j;
        const std::int64_t t = static_cast<std::int64_t>(j - i);
        n1 += t * (t - 1) / 2;
        for (std::size_t u = i; u < j;) {
            std::size_t v = u;
            while (v < j && scores_b[order[v]] == scores_b[order[u]]) ++v;
            const std::int64_t s = static_cast<std::int64_t>(v - u);
            n3 += s * (s - 1) / 2;
            u = v;
        }
        i = j;
    }
    std::vector<double> sorted_b(scores_b);
    std::sort(sorted_b.begin(), sorted_b.end());
    std::int64_t n2 = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && sorted_b[j] == sorted_b[i]) ++j;
        const std::int64_t t = static_cast<std::int64_t>(j - i);
        n2 += t * (t - 1) / 2;
        i = j;
    }

    // Discordant pairs = inversions of b in a-sorted order (a-ties were
    // pre-sorted by b, so tied-a pairs contribute none).
    std::vector<double> seq(n), buf(n);
    for (std::size_t i = 0; i < n; ++i) seq[i] = scores_b[order[i]];
    std::int64_t discordant = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t l = lo, r = mid, out = lo;
            while (l < mid && r < hi) {
                if (seq[r] < seq[l]) {
                    discordant += static_cast<std::int64_t>(mid - l);
                    buf[out++] = seq[r++];
                } else {
                    buf[out++] = seq[l++];
                }
            }
            while (l < mid) buf[out++] = seq[l++];
            while (r < hi) buf[out++] = seq[r++];
            std::copy(buf.begin() + lo, buf.begin() + hi, seq.begin() + lo);
        }
    }

    const std::int64_t n0 = static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2;
    const std::int64_t concordant_minus_discordant = n0 - n1 - n2 + n3 - 2 * discordant;
    const double denom =
        std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(concordant_minus_discordant) / denom;
}

std::vector<GapCurvePoint> gap_curve(const SearchTrace& trace, const OracleTable& oracle) {
    if (trace.rounds.empty()) throw UsageError("gap_curve: empty trace");
    for (const auto& rec : trace.rounds) {
        for (const auto& p : rec.estimates) {
            if (p.arch_id < 0 || p.arch_id >= static_cast<int>(oracle.points.size()))
                throw UsageError("gap_curve: trace references an architecture outside the oracle table");
        }
    }

    // Distinct front members (the averaging set).
    std::vector<int> front = oracle.front;
    std::sort(front.begin(), front.end());
    front.erase(std::unique(front.begin(), front.end()), front.end());

    std::unordered_map<int, double> observed;  // arch -> best accuracy seen so far
    std::vector<GapCurvePoint> curve;
    for (const auto& rec : trace.rounds) {
        for (const auto& p : rec.estimates) {
            auto [it, inserted] = observed.try_emplace(p.arch_id, p.accuracy);
            if (!inserted) it->second = std::max(it->second, p.accuracy);
        }
        double total_gap = 0.0;
        for (int pid : front) {
            const double ref_latency = oracle.points[pid].latency;
            double best = 0.0;
            for (const auto& [id, acc] : observed) {
                if (oracle.points[id].latency <= ref_latency) best = std::max(best, acc);
            }
            total_gap += std::max(0.0, oracle.points[pid].accuracy - best);
        }
        curve.push_back({rec.ledger_after.units, total_gap / static_cast<double>(front.size())});
    }
    return curve;
}

std::vector<RankTableEntry> rank_table(
    const std::vector<std::pair<std::string, std::vector<double>>>& estimators,
    const std::vector<double>& true_latency) {
    std::vector<RankTableEntry> table;
    table.reserve(estimators.size());
    for (const auto& [name, scores] : estimators) {
        if (scores.size() != true_latency.size())
            throw UsageError("rank_table: estimator '" + name + "' covers a different set");
        table.push_back({name, kendall_tau(scores, true_latency)});
    }
    return table;
}

}  // namespace sonarsim
