#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sonarsim/pareto.hpp"
#include "sonarsim/simbench.hpp"
#include "sonarsim/space.hpp"
#include "sonarsim/tuner.hpp"

// The interleaved successive-halving outer loop for both elimination rules,
// plus the brute-force oracle it is measured against. One resource unit
// buys epochs_per_unit training epochs per architecture and feeds
// trials_per_unit tuning trials into the shared subgraph pool.

namespace sonarsim {

struct ResourceUnit {
    std::int64_t epochs_per_unit = 1;
    std::int64_t trials_per_unit = 64;

    void validate() const;  // ConfigError if either < 1
};

struct ResourceLedger {
    std::int64_t epochs = 0;
    std::int64_t trials = 0;
    std::int64_t units = 0;
};

struct RoundPlan {
    int round_index = 0;
    int total_rounds = 0;            // ceil(log2 n)
    std::int64_t resource_units = 0; // r_k = floor(B / (|S_k| * total_rounds))
    std::vector<int> survivors_in;   // S_k at round start, sorted
};

struct RoundRecord {
    RoundPlan plan;
    std::vector<ObjectivePoint> estimates;  // post-evaluation, one per member of S_k
    std::vector<int> eliminated;            // S_k \ S_{k+1}, sorted
    ResourceLedger ledger_after;
    std::vector<TuningBatchRecord> tuning_trace;
};

enum class SearchMode { pareto, threshold };

struct SearchTrace {
    SearchMode mode = SearchMode::pareto;
    double nu_ms = 0.0;  // threshold mode only
    std::uint64_t seed = 0;
    std::int64_t budget_units = 0;
    ResourceUnit unit;
    bool noiseless = false;
    std::vector<RoundRecord> rounds;
    std::vector<int> final_survivors;
    std::vector<int> final_front;              // front over the final survivors' estimates
    std::optional<int> threshold_answer;       // empty = nothing estimated below nu
    std::vector<ObjectivePoint> final_estimates;  // best-so-far estimates for every architecture
    ResourceLedger ledger;
};

// Full evaluation of the whole space: the denominator of every speedup
// claim and the source of true objectives.
struct OracleTable {
    std::vector<ObjectivePoint> points;  // indexed by arch_id
    std::vector<int> front;              // ids of the true Pareto front, sorted
    ResourceLedger ledger;
};

int total_rounds_for(std::size_t n);
std::int64_t round_resource_units(std::int64_t budget_units, std::size_t survivors,
                                  int total_rounds);

SearchTrace run_sonar_pareto(const SearchSpaceConfig& space, const GroundTruth& truth,
                             std::int64_t budget_units, const ResourceUnit& unit,
                             std::uint64_t seed, bool noiseless);

SearchTrace run_sonar_threshold(const SearchSpaceConfig& space, const GroundTruth& truth,
                                std::int64_t budget_units, const ResourceUnit& unit, double nu_ms,
                                std::uint64_t seed, bool noiseless);

OracleTable run_brute_force(const SearchSpaceConfig& space, const GroundTruth& truth,
                            std::int64_t epochs_full, std::int64_t trials_full_per_key,
                            const ResourceUnit& unit, bool noiseless);

// Pareto front of (true accuracy, FLOPs): the sequential baseline that
// ranks latency by a platform-independent proxy.
std::vector<int> proxy_front(const SearchSpaceConfig& space, const GroundTruth& truth);

}  // namespace sonarsim
