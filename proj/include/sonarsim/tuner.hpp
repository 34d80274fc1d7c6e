#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sonarsim/simbench.hpp"
#include "sonarsim/space.hpp"

// Scheduler that spends a round's tuning trials across unique subgraphs in
// batches of beta, always serving the task whose latency improved the most
// in its last batch. Never-tuned tasks carry a +inf sentinel priority so
// each gets a baseline batch before anyone gets a second.

namespace sonarsim {

struct SchedulerConfig {
    std::int64_t beta = 64;      // trials per batch
    std::uint64_t rng_seed = 0;  // tie-breaking only

    void validate() const;  // ConfigError if beta < 1
};

// Audit record of one scheduler dequeue.
struct TuningBatchRecord {
    SubgraphKey key;
    std::int64_t batch_size = 0;
    double improvement = 0.0;  // best-latency reduction achieved in the batch
    double best_after = 0.0;
};

// Produces one latency measurement for (key, trial_index); in production
// this is sample_trial over the ground truth, tests substitute scripted
// curves.
using TrialEvaluator = std::function<double(const SubgraphKey&, std::int64_t trial_index)>;

// Runs exactly `trial_budget` trials (the final batch may be smaller than
// beta), updating best latencies and per-task priorities in `states`.
// Priority ties are broken uniformly at random from rng_seed. Returns the
// ordered batch trace.
std::vector<TuningBatchRecord> run_tuning_round(const std::vector<SubgraphKey>& keys,
                                                std::int64_t trial_budget, TuningStateMap& states,
                                                const SchedulerConfig& sched,
                                                const TrialEvaluator& evaluate);

}  // namespace sonarsim
