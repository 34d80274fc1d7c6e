#include "sonarsim/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sonarsim/errors.hpp"

namespace sonarsim {

namespace {

// Improvements below this are float noise, not progress; treating them as
// zero keeps plateaued tasks from thrashing the queue.
constexpr double kImprovementFloor = 1e-12;

}  // namespace

void SchedulerConfig::validate() const {
    if (beta < 1) throw ConfigError("scheduler: beta must be >= 1");
}

std::vector<TuningBatchRecord> run_tuning_round(const std::vector<SubgraphKey>& keys,
                                                std::int64_t trial_budget, TuningStateMap& states,
                                                const SchedulerConfig& sched,
                                                const TrialEvaluator& evaluate) {
    sched.validate();
    if (trial_budget < 0) throw UsageError("run_tuning_round: negative trial budget");
    if (keys.empty()) throw UsageError("run_tuning_round: no subgraphs to tune");

    // No inserts happen after this point, so the task pointers stay valid.
    std::vector<TuningState*> tasks;
    tasks.reserve(keys.size());
    for (const auto& key : keys) tasks.push_back(&states[key]);

    std::mt19937_64 tie_rng(sched.rng_seed);
    std::vector<TuningBatchRecord> trace;
    std::vector<std::size_t> tied;

    std::int64_t remaining = trial_budget;
    while (remaining > 0) {
        // Max-priority task; ties collected and resolved uniformly at random.
        double best_priority = -1.0;
        tied.clear();
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const double p = tasks[i]->last_improvement;
            if (p > best_priority) {
                best_priority = p;
                tied.assign(1, i);
            } else if (p == best_priority) {
                tied.push_back(i);
            }
        }
        std::size_t chosen = tied.front();
        if (tied.size() > 1) {
            chosen = tied[std::uniform_int_distribution<std::size_t>(0, tied.size() - 1)(tie_rng)];
        }

        const SubgraphKey& key = keys[chosen];
        TuningState& state = *tasks[chosen];
        const std::int64_t batch = std::min<std::int64_t>(sched.beta, remaining);
        const double best_before = state.best_latency;
        double first_sample = 0.0;
        for (std::int64_t j = 0; j < batch; ++j) {
            const double lat = evaluate(key, state.trials_spent + j);
            if (j == 0) first_sample = lat;
            state.best_latency = std::min(state.best_latency, lat);
        }
        state.trials_spent += batch;
        remaining -= batch;

        // A never-measured task has no previous best; its first batch is
        // scored by the progress made within the batch itself.
        const double reference = std::isinf(best_before) ? first_sample : best_before;
        double improvement = reference - state.best_latency;
        if (improvement < kImprovementFloor) improvement = 0.0;
        state.last_improvement = improvement;

        trace.push_back({key, batch, improvement, state.best_latency});
    }
    return trace;
}

}  // namespace sonarsim
