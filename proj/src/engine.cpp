#include "sonarsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <unordered_set>

#include "sonarsim/errors.hpp"
#include "sonarsim/rng.hpp"

namespace sonarsim {

void ResourceUnit::validate() const {
    if (epochs_per_unit < 1) throw ConfigError("resource unit: epochs_per_unit must be >= 1");
    if (trials_per_unit < 1) throw ConfigError("resource unit: trials_per_unit must be >= 1");
}

int total_rounds_for(std::size_t n) {
    if (n == 0) throw UsageError("empty candidate set");
    int rounds = 0;
    std::size_t capacity = 1;
    while (capacity < n) {
        capacity *= 2;
        ++rounds;
    }
    return rounds;  // ceil(log2 n); 0 for n == 1
}

std::int64_t round_resource_units(std::int64_t budget_units, std::size_t survivors,
                                  int total_rounds) {
    return budget_units / (static_cast<std::int64_t>(survivors) * total_rounds);
}

namespace {

struct EngineState {
    std::vector<ArchitectureSpec> archs;
    std::vector<std::vector<SubgraphKey>> arch_keys;  // per arch_id
    std::vector<AccuracyRecord> accuracy;             // per arch_id
    TuningStateMap tuning;
};

EngineState init_state(const SearchSpaceConfig& space) {
    EngineState st;
    st.archs = enumerate_space(space);
    st.arch_keys.reserve(st.archs.size());
    st.accuracy.reserve(st.archs.size());
    for (const auto& a : st.archs) {
        st.arch_keys.push_back(decompose(a, space));
        st.accuracy.push_back(AccuracyRecord{a.arch_id, 0, 0.0});
    }
    return st;
}

std::vector<SubgraphKey> unique_keys_of(const EngineState& st, const std::vector<int>& survivors) {
    std::vector<SubgraphKey> keys;
    std::unordered_set<SubgraphKey, SubgraphKeyHash> seen;
    for (int id : survivors) {
        for (const auto& k : st.arch_keys[id]) {
            if (seen.insert(k).second) keys.push_back(k);
        }
    }
    return keys;
}

std::vector<ObjectivePoint> snapshot_estimates(const EngineState& st,
                                               const std::vector<int>& ids) {
    std::vector<ObjectivePoint> points;
    points.reserve(ids.size());
    for (int id : ids) {
        const auto lat = estimated_latency(st.arch_keys[id], st.tuning);
        if (!lat) {
            throw ConfigError("architecture " + std::to_string(id) +
                              " has an untuned subgraph after its round; the trial budget is too "
                              "small to give every unique subgraph a baseline batch");
        }
        points.push_back({id, st.accuracy[id].best_val_accuracy, *lat});
    }
    return points;
}

SearchTrace run_sonar(const SearchSpaceConfig& space, const GroundTruth& truth,
                      std::int64_t budget_units, const ResourceUnit& unit, SearchMode mode,
                      double nu_ms, std::uint64_t seed, bool noiseless) {
    space.validate();
    unit.validate();
    if (mode == SearchMode::threshold && !(nu_ms > 0.0))
        throw ConfigError("threshold mode requires nu > 0");

    const std::size_t n = space.size();
    const int rounds = total_rounds_for(n);
    if (rounds > 0 && round_resource_units(budget_units, n, rounds) < 1) {
        throw ConfigError("budget " + std::to_string(budget_units) + " units is too small: " +
                          std::to_string(n) + " architectures over " + std::to_string(rounds) +
                          " rounds need at least " +
                          std::to_string(static_cast<std::int64_t>(n) * rounds) + " units");
    }

    EngineState st = init_state(space);

    SearchTrace trace;
    trace.mode = mode;
    trace.nu_ms = nu_ms;
    trace.seed = seed;
    trace.budget_units = budget_units;
    trace.unit = unit;
    trace.noiseless = noiseless;

    std::vector<int> survivors(n);
    for (std::size_t i = 0; i < n; ++i) survivors[i] = static_cast<int>(i);

    for (int k = 0; k < rounds; ++k) {
        const std::int64_t r_k = round_resource_units(budget_units, survivors.size(), rounds);
        const std::int64_t epochs_each = r_k * unit.epochs_per_unit;
        const std::int64_t trial_pool =
            static_cast<std::int64_t>(survivors.size()) * r_k * unit.trials_per_unit;
        const auto keys = unique_keys_of(st, survivors);

        // Accuracy and latency evaluation are independent jobs over disjoint
        // state; run them concurrently and join before elimination.
        auto train_job = std::async(std::launch::async, [&] {
            for (int id : survivors) train_epochs(truth, st.accuracy[id], epochs_each, noiseless);
        });
        SchedulerConfig sched;
        sched.rng_seed = counter_hash(seed, RngStream::scheduler_tiebreak,
                                      {static_cast<std::uint64_t>(k)});
        auto tune_job = std::async(std::launch::async, [&] {
            // Batches hit the same key consecutively; cache its sampler.
            auto evaluate = [&truth, noiseless,
                             cached = std::optional<std::pair<SubgraphKey, TrialSampler>>{}](
                                const SubgraphKey& key, std::int64_t trial_index) mutable {
                if (!cached || !(cached->first == key))
                    cached.emplace(key, TrialSampler(truth, key));
                return cached->second(trial_index, noiseless);
            };
            return run_tuning_round(keys, trial_pool, st.tuning, sched, evaluate);
        });
        train_job.get();
        auto tuning_trace = tune_job.get();

        trace.ledger.epochs += static_cast<std::int64_t>(survivors.size()) * epochs_each;
        trace.ledger.trials += trial_pool;
        trace.ledger.units += static_cast<std::int64_t>(survivors.size()) * r_k;

        RoundRecord rec;
        rec.plan = {k, rounds, r_k, survivors};
        rec.estimates = snapshot_estimates(st, survivors);
        rec.tuning_trace = std::move(tuning_trace);

        const std::vector<int> next = mode == SearchMode::pareto
                                          ? select_pareto_halving(rec.estimates)
                                          : select_threshold(rec.estimates, nu_ms);
        std::set_difference(survivors.begin(), survivors.end(), next.begin(), next.end(),
                            std::back_inserter(rec.eliminated));
        rec.ledger_after = trace.ledger;
        trace.rounds.push_back(std::move(rec));
        survivors = next;
    }

    trace.final_survivors = survivors;
    if (rounds == 0) {
        // Singleton space: nothing was evaluated and nothing can be ranked.
        trace.final_front = survivors;
        return trace;
    }
    const auto final_points = snapshot_estimates(st, survivors);
    trace.final_front = pareto_front(final_points);

    std::vector<int> all_ids(n);
    for (std::size_t i = 0; i < n; ++i) all_ids[i] = static_cast<int>(i);
    trace.final_estimates = snapshot_estimates(st, all_ids);

    if (mode == SearchMode::threshold) {
        const ObjectivePoint* best = nullptr;
        for (const auto& p : final_points) {
            if (p.latency > nu_ms) continue;
            if (!best || p.accuracy > best->accuracy ||
                (p.accuracy == best->accuracy &&
                 (p.latency < best->latency ||
                  (p.latency == best->latency && p.arch_id < best->arch_id)))) {
                best = &p;
            }
        }
        if (best) trace.threshold_answer = best->arch_id;
    }
    return trace;
}

}  // namespace

SearchTrace run_sonar_pareto(const SearchSpaceConfig& space, const GroundTruth& truth,
                             std::int64_t budget_units, const ResourceUnit& unit,
                             std::uint64_t seed, bool noiseless) {
    return run_sonar(space, truth, budget_units, unit, SearchMode::pareto, 0.0, seed, noiseless);
}

SearchTrace run_sonar_threshold(const SearchSpaceConfig& space, const GroundTruth& truth,
                                std::int64_t budget_units, const ResourceUnit& unit, double nu_ms,
                                std::uint64_t seed, bool noiseless) {
    return run_sonar(space, truth, budget_units, unit, SearchMode::threshold, nu_ms, seed,
                     noiseless);
}

OracleTable run_brute_force(const SearchSpaceConfig& space, const GroundTruth& truth,
                            std::int64_t epochs_full, std::int64_t trials_full_per_key,
                            const ResourceUnit& unit, bool noiseless) {
    space.validate();
    unit.validate();
    if (epochs_full < 1 || trials_full_per_key < 1)
        throw ConfigError("brute force: fullness parameters must be >= 1");

    EngineState st = init_state(space);
    std::vector<int> all_ids(st.archs.size());
    for (std::size_t i = 0; i < all_ids.size(); ++i) all_ids[i] = static_cast<int>(i);

    for (int id : all_ids) train_epochs(truth, st.accuracy[id], epochs_full, noiseless);
    const auto keys = unique_keys_of(st, all_ids);
    for (const auto& key : keys) {
        TuningState& state = st.tuning[key];
        for (std::int64_t t = 0; t < trials_full_per_key; ++t) {
            state.best_latency = std::min(state.best_latency, sample_trial(truth, key, t, noiseless));
        }
        state.trials_spent = trials_full_per_key;
        state.last_improvement = 0.0;
    }

    OracleTable table;
    table.points = snapshot_estimates(st, all_ids);
    table.front = pareto_front(table.points);
    table.ledger.epochs = static_cast<std::int64_t>(all_ids.size()) * epochs_full;
    table.ledger.trials = static_cast<std::int64_t>(keys.size()) * trials_full_per_key;
    // Training and tuning run on different hardware; the unit cost of the
    // full evaluation is whichever axis dominates.
    const std::int64_t epoch_units =
        (table.ledger.epochs + unit.epochs_per_unit - 1) / unit.epochs_per_unit;
    const std::int64_t trial_units =
        (table.ledger.trials + unit.trials_per_unit - 1) / unit.trials_per_unit;
    table.ledger.units = std::max(epoch_units, trial_units);
    return table;
}

std::vector<int> proxy_front(const SearchSpaceConfig& space, const GroundTruth& truth) {
    space.validate();
    std::vector<ObjectivePoint> points;
    for (const auto& arch : enumerate_space(space)) {
        points.push_back({arch.arch_id, truth.per_arch[arch.arch_id].asymptotic_accuracy,
                          static_cast<double>(flops(arch, space))});
    }
    return pareto_front(points);
}

}  // namespace sonarsim
