#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sonarsim/space.hpp"

// Deterministic simulated benchmark standing in for real training and real
// tensor-program auto-tuning. Everything is a pure function of
// (seed, space config, hardware profile, request counters); regeneration is
// bit-identical and evaluation order never matters.
//
// Generation laws (all constants below are declared defaults, not claims
// about any real hardware):
//   a_inf(A) = 0.80 + 0.15 * g(x) + jitter,  g(x) = log10(1 + 9x),
//              x = min-max normalized flops(A), jitter ~ U(-0.002, 0.002)
//   tau(A)   ~ U(3, 9) epochs
//   L*(key)  = 1e-6 ms/MAC * stage_multiplier * subgraph_flops
//              * (r_in / 128)^resolution_penalty_exponent
//              * exp(jitter_sigma * N(0,1))
//   sigma(key) ~ U(0.7, 0.9)  (lognormal spread of the tuning excess)
//   trial excess X = exp(ln 0.35 + sigma * N(0,1)), so the median first
//   sample sits 35% above L* and ~64 trials reach within ~10% of it.
//
// The noiseless flag zeroes the per-epoch accuracy noise and the tuning
// excess (trials return L* exactly); the ground truth itself is unchanged.

namespace sonarsim {

struct HardwareProfile {
    std::string name;
    std::vector<double> stage_multipliers;      // one positive factor per stage
    double resolution_penalty_exponent = 0.0;   // extra resolution dependence of L*
    double lstar_jitter_sigma = 0.0;            // lognormal sigma applied to L*

    void validate(int num_stages) const;
};

struct ArchTruth {
    double asymptotic_accuracy = 0.0;  // a_inf in (0, 1)
    double curve_rate = 0.0;           // tau > 0, in epochs
};

struct SubgraphTruth {
    double optimal_latency_ms = 0.0;  // L* > 0
    double tuning_spread = 0.0;       // sigma > 0
};

struct GroundTruth {
    std::uint64_t seed = 0;
    SearchSpaceConfig space;
    HardwareProfile profile;
    std::vector<ArchTruth> per_arch;  // indexed by arch_id
    std::unordered_map<SubgraphKey, SubgraphTruth, SubgraphKeyHash> per_subgraph;

    const SubgraphTruth& subgraph(const SubgraphKey& key) const;  // UsageError if unknown
    // True latency of an architecture: the sum of its subgraphs' L*.
    double true_latency(const std::vector<SubgraphKey>& arch_keys) const;
};

// Best-so-far accuracy of one architecture under partial training.
struct AccuracyRecord {
    int arch_id = -1;
    std::int64_t epochs_trained = 0;
    double best_val_accuracy = 0.0;
};

// Best-so-far tuning progress of one shared subgraph. last_improvement is
// the latency gain of the most recent scheduler batch; +inf marks a task
// that has never run a batch (the queue sentinel).
struct TuningState {
    std::int64_t trials_spent = 0;
    double best_latency = std::numeric_limits<double>::infinity();
    double last_improvement = std::numeric_limits<double>::infinity();
};

using TuningStateMap = std::unordered_map<SubgraphKey, TuningState, SubgraphKeyHash>;

GroundTruth generate_ground_truth(std::uint64_t seed, const SearchSpaceConfig& config,
                                  const HardwareProfile& profile);

// Advances the record by `epochs` epochs. The validation accuracy at epoch
// e is a_inf * (1 - exp(-e / tau)) plus seeded zero-mean noise keyed by
// (seed, arch_id, e); best_val_accuracy is the running maximum.
void train_epochs(const GroundTruth& truth, AccuracyRecord& record, std::int64_t epochs,
                  bool noiseless);

// One auto-tuning measurement: L* * (1 + X), X >= 0 heavy-tailed, keyed by
// (seed, key, trial_index). Identical inputs reproduce the identical value.
double sample_trial(const GroundTruth& truth, const SubgraphKey& key, std::int64_t trial_index,
                    bool noiseless);

// Same sampling law with the per-key lookup hoisted out of the trial loop;
// sample_trial(truth, key, i, n) == TrialSampler(truth, key)(i, n).
class TrialSampler {
public:
    TrialSampler(const GroundTruth& truth, const SubgraphKey& key);
    double operator()(std::int64_t trial_index, bool noiseless) const;

private:
    std::uint64_t seed_;
    std::uint64_t key_counter_;
    double optimal_latency_;
    double spread_;
};

// Sum of best-so-far latencies over an architecture's subgraphs; empty if
// any subgraph has no trials yet (the caller must allocate trials first).
std::optional<double> estimated_latency(const std::vector<SubgraphKey>& arch_keys,
                                        const TuningStateMap& states);

}  // namespace sonarsim
