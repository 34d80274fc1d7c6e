#include "sonarsim/simbench.hpp"

#include <algorithm>
#include <cmath>

#include "sonarsim/errors.hpp"
#include "sonarsim/rng.hpp"

namespace sonarsim {

namespace {

constexpr double kAccuracyLow = 0.80;
constexpr double kAccuracyHigh = 0.95;
constexpr double kAccuracyJitter = 0.002;
constexpr double kTauLow = 3.0;
constexpr double kTauHigh = 9.0;
constexpr double kTrainNoiseStd = 0.002;
constexpr double kMsPerMac = 1e-6;
constexpr double kReferenceResolution = 128.0;
constexpr double kExcessMedian = 0.35;
constexpr double kSpreadLow = 0.7;
constexpr double kSpreadHigh = 0.9;

// Concave saturating map of normalized model size onto [0, 1]: bigger
// models are better with diminishing returns.
double size_to_quality(double x) {
    return std::log(1.0 + 9.0 * x) / std::log(10.0);
}

std::uint64_t key_counter(const SubgraphKey& k) {
    return SubgraphKeyHash{}(k);
}

}  // namespace

void HardwareProfile::validate(int num_stages) const {
    if (static_cast<int>(stage_multipliers.size()) != num_stages) {
        throw ConfigError("profile '" + name + "': " + std::to_string(stage_multipliers.size()) +
                          " stage multipliers, expected " + std::to_string(num_stages));
    }
    for (double m : stage_multipliers)
        if (!(m > 0.0)) throw ConfigError("profile '" + name + "': stage multipliers must be > 0");
    if (!(lstar_jitter_sigma >= 0.0))
        throw ConfigError("profile '" + name + "': jitter sigma must be >= 0");
    if (!std::isfinite(resolution_penalty_exponent))
        throw ConfigError("profile '" + name + "': penalty exponent must be finite");
}

const SubgraphTruth& GroundTruth::subgraph(const SubgraphKey& key) const {
    auto it = per_subgraph.find(key);
    if (it == per_subgraph.end()) throw UsageError("unknown subgraph key");
    return it->second;
}

double GroundTruth::true_latency(const std::vector<SubgraphKey>& arch_keys) const {
    double total = 0.0;
    for (const auto& k : arch_keys) total += subgraph(k).optimal_latency_ms;
    return total;
}

GroundTruth generate_ground_truth(std::uint64_t seed, const SearchSpaceConfig& config,
                                  const HardwareProfile& profile) {
    config.validate();
    profile.validate(config.num_stages);

    GroundTruth truth;
    truth.seed = seed;
    truth.space = config;
    truth.profile = profile;

    const auto archs = enumerate_space(config);
    std::int64_t min_flops = std::numeric_limits<std::int64_t>::max();
    std::int64_t max_flops = std::numeric_limits<std::int64_t>::min();
    std::vector<std::int64_t> flop_counts(archs.size());
    for (std::size_t i = 0; i < archs.size(); ++i) {
        flop_counts[i] = flops(archs[i], config);
        min_flops = std::min(min_flops, flop_counts[i]);
        max_flops = std::max(max_flops, flop_counts[i]);
    }
    const double span = static_cast<double>(max_flops - min_flops);

    truth.per_arch.resize(archs.size());
    for (const auto& arch : archs) {
        const auto id = static_cast<std::uint64_t>(arch.arch_id);
        const double x = span > 0.0 ? static_cast<double>(flop_counts[arch.arch_id] - min_flops) / span : 0.0;
        const double jitter =
            kAccuracyJitter * (2.0 * u01(counter_hash(seed, RngStream::asymptotic_accuracy, {id})) - 1.0);
        ArchTruth& t = truth.per_arch[arch.arch_id];
        t.asymptotic_accuracy = std::clamp(
            kAccuracyLow + (kAccuracyHigh - kAccuracyLow) * size_to_quality(x) + jitter, 0.01, 0.999);
        t.curve_rate = kTauLow + (kTauHigh - kTauLow) * u01(counter_hash(seed, RngStream::curve_rate, {id}));

        for (const SubgraphKey& key : decompose(arch, config)) {
            if (truth.per_subgraph.count(key)) continue;
            const std::uint64_t kc = key_counter(key);
            const double base_cost = kMsPerMac * profile.stage_multipliers[key.stage_index] *
                                     static_cast<double>(subgraph_flops(key)) *
                                     std::pow(key.input_resolution / kReferenceResolution,
                                              profile.resolution_penalty_exponent);
            const double jitter_factor = std::exp(
                profile.lstar_jitter_sigma * normal01(counter_hash(seed, RngStream::optimal_latency, {kc})));
            SubgraphTruth st;
            st.optimal_latency_ms = base_cost * jitter_factor;
            st.tuning_spread = kSpreadLow + (kSpreadHigh - kSpreadLow) *
                                                u01(counter_hash(seed, RngStream::tuning_spread, {kc}));
            truth.per_subgraph.emplace(key, st);
        }
    }
    return truth;
}

void train_epochs(const GroundTruth& truth, AccuracyRecord& record, std::int64_t epochs,
                  bool noiseless) {
    if (epochs < 0) throw UsageError("train_epochs: negative epoch count");
    if (record.arch_id < 0 || record.arch_id >= static_cast<int>(truth.per_arch.size()))
        throw UsageError("train_epochs: arch_id outside benchmark");
    const ArchTruth& t = truth.per_arch[record.arch_id];
    const auto id = static_cast<std::uint64_t>(record.arch_id);
    for (std::int64_t e = record.epochs_trained + 1; e <= record.epochs_trained + epochs; ++e) {
        double acc = t.asymptotic_accuracy * (1.0 - std::exp(-static_cast<double>(e) / t.curve_rate));
        if (!noiseless) {
            acc += kTrainNoiseStd *
                   normal01(counter_hash(truth.seed, RngStream::train_noise,
                                         {id, static_cast<std::uint64_t>(e)}));
        }
        record.best_val_accuracy = std::max(record.best_val_accuracy, std::clamp(acc, 0.0, 1.0));
    }
    record.epochs_trained += epochs;
}

TrialSampler::TrialSampler(const GroundTruth& truth, const SubgraphKey& key)
    : seed_(truth.seed), key_counter_(key_counter(key)) {
    const SubgraphTruth& st = truth.subgraph(key);
    optimal_latency_ = st.optimal_latency_ms;
    spread_ = st.tuning_spread;
}

double TrialSampler::operator()(std::int64_t trial_index, bool noiseless) const {
    if (trial_index < 0) throw UsageError("sample_trial: negative trial index");
    if (noiseless) return optimal_latency_;
    const double z = normal01(counter_hash(seed_, RngStream::trial_excess,
                                           {key_counter_, static_cast<std::uint64_t>(trial_index)}));
    const double excess = std::exp(std::log(kExcessMedian) + spread_ * z);
    return optimal_latency_ * (1.0 + excess);
}

double sample_trial(const GroundTruth& truth, const SubgraphKey& key, std::int64_t trial_index,
                    bool noiseless) {
    return TrialSampler(truth, key)(trial_index, noiseless);
}

std::optional<double> estimated_latency(const std::vector<SubgraphKey>& arch_keys,
                                        const TuningStateMap& states) {
    double total = 0.0;
    for (const auto& key : arch_keys) {
        auto it = states.find(key);
        if (it == states.end() || it->second.trials_spent == 0) return std::nullopt;
        total += it->second.best_latency;
    }
    return total;
}

}  // namespace sonarsim
