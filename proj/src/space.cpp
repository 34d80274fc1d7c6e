#include "sonarsim/space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sonarsim/errors.hpp"
#include "sonarsim/rng.hpp"

namespace sonarsim {

SearchSpaceConfig SearchSpaceConfig::table1_default() {
    SearchSpaceConfig c;
    c.resolutions = {128, 160, 192, 224};
    c.width_multipliers = {0.25, 0.50, 0.75, 1.00};
    c.expansion_ratios = {3, 6};
    c.stage_depth_choices = {2, 3};
    c.num_stages = 5;
    c.base_stage_channels = {16, 24, 40, 80, 160};
    c.kernel_size = 3;
    return c;
}

void SearchSpaceConfig::validate() const {
    if (resolutions.empty()) throw ConfigError("search space: resolutions list is empty");
    if (width_multipliers.empty()) throw ConfigError("search space: width_multipliers list is empty");
    if (expansion_ratios.empty()) throw ConfigError("search space: expansion_ratios list is empty");
    if (stage_depth_choices.empty()) throw ConfigError("search space: stage_depth_choices list is empty");
    if (num_stages < 1) throw ConfigError("search space: num_stages must be >= 1");
    if (static_cast<int>(base_stage_channels.size()) != num_stages) {
        throw ConfigError("search space: base_stage_channels has " +
                          std::to_string(base_stage_channels.size()) + " entries, expected " +
                          std::to_string(num_stages));
    }
    if (kernel_size < 1) throw ConfigError("search space: kernel_size must be >= 1");
    for (int r : resolutions)
        if (r < 1) throw ConfigError("search space: resolutions must be >= 1");
    for (double w : width_multipliers)
        if (!(w > 0.0)) throw ConfigError("search space: width multipliers must be > 0");
    for (int e : expansion_ratios)
        if (e < 1) throw ConfigError("search space: expansion ratios must be >= 1");
    for (int d : stage_depth_choices)
        if (d < 1) throw ConfigError("search space: stage depths must be >= 1");
    for (int ch : base_stage_channels)
        if (ch < 1) throw ConfigError("search space: base channels must be >= 1");
}

std::size_t SearchSpaceConfig::size() const {
    std::size_t n = resolutions.size() * width_multipliers.size() * expansion_ratios.size();
    for (int s = 0; s < num_stages; ++s) n *= stage_depth_choices.size();
    return n;
}

std::size_t SubgraphKeyHash::operator()(const SubgraphKey& k) const {
    std::uint64_t h = 0x2b314879c6a2169bULL;
    for (std::uint64_t v : {k.stage_index, k.input_resolution, k.in_channels, k.out_channels,
                            k.expansion_ratio, k.depth, k.kernel_size}) {
        h = split_mix(h ^ v);
    }
    return static_cast<std::size_t>(h);
}

int scaled_channels(int base_channels, double width_multiplier) {
    const int c = static_cast<int>(std::floor(base_channels * width_multiplier + 0.5));
    return std::max(1, c);
}

ArchitectureSpec decode_arch(std::int64_t arch_id, const SearchSpaceConfig& config) {
    config.validate();
    const auto n = static_cast<std::int64_t>(config.size());
    if (arch_id < 0 || arch_id >= n) {
        throw UsageError("arch_id " + std::to_string(arch_id) + " outside space of size " +
                         std::to_string(n));
    }
    ArchitectureSpec a;
    a.arch_id = static_cast<int>(arch_id);
    a.stage_depths.resize(config.num_stages);
    std::int64_t rest = arch_id;
    const auto nd = static_cast<std::int64_t>(config.stage_depth_choices.size());
    for (int s = config.num_stages - 1; s >= 0; --s) {
        a.stage_depths[s] = config.stage_depth_choices[rest % nd];
        rest /= nd;
    }
    const auto ne = static_cast<std::int64_t>(config.expansion_ratios.size());
    a.expansion_ratio = config.expansion_ratios[rest % ne];
    rest /= ne;
    const auto nw = static_cast<std::int64_t>(config.width_multipliers.size());
    a.width_multiplier = config.width_multipliers[rest % nw];
    rest /= nw;
    a.resolution = config.resolutions[rest];
    return a;
}

namespace {

std::int64_t index_of(const std::vector<int>& values, int v, const char* what) {
    auto it = std::find(values.begin(), values.end(), v);
    if (it == values.end())
        throw UsageError(std::string("architecture ") + what + " value not in search space");
    return it - values.begin();
}

}  // namespace

std::int64_t encode_arch(const ArchitectureSpec& arch, const SearchSpaceConfig& config) {
    config.validate();
    if (static_cast<int>(arch.stage_depths.size()) != config.num_stages)
        throw UsageError("architecture has wrong number of stage depths");
    auto wit = std::find(config.width_multipliers.begin(), config.width_multipliers.end(),
                         arch.width_multiplier);
    if (wit == config.width_multipliers.end())
        throw UsageError("architecture width_multiplier value not in search space");

    std::int64_t id = index_of(config.resolutions, arch.resolution, "resolution");
    id = id * static_cast<std::int64_t>(config.width_multipliers.size()) +
         (wit - config.width_multipliers.begin());
    id = id * static_cast<std::int64_t>(config.expansion_ratios.size()) +
         index_of(config.expansion_ratios, arch.expansion_ratio, "expansion_ratio");
    for (int s = 0; s < config.num_stages; ++s) {
        id = id * static_cast<std::int64_t>(config.stage_depth_choices.size()) +
             index_of(config.stage_depth_choices, arch.stage_depths[s], "stage_depth");
    }
    return id;
}

std::vector<ArchitectureSpec> enumerate_space(const SearchSpaceConfig& config) {
    config.validate();
    const auto n = static_cast<std::int64_t>(config.size());
    std::vector<ArchitectureSpec> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t id = 0; id < n; ++id) out.push_back(decode_arch(id, config));
    return out;
}

std::vector<SubgraphKey> decompose(const ArchitectureSpec& arch, const SearchSpaceConfig& config) {
    config.validate();
    if (static_cast<int>(arch.stage_depths.size()) != config.num_stages)
        throw UsageError("architecture has wrong number of stage depths");
    std::vector<SubgraphKey> keys;
    keys.reserve(static_cast<std::size_t>(config.num_stages));
    int res_in = arch.resolution;
    int ch_in = scaled_channels(config.base_stage_channels[0], arch.width_multiplier);  // stem width
    for (int s = 0; s < config.num_stages; ++s) {
        SubgraphKey k;
        k.stage_index = s;
        k.input_resolution = res_in;
        k.in_channels = ch_in;
        k.out_channels = scaled_channels(config.base_stage_channels[s], arch.width_multiplier);
        k.expansion_ratio = arch.expansion_ratio;
        k.depth = arch.stage_depths[s];
        k.kernel_size = config.kernel_size;
        keys.push_back(k);
        res_in = std::max(1, res_in / 2);
        ch_in = k.out_channels;
    }
    return keys;
}

std::int64_t subgraph_flops(const SubgraphKey& key) {
    const std::int64_t r = std::max(1, key.input_resolution / 2);
    const std::int64_t area = r * r;
    const std::int64_t expanded = static_cast<std::int64_t>(key.expansion_ratio) * key.in_channels;
    const std::int64_t expanded_rest = static_cast<std::int64_t>(key.expansion_ratio) * key.out_channels;
    const std::int64_t kk = static_cast<std::int64_t>(key.kernel_size) * key.kernel_size;

    const std::int64_t first = area * (key.in_channels * expanded +  // pointwise expand
                                       expanded * kk +               // depthwise
                                       expanded * key.out_channels); // pointwise project
    const std::int64_t rest = area * (key.out_channels * expanded_rest +
                                      expanded_rest * kk +
                                      expanded_rest * key.out_channels);
    return first + static_cast<std::int64_t>(key.depth - 1) * rest;
}

std::int64_t flops(const ArchitectureSpec& arch, const SearchSpaceConfig& config) {
    std::int64_t total = 0;
    for (const SubgraphKey& k : decompose(arch, config)) total += subgraph_flops(k);
    return total;
}

}  // namespace sonarsim
