#pragma once

#include <cstdint>
#include <vector>

// Architecture search space: enumeration, stage decomposition and the
// FLOPs proxy. The space is the Cartesian product of input resolution,
// width multiplier, expansion ratio and per-stage depth; kernel size is
// fixed so the default space has exactly 4*4*2*2^5 = 1024 members.

namespace sonarsim {

struct SearchSpaceConfig {
    std::vector<int> resolutions;
    std::vector<double> width_multipliers;
    std::vector<int> expansion_ratios;
    std::vector<int> stage_depth_choices;
    int num_stages = 0;
    std::vector<int> base_stage_channels;  // one entry per stage
    int kernel_size = 3;

    static SearchSpaceConfig table1_default();

    // Throws ConfigError if any list is empty, num_stages < 1, or the
    // channel list length does not match num_stages.
    void validate() const;

    std::size_t size() const;
};

struct ArchitectureSpec {
    int resolution = 0;
    double width_multiplier = 0.0;
    int expansion_ratio = 0;
    std::vector<int> stage_depths;
    int arch_id = -1;

    bool operator==(const ArchitectureSpec&) const = default;
};

// Identity of one stage-level subgraph. Two architectures that agree on
// every field influencing a stage share the subgraph (and its tuning).
struct SubgraphKey {
    int stage_index = 0;
    int input_resolution = 0;  // resolution entering the stage
    int in_channels = 0;
    int out_channels = 0;
    int expansion_ratio = 0;
    int depth = 0;
    int kernel_size = 0;

    bool operator==(const SubgraphKey&) const = default;
};

struct SubgraphKeyHash {
    std::size_t operator()(const SubgraphKey& k) const;
};

// round(base * multiplier) half-up, clamped to >= 1.
int scaled_channels(int base_channels, double width_multiplier);

// Full Cartesian product in a fixed mixed-radix order: resolution is the
// most significant digit, then width multiplier, then expansion ratio,
// then the stage depths (stage 0 most significant). arch_id equals the
// position in the returned list.
std::vector<ArchitectureSpec> enumerate_space(const SearchSpaceConfig& config);

ArchitectureSpec decode_arch(std::int64_t arch_id, const SearchSpaceConfig& config);
std::int64_t encode_arch(const ArchitectureSpec& arch, const SearchSpaceConfig& config);

// One key per stage. Stage i receives max(1, resolution >> i) pixels (each
// stage opens with a stride-2 block), consumes the previous stage's output
// channels (the stem mirrors stage 0's width) and produces
// scaled_channels(base_stage_channels[i], width_multiplier).
std::vector<SubgraphKey> decompose(const ArchitectureSpec& arch, const SearchSpaceConfig& config);

// Multiply-accumulate count of one stage: a chain of `depth` inverted
// residual blocks (pointwise expand, depthwise k x k, pointwise project),
// all counted at the stage's post-stride resolution max(1, r_in / 2).
// Block 0 expands from in_channels; later blocks run out->out.
std::int64_t subgraph_flops(const SubgraphKey& key);

// Sum of subgraph_flops over the decomposition; strictly increasing in
// resolution, width multiplier, expansion ratio and each stage depth.
std::int64_t flops(const ArchitectureSpec& arch, const SearchSpaceConfig& config);

}  // namespace sonarsim
