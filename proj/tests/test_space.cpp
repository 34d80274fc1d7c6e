#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "sonarsim/errors.hpp"
#include "sonarsim/space.hpp"

using namespace sonarsim;

TEST_CASE("default space has exactly 1024 architectures") {
    const auto config = SearchSpaceConfig::table1_default();
    CHECK(config.size() == 1024);
    const auto archs = enumerate_space(config);
    CHECK(archs.size() == 1024);
    for (std::size_t i = 0; i < archs.size(); ++i)
        CHECK(archs[i].arch_id == static_cast<int>(i));
}

TEST_CASE("singleton config enumerates one architecture") {
    SearchSpaceConfig c;
    c.resolutions = {64};
    c.width_multipliers = {1.0};
    c.expansion_ratios = {3};
    c.stage_depth_choices = {2};
    c.num_stages = 2;
    c.base_stage_channels = {8, 16};
    CHECK(enumerate_space(c).size() == 1);
}

TEST_CASE("first and last architectures differ in every field") {
    const auto config = SearchSpaceConfig::table1_default();
    const auto archs = enumerate_space(config);
    const auto& first = archs.front();
    const auto& last = archs.back();
    CHECK(first.resolution != last.resolution);
    CHECK(first.width_multiplier != last.width_multiplier);
    CHECK(first.expansion_ratio != last.expansion_ratio);
    for (int s = 0; s < config.num_stages; ++s)
        CHECK(first.stage_depths[s] != last.stage_depths[s]);
}

TEST_CASE("arch_id round-trips through decode/encode for the whole space") {
    const auto config = SearchSpaceConfig::table1_default();
    for (const auto& arch : enumerate_space(config)) {
        CHECK(encode_arch(arch, config) == arch.arch_id);
        CHECK(decode_arch(arch.arch_id, config) == arch);
    }
}

TEST_CASE("invalid configs are rejected") {
    auto c = SearchSpaceConfig::table1_default();
    c.resolutions.clear();
    CHECK_THROWS_AS(enumerate_space(c), ConfigError);

    c = SearchSpaceConfig::table1_default();
    c.base_stage_channels.pop_back();
    CHECK_THROWS_AS(enumerate_space(c), ConfigError);

    c = SearchSpaceConfig::table1_default();
    c.num_stages = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("decompose yields one key per stage with a halving resolution chain") {
    const auto config = SearchSpaceConfig::table1_default();
    const auto arch = decode_arch(777, config);
    const auto keys = decompose(arch, config);
    REQUIRE(keys.size() == 5);
    int expected_res = arch.resolution;
    for (int s = 0; s < 5; ++s) {
        CHECK(keys[s].stage_index == s);
        CHECK(keys[s].input_resolution == expected_res);
        CHECK(keys[s].expansion_ratio == arch.expansion_ratio);
        CHECK(keys[s].depth == arch.stage_depths[s]);
        CHECK(keys[s].kernel_size == config.kernel_size);
        expected_res = std::max(1, expected_res / 2);
    }
    for (int s = 1; s < 5; ++s) CHECK(keys[s].in_channels == keys[s - 1].out_channels);
}

TEST_CASE("architectures differing in resolution share no keys") {
    const auto config = SearchSpaceConfig::table1_default();
    auto a = decode_arch(0, config);
    auto b = a;
    b.resolution = config.resolutions[1];
    const auto ka = decompose(a, config);
    const auto kb = decompose(b, config);
    for (const auto& x : ka)
        for (const auto& y : kb) CHECK(!(x == y));
}

TEST_CASE("pooled subgraph keys are shared across the space") {
    const auto config = SearchSpaceConfig::table1_default();
    std::unordered_set<SubgraphKey, SubgraphKeyHash> keys;
    for (const auto& arch : enumerate_space(config))
        for (const auto& k : decompose(arch, config)) keys.insert(k);
    CHECK(keys.size() < 1024 * 5);
    // Per stage: 4 resolutions x 4 widths x 2 expansions x 2 depths.
    CHECK(keys.size() == 320);
}

TEST_CASE("channel rounding is half-up with a floor of 1") {
    CHECK(scaled_channels(16, 0.25) == 4);
    CHECK(scaled_channels(3, 0.5) == 2);   // 1.5 rounds up
    CHECK(scaled_channels(1, 0.25) == 1);  // clamped
    CHECK(scaled_channels(160, 0.75) == 120);
}

TEST_CASE("flops is deterministic and strictly monotone in each parameter") {
    const auto config = SearchSpaceConfig::table1_default();
    const auto archs = enumerate_space(config);
    for (const auto& arch : archs) {
        const auto f = flops(arch, config);
        CHECK(f == flops(arch, config));
        CHECK(f > 0);

        // Bump each parameter to its next larger value, all else fixed.
        auto idx = [](const auto& values, auto v) {
            return std::find(values.begin(), values.end(), v) - values.begin();
        };
        auto up = arch;
        if (auto i = idx(config.resolutions, arch.resolution);
            i + 1 < static_cast<long>(config.resolutions.size())) {
            up.resolution = config.resolutions[i + 1];
            CHECK(flops(up, config) > f);
        }
        up = arch;
        if (auto i = idx(config.width_multipliers, arch.width_multiplier);
            i + 1 < static_cast<long>(config.width_multipliers.size())) {
            up.width_multiplier = config.width_multipliers[i + 1];
            CHECK(flops(up, config) > f);
        }
        up = arch;
        if (auto i = idx(config.expansion_ratios, arch.expansion_ratio);
            i + 1 < static_cast<long>(config.expansion_ratios.size())) {
            up.expansion_ratio = config.expansion_ratios[i + 1];
            CHECK(flops(up, config) > f);
        }
        for (int s = 0; s < config.num_stages; ++s) {
            up = arch;
            if (auto i = idx(config.stage_depth_choices, arch.stage_depths[s]);
                i + 1 < static_cast<long>(config.stage_depth_choices.size())) {
                up.stage_depths[s] = config.stage_depth_choices[i + 1];
                CHECK(flops(up, config) > f);
            }
        }
    }
}

TEST_CASE("flops of the default space matches the golden table") {
    const auto config = SearchSpaceConfig::table1_default();
    std::ifstream golden(std::string(SONARSIM_TEST_DATA_DIR) + "/flops_table1.tsv");
    REQUIRE_MESSAGE(golden.good(), "golden file missing");
    std::string line;
    std::getline(golden, line);  // header
    int rows = 0;
    while (std::getline(golden, line)) {
        std::istringstream ss(line);
        int id;
        std::int64_t expected;
        ss >> id >> expected;
        CHECK(flops(decode_arch(id, config), config) == expected);
        ++rows;
    }
    CHECK(rows == 1024);
}
