#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "sonarsim/engine.hpp"
#include "sonarsim/simbench.hpp"
#include "sonarsim/space.hpp"

// Run configuration: the single reviewable artifact a run is derived from.
// All randomness flows from its one seed.

namespace sonarsim {

struct OracleConfig {
    std::int64_t epochs_full = 750;           // 50x the largest curve rate
    std::int64_t trials_full_per_key = 1024;

    void validate() const;
};

struct RunConfig {
    std::uint64_t seed = 1;
    SearchSpaceConfig space = SearchSpaceConfig::table1_default();
    std::string profile_name = "uniform";
    std::map<std::string, HardwareProfile> extra_profiles;  // config-defined, by name
    SearchMode mode = SearchMode::pareto;
    double nu_ms = 0.0;
    std::int64_t budget_units = 0;
    ResourceUnit unit;
    bool noiseless = false;
    std::string output_dir = ".";
    OracleConfig oracle;

    static RunConfig from_json_file(const std::string& path);
    static RunConfig from_json_text(const std::string& text);
    void validate() const;

    // Shipped profiles plus extra_profiles; ConfigError naming the
    // available profiles when profile_name is unknown.
    HardwareProfile resolved_profile() const;
};

// Virtual hardware targets shipped with the simulator. "uniform" makes
// total latency an exact multiple of FLOPs; the others distort per-stage
// costs and resolution scaling so the FLOPs proxy misranks.
std::map<std::string, HardwareProfile> builtin_profiles(int num_stages);

// Hash binding a benchmark to the (seed, space, profile) that generated
// it; runs and reports refuse to mix files with different hashes.
std::string config_hash_hex(std::uint64_t seed, const SearchSpaceConfig& space,
                            const HardwareProfile& profile);

}  // namespace sonarsim
