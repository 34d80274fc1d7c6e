#pragma once

#include <string>

#include "sonarsim/config.hpp"
#include "sonarsim/engine.hpp"
#include "sonarsim/simbench.hpp"

// Versioned result files. Every file embeds (tool version, config hash,
// seed); loaders verify format and version, and consumers compare hashes
// before combining files.

namespace sonarsim {

extern const char* const kToolVersion;

struct Provenance {
    std::string tool_version;
    std::string config_hash;
    std::uint64_t seed = 0;
};

// Benchmark file: the ground truth plus everything needed to regenerate it.
void write_benchmark(const GroundTruth& truth, const std::string& path);
GroundTruth load_benchmark(const std::string& path, Provenance* prov = nullptr);

void write_trace(const SearchTrace& trace, const std::string& config_hash,
                 const std::string& path);
SearchTrace load_trace(const std::string& path, Provenance* prov = nullptr);

void write_oracle(const OracleTable& table, const std::string& config_hash, std::uint64_t seed,
                  const std::string& path);
OracleTable load_oracle(const std::string& path, Provenance* prov = nullptr);

// Flat plot-ready table (tab-separated): arch parameters plus estimates
// for the given ids.
void write_front_table(const std::vector<int>& ids, const std::vector<ObjectivePoint>& estimates,
                       const SearchSpaceConfig& space, const std::string& path);

}  // namespace sonarsim
