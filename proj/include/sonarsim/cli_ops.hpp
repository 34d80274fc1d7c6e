#pragma once

#include <string>

#include "sonarsim/config.hpp"

// Command implementations behind the sonar-sim executable; kept callable
// in-process so tests can drive them directly. Commands return the process
// exit code for expected outcomes and throw typed errors otherwise
// (ConfigError/UsageError -> 2, ProvenanceError -> 4, ParseError -> 1).

namespace sonarsim {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;           // parse errors, IO, unexpected
constexpr int kExitConfigError = 2;
constexpr int kExitInfeasibleThreshold = 3;
constexpr int kExitProvenanceMismatch = 4;

// Writes the ground-truth benchmark file for the config.
int cmd_generate_benchmark(const RunConfig& config, const std::string& out_path);

// Runs the search against a benchmark file whose hash must match the
// config; writes trace.json and front_table.tsv into out_dir. Returns
// kExitInfeasibleThreshold when a threshold run finds nothing under nu.
int cmd_run(const RunConfig& config, const std::string& benchmark_path,
            const std::string& out_dir);

// Full evaluation of the space; writes oracle.json and oracle_front.tsv.
int cmd_brute_force(const RunConfig& config, const std::string& benchmark_path,
                    const std::string& out_dir);

// Metric report over one run and one oracle produced from the same
// benchmark; writes report_summary.json, rank_table.tsv and gap_curve.tsv.
int cmd_report(const std::string& benchmark_path, const std::string& trace_path,
               const std::string& oracle_path, const std::string& out_dir);

// Maps an exception propagating out of a command to its exit code.
int exit_code_for_current_exception();

}  // namespace sonarsim
