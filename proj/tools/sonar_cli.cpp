// sonar-sim: seeded architecture/latency co-search on a simulated benchmark.
//
// Subcommands:
//   generate-benchmark  materialize the ground truth for a config
//   run                 interleaved successive-halving search
//   brute-force         full evaluation of the space (the oracle)
//   report              metrics comparing a run against an oracle
//
// Exit codes: 0 ok, 1 parse/IO error, 2 config error, 3 threshold
// infeasible, 4 provenance mismatch.

#include <string>

#include <CLI11.hpp>

#include "sonarsim/cli_ops.hpp"
#include "sonarsim/serialize.hpp"

int main(int argc, char** argv) {
    CLI::App app{"SONAR-style joint accuracy/latency search on a simulated benchmark"};
    app.set_version_flag("--version", std::string("sonar-sim ") + sonarsim::kToolVersion);
    app.require_subcommand(1);

    std::string config_path, benchmark_path, oracle_path, trace_path, out_path, out_dir;

    auto* gen = app.add_subcommand("generate-benchmark", "write the ground-truth benchmark file");
    gen->add_option("--config", config_path, "run config (JSON)")->required();
    gen->add_option("--out", out_path, "benchmark output path (default <output_dir>/benchmark.json)");

    auto* run = app.add_subcommand("run", "run the search against a benchmark");
    run->add_option("--config", config_path, "run config (JSON)")->required();
    run->add_option("--benchmark", benchmark_path, "benchmark file")->required();
    run->add_option("--out-dir", out_dir, "result directory (default config output_dir)");

    auto* oracle = app.add_subcommand("brute-force", "fully evaluate every architecture");
    oracle->add_option("--config", config_path, "run config (JSON)")->required();
    oracle->add_option("--benchmark", benchmark_path, "benchmark file")->required();
    oracle->add_option("--out-dir", out_dir, "result directory (default config output_dir)");

    auto* report = app.add_subcommand("report", "metric report for a run vs an oracle");
    report->add_option("--benchmark", benchmark_path, "benchmark file")->required();
    report->add_option("--trace", trace_path, "trace.json from a run")->required();
    report->add_option("--oracle", oracle_path, "oracle.json from brute-force")->required();
    report->add_option("--out-dir", out_dir, "report directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const auto config = sonarsim::RunConfig::from_json_file(config_path);
            const std::string out =
                out_path.empty() ? config.output_dir + "/benchmark.json" : out_path;
            return sonarsim::cmd_generate_benchmark(config, out);
        }
        if (run->parsed()) {
            const auto config = sonarsim::RunConfig::from_json_file(config_path);
            return sonarsim::cmd_run(config, benchmark_path,
                                     out_dir.empty() ? config.output_dir : out_dir);
        }
        if (oracle->parsed()) {
            const auto config = sonarsim::RunConfig::from_json_file(config_path);
            return sonarsim::cmd_brute_force(config, benchmark_path,
                                             out_dir.empty() ? config.output_dir : out_dir);
        }
        return sonarsim::cmd_report(benchmark_path, trace_path, oracle_path, out_dir);
    } catch (...) {
        return sonarsim::exit_code_for_current_exception();
    }
}
