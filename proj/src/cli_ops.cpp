#include "sonarsim/cli_ops.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "sonarsim/errors.hpp"
#include "sonarsim/metrics.hpp"
#include "sonarsim/serialize.hpp"

namespace sonarsim {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
}

std::string run_hash(const RunConfig& config) {
    return config_hash_hex(config.seed, config.space, config.resolved_profile());
}

GroundTruth load_matching_benchmark(const RunConfig& config, const std::string& path) {
    Provenance prov;
    GroundTruth truth = load_benchmark(path, &prov);
    const std::string expected = run_hash(config);
    if (prov.config_hash != expected) {
        throw ProvenanceError("benchmark " + path + " was generated from config hash " +
                              prov.config_hash + " but this run's config hashes to " + expected +
                              "; regenerate the benchmark or fix the config");
    }
    return truth;
}

void write_tsv(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << text;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

int cmd_generate_benchmark(const RunConfig& config, const std::string& out_path) {
    config.validate();
    const GroundTruth truth =
        generate_ground_truth(config.seed, config.space, config.resolved_profile());
    if (!fs::path(out_path).parent_path().empty())
        ensure_dir(fs::path(out_path).parent_path().string());
    write_benchmark(truth, out_path);
    std::cout << "benchmark written to " << out_path << " (" << truth.per_arch.size()
              << " architectures, " << truth.per_subgraph.size() << " subgraphs, hash "
              << run_hash(config) << ")\n";
    return kExitOk;
}

int cmd_run(const RunConfig& config, const std::string& benchmark_path,
            const std::string& out_dir) {
    config.validate();
    if (config.budget_units <= 0) throw ConfigError("run: budget_units must be > 0");
    const GroundTruth truth = load_matching_benchmark(config, benchmark_path);

    SearchTrace trace =
        config.mode == SearchMode::pareto
            ? run_sonar_pareto(config.space, truth, config.budget_units, config.unit, config.seed,
                               config.noiseless)
            : run_sonar_threshold(config.space, truth, config.budget_units, config.unit,
                                  config.nu_ms, config.seed, config.noiseless);

    ensure_dir(out_dir);
    const std::string hash = run_hash(config);
    write_trace(trace, hash, (fs::path(out_dir) / "trace.json").string());
    write_front_table(trace.final_front, trace.final_estimates, config.space,
                      (fs::path(out_dir) / "front_table.tsv").string());

    std::cout << "rounds: " << trace.rounds.size() << ", final survivors: "
              << trace.final_survivors.size() << ", ledger units: " << trace.ledger.units << "\n";
    if (config.mode == SearchMode::threshold) {
        if (!trace.threshold_answer) {
            std::cout << "no architecture estimated below nu = " << trace.nu_ms << " ms\n";
            return kExitInfeasibleThreshold;
        }
        std::cout << "threshold answer: arch " << *trace.threshold_answer << "\n";
    }
    return kExitOk;
}

int cmd_brute_force(const RunConfig& config, const std::string& benchmark_path,
                    const std::string& out_dir) {
    config.validate();
    const GroundTruth truth = load_matching_benchmark(config, benchmark_path);
    const OracleTable table =
        run_brute_force(config.space, truth, config.oracle.epochs_full,
                        config.oracle.trials_full_per_key, config.unit, config.noiseless);

    ensure_dir(out_dir);
    write_oracle(table, run_hash(config), config.seed, (fs::path(out_dir) / "oracle.json").string());
    write_front_table(table.front, table.points, config.space,
                      (fs::path(out_dir) / "oracle_front.tsv").string());
    std::cout << "oracle table: " << table.points.size() << " architectures, front size "
              << table.front.size() << ", ledger units: " << table.ledger.units << "\n";
    return kExitOk;
}

int cmd_report(const std::string& benchmark_path, const std::string& trace_path,
               const std::string& oracle_path, const std::string& out_dir) {
    Provenance bench_prov, trace_prov, oracle_prov;
    const GroundTruth truth = load_benchmark(benchmark_path, &bench_prov);
    const SearchTrace trace = load_trace(trace_path, &trace_prov);
    const OracleTable oracle = load_oracle(oracle_path, &oracle_prov);
    if (trace_prov.config_hash != bench_prov.config_hash ||
        oracle_prov.config_hash != bench_prov.config_hash) {
        throw ProvenanceError("refusing to mix files from different benchmarks (hashes " +
                              bench_prov.config_hash + ", " + trace_prov.config_hash + ", " +
                              oracle_prov.config_hash + ")");
    }

    const auto archs = enumerate_space(truth.space);
    if (oracle.points.size() != archs.size() || trace.final_estimates.size() != archs.size())
        throw ParseError("report: oracle/trace do not cover the full space");

    // Rank-correlation table against the fully optimized latency.
    std::vector<double> true_latency(archs.size()), flops_proxy(archs.size()),
        sonar_estimate(archs.size());
    for (const auto& p : oracle.points) true_latency[p.arch_id] = p.latency;
    for (const auto& p : trace.final_estimates) sonar_estimate[p.arch_id] = p.latency;
    for (const auto& a : archs)
        flops_proxy[a.arch_id] = static_cast<double>(flops(a, truth.space));
    const auto taus = rank_table({{"flops", flops_proxy},
                                  {"sonar_estimate", sonar_estimate},
                                  {"true_latency", true_latency}},
                                 true_latency);

    // Hypervolume of both fronts in true objectives, shared reference point.
    double max_latency = 0.0;
    for (const auto& p : oracle.points) max_latency = std::max(max_latency, p.latency);
    const ObjectivePoint reference{-1, 0.0, 1.1 * max_latency};
    std::vector<ObjectivePoint> oracle_front_points, sonar_front_points;
    for (int id : oracle.front) oracle_front_points.push_back(oracle.points[id]);
    for (int id : trace.final_front) sonar_front_points.push_back(oracle.points[id]);
    const double hv_oracle = hypervolume_2d(oracle_front_points, reference);
    const double hv_sonar = hypervolume_2d(sonar_front_points, reference);

    const auto curve = gap_curve(trace, oracle);

    ensure_dir(out_dir);
    {
        std::ostringstream tsv;
        tsv << "metric\ttau_vs_true_latency\n";
        for (const auto& e : taus) tsv << e.name << '\t' << fmt(e.tau) << '\n';
        write_tsv((fs::path(out_dir) / "rank_table.tsv").string(), tsv.str());
    }
    {
        std::ostringstream tsv;
        tsv << "ledger_units\tmean_gap\n";
        for (const auto& p : curve) tsv << p.ledger_units << '\t' << fmt(p.mean_gap) << '\n';
        write_tsv((fs::path(out_dir) / "gap_curve.tsv").string(), tsv.str());
    }

    json summary;
    summary["format"] = "sonar-sim/report";
    summary["format_version"] = 1;
    summary["tool_version"] = kToolVersion;
    summary["config_hash"] = bench_prov.config_hash;
    summary["seed"] = bench_prov.seed;
    summary["hypervolume"] = json{{"reference_latency_ms", reference.latency},
                                  {"oracle", hv_oracle},
                                  {"run", hv_sonar},
                                  {"ratio", hv_oracle > 0.0 ? hv_sonar / hv_oracle : 1.0}};
    json taus_json = json::object();
    for (const auto& e : taus) taus_json[e.name] = e.tau;
    summary["kendall_tau"] = std::move(taus_json);
    summary["final_mean_gap"] = curve.empty() ? 0.0 : curve.back().mean_gap;
    summary["ledger"] = json{{"run_units", trace.ledger.units},
                             {"oracle_units", oracle.ledger.units},
                             {"speedup", trace.ledger.units > 0
                                             ? static_cast<double>(oracle.ledger.units) /
                                                   static_cast<double>(trace.ledger.units)
                                             : 0.0}};
    std::ofstream out((fs::path(out_dir) / "report_summary.json").string(), std::ios::binary);
    if (!out) throw ConfigError("cannot write report summary");
    out << summary.dump(2) << "\n";

    std::cout << "hypervolume ratio: " << summary["hypervolume"]["ratio"].get<double>()
              << ", tau(sonar)=" << summary["kendall_tau"]["sonar_estimate"].get<double>()
              << " vs tau(flops)=" << summary["kendall_tau"]["flops"].get<double>()
              << ", final mean gap: " << summary["final_mean_gap"].get<double>()
              << ", speedup: " << summary["ledger"]["speedup"].get<double>() << "x\n";
    return kExitOk;
}

int exit_code_for_current_exception() {
    try {
        throw;
    } catch (const ProvenanceError& e) {
        std::cerr << "provenance error: " << e.what() << "\n";
        return kExitProvenanceMismatch;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace sonarsim
