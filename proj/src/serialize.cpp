#include "sonarsim/serialize.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "json_helpers.hpp"
#include "sonarsim/errors.hpp"

namespace sonarsim {

using nlohmann::json;

const char* const kToolVersion = "0.1.0";

namespace {

constexpr int kFormatVersion = 1;

json load_checked(const std::string& path, const char* format, Provenance* prov) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (j.value("format", std::string{}) != format)
        throw ParseError(path + ": expected format \"" + format + "\", found \"" +
                         j.value("format", std::string("<missing>")) + "\"");
    if (j.value("format_version", -1) != kFormatVersion)
        throw ParseError(path + ": unsupported format_version");
    if (prov) {
        prov->tool_version = j.value("tool_version", std::string{});
        prov->config_hash = j.value("config_hash", std::string{});
        prov->seed = j.value("seed", std::uint64_t{0});
    }
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << text;
    if (!out) throw ConfigError("failed writing file: " + path);
}

json header(const char* format, const std::string& config_hash, std::uint64_t seed) {
    return json{{"format", format},
                {"format_version", kFormatVersion},
                {"tool_version", kToolVersion},
                {"config_hash", config_hash},
                {"seed", seed}};
}

json point_to_json(const ObjectivePoint& p) {
    return json::array({p.arch_id, p.accuracy, p.latency});
}

ObjectivePoint point_from_json(const json& j) {
    return {j.at(0).get<int>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

json ledger_to_json(const ResourceLedger& l) {
    return json{{"epochs", l.epochs}, {"trials", l.trials}, {"units", l.units}};
}

ResourceLedger ledger_from_json(const json& j) {
    return {j.at("epochs").get<std::int64_t>(), j.at("trials").get<std::int64_t>(),
            j.at("units").get<std::int64_t>()};
}

json key_to_json(const SubgraphKey& k) {
    return json::array({k.stage_index, k.input_resolution, k.in_channels, k.out_channels,
                        k.expansion_ratio, k.depth, k.kernel_size});
}

SubgraphKey key_from_json(const json& j) {
    SubgraphKey k;
    k.stage_index = j.at(0).get<int>();
    k.input_resolution = j.at(1).get<int>();
    k.in_channels = j.at(2).get<int>();
    k.out_channels = j.at(3).get<int>();
    k.expansion_ratio = j.at(4).get<int>();
    k.depth = j.at(5).get<int>();
    k.kernel_size = j.at(6).get<int>();
    return k;
}

SearchSpaceConfig space_from_file_json(const json& j) {
    SearchSpaceConfig c;
    c.resolutions = j.at("resolutions").get<std::vector<int>>();
    c.width_multipliers = j.at("width_multipliers").get<std::vector<double>>();
    c.expansion_ratios = j.at("expansion_ratios").get<std::vector<int>>();
    c.stage_depth_choices = j.at("stage_depth_choices").get<std::vector<int>>();
    c.num_stages = j.at("num_stages").get<int>();
    c.base_stage_channels = j.at("base_stage_channels").get<std::vector<int>>();
    c.kernel_size = j.at("kernel_size").get<int>();
    return c;
}

}  // namespace

void write_benchmark(const GroundTruth& truth, const std::string& path) {
    json j = header("sonar-sim/benchmark",
                    config_hash_hex(truth.seed, truth.space, truth.profile), truth.seed);
    j["space"] = space_to_json(truth.space);
    j["profile"] = profile_to_json(truth.profile);

    json archs = json::array();
    for (std::size_t id = 0; id < truth.per_arch.size(); ++id) {
        archs.push_back(json::array({id, truth.per_arch[id].asymptotic_accuracy,
                                     truth.per_arch[id].curve_rate}));
    }
    j["architectures"] = std::move(archs);

    // Subgraphs in the deterministic enumeration order of their first owner.
    json subs = json::array();
    std::unordered_set<SubgraphKey, SubgraphKeyHash> seen;
    for (const auto& arch : enumerate_space(truth.space)) {
        for (const auto& key : decompose(arch, truth.space)) {
            if (!seen.insert(key).second) continue;
            const SubgraphTruth& st = truth.subgraph(key);
            json row = key_to_json(key);
            row.push_back(st.optimal_latency_ms);
            row.push_back(st.tuning_spread);
            subs.push_back(std::move(row));
        }
    }
    j["subgraphs"] = std::move(subs);
    write_text(path, j.dump(2) + "\n");
}

GroundTruth load_benchmark(const std::string& path, Provenance* prov) {
    Provenance local;
    const json j = load_checked(path, "sonar-sim/benchmark", &local);
    if (prov) *prov = local;
    try {
        GroundTruth truth;
        truth.seed = local.seed;
        truth.space = space_from_file_json(j.at("space"));
        truth.space.validate();
        HardwareProfile p;
        p.name = j.at("profile").at("name").get<std::string>();
        p.stage_multipliers = j.at("profile").at("stage_multipliers").get<std::vector<double>>();
        p.resolution_penalty_exponent =
            j.at("profile").at("resolution_penalty_exponent").get<double>();
        p.lstar_jitter_sigma = j.at("profile").at("lstar_jitter_sigma").get<double>();
        truth.profile = p;

        const std::string expected = config_hash_hex(truth.seed, truth.space, truth.profile);
        if (expected != local.config_hash)
            throw ProvenanceError(path + ": embedded config_hash " + local.config_hash +
                                  " does not match its own contents (" + expected + ")");

        truth.per_arch.resize(truth.space.size());
        if (j.at("architectures").size() != truth.per_arch.size())
            throw ParseError(path + ": architecture count does not match the space");
        for (const auto& row : j.at("architectures")) {
            const auto id = row.at(0).get<std::size_t>();
            if (id >= truth.per_arch.size()) throw ParseError(path + ": arch_id out of range");
            truth.per_arch[id] = {row.at(1).get<double>(), row.at(2).get<double>()};
        }
        for (const auto& row : j.at("subgraphs")) {
            const SubgraphKey key = key_from_json(row);
            truth.per_subgraph[key] = {row.at(7).get<double>(), row.at(8).get<double>()};
        }
        return truth;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_trace(const SearchTrace& trace, const std::string& config_hash,
                 const std::string& path) {
    json j = header("sonar-sim/trace", config_hash, trace.seed);
    j["mode"] = trace.mode == SearchMode::pareto ? "pareto" : "threshold";
    j["nu_ms"] = trace.nu_ms;
    j["budget_units"] = trace.budget_units;
    j["resource_unit"] = json{{"epochs_per_unit", trace.unit.epochs_per_unit},
                              {"trials_per_unit", trace.unit.trials_per_unit}};
    j["noiseless"] = trace.noiseless;

    json rounds = json::array();
    for (const auto& rec : trace.rounds) {
        json r;
        r["k"] = rec.plan.round_index;
        r["total_rounds"] = rec.plan.total_rounds;
        r["r_k"] = rec.plan.resource_units;
        r["survivors_in"] = rec.plan.survivors_in;
        json est = json::array();
        for (const auto& p : rec.estimates) est.push_back(point_to_json(p));
        r["estimates"] = std::move(est);
        r["eliminated"] = rec.eliminated;
        r["ledger_after"] = ledger_to_json(rec.ledger_after);
        json tt = json::array();
        for (const auto& b : rec.tuning_trace) {
            json row = key_to_json(b.key);
            row.push_back(b.batch_size);
            row.push_back(b.improvement);
            row.push_back(b.best_after);
            tt.push_back(std::move(row));
        }
        r["tuning_trace"] = std::move(tt);
        rounds.push_back(std::move(r));
    }
    j["rounds"] = std::move(rounds);
    j["final_survivors"] = trace.final_survivors;
    j["final_front"] = trace.final_front;
    if (trace.threshold_answer) {
        j["threshold_answer"] = *trace.threshold_answer;
    } else {
        j["threshold_answer"] = nullptr;
    }
    json fe = json::array();
    for (const auto& p : trace.final_estimates) fe.push_back(point_to_json(p));
    j["final_estimates"] = std::move(fe);
    j["ledger"] = ledger_to_json(trace.ledger);
    write_text(path, j.dump(2) + "\n");
}

SearchTrace load_trace(const std::string& path, Provenance* prov) {
    Provenance local;
    const json j = load_checked(path, "sonar-sim/trace", &local);
    if (prov) *prov = local;
    try {
        SearchTrace t;
        t.mode = j.at("mode").get<std::string>() == "threshold" ? SearchMode::threshold
                                                                : SearchMode::pareto;
        t.nu_ms = j.at("nu_ms").get<double>();
        t.seed = local.seed;
        t.budget_units = j.at("budget_units").get<std::int64_t>();
        t.unit.epochs_per_unit = j.at("resource_unit").at("epochs_per_unit").get<std::int64_t>();
        t.unit.trials_per_unit = j.at("resource_unit").at("trials_per_unit").get<std::int64_t>();
        t.noiseless = j.at("noiseless").get<bool>();
        for (const auto& r : j.at("rounds")) {
            RoundRecord rec;
            rec.plan.round_index = r.at("k").get<int>();
            rec.plan.total_rounds = r.at("total_rounds").get<int>();
            rec.plan.resource_units = r.at("r_k").get<std::int64_t>();
            rec.plan.survivors_in = r.at("survivors_in").get<std::vector<int>>();
            for (const auto& p : r.at("estimates")) rec.estimates.push_back(point_from_json(p));
            rec.eliminated = r.at("eliminated").get<std::vector<int>>();
            rec.ledger_after = ledger_from_json(r.at("ledger_after"));
            for (const auto& row : r.at("tuning_trace")) {
                TuningBatchRecord b;
                b.key = key_from_json(row);
                b.batch_size = row.at(7).get<std::int64_t>();
                b.improvement = row.at(8).get<double>();
                b.best_after = row.at(9).get<double>();
                rec.tuning_trace.push_back(b);
            }
            t.rounds.push_back(std::move(rec));
        }
        t.final_survivors = j.at("final_survivors").get<std::vector<int>>();
        t.final_front = j.at("final_front").get<std::vector<int>>();
        if (!j.at("threshold_answer").is_null())
            t.threshold_answer = j.at("threshold_answer").get<int>();
        for (const auto& p : j.at("final_estimates")) t.final_estimates.push_back(point_from_json(p));
        t.ledger = ledger_from_json(j.at("ledger"));
        return t;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_oracle(const OracleTable& table, const std::string& config_hash, std::uint64_t seed,
                  const std::string& path) {
    json j = header("sonar-sim/oracle", config_hash, seed);
    json pts = json::array();
    for (const auto& p : table.points) pts.push_back(point_to_json(p));
    j["points"] = std::move(pts);
    j["front"] = table.front;
    j["ledger"] = ledger_to_json(table.ledger);
    write_text(path, j.dump(2) + "\n");
}

OracleTable load_oracle(const std::string& path, Provenance* prov) {
    Provenance local;
    const json j = load_checked(path, "sonar-sim/oracle", &local);
    if (prov) *prov = local;
    try {
        OracleTable t;
        for (const auto& p : j.at("points")) t.points.push_back(point_from_json(p));
        t.front = j.at("front").get<std::vector<int>>();
        t.ledger = ledger_from_json(j.at("ledger"));
        return t;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_front_table(const std::vector<int>& ids, const std::vector<ObjectivePoint>& estimates,
                       const SearchSpaceConfig& space, const std::string& path) {
    std::unordered_map<int, const ObjectivePoint*> by_id;
    for (const auto& p : estimates) by_id[p.arch_id] = &p;

    std::ostringstream out;
    out << "arch_id\tresolution\twidth_multiplier\texpansion_ratio\tstage_depths\taccuracy\t"
           "latency_ms\n";
    char buf[64];
    for (int id : ids) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw UsageError("front table: missing estimate for arch " +
                                                std::to_string(id));
        const ArchitectureSpec a = decode_arch(id, space);
        out << id << '\t' << a.resolution << '\t';
        std::snprintf(buf, sizeof(buf), "%.17g", a.width_multiplier);
        out << buf << '\t' << a.expansion_ratio << '\t';
        for (std::size_t s = 0; s < a.stage_depths.size(); ++s) {
            if (s) out << ',';
            out << a.stage_depths[s];
        }
        std::snprintf(buf, sizeof(buf), "%.17g", it->second->accuracy);
        out << '\t' << buf;
        std::snprintf(buf, sizeof(buf), "%.17g", it->second->latency);
        out << '\t' << buf << '\n';
    }
    write_text(path, out.str());
}

}  // namespace sonarsim
