#include "sonarsim/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "json_helpers.hpp"
#include "sonarsim/errors.hpp"

namespace sonarsim {

using nlohmann::json;

void OracleConfig::validate() const {
    if (epochs_full < 1 || trials_full_per_key < 1)
        throw ConfigError("oracle: epochs_full and trials_full_per_key must be >= 1");
}

std::map<std::string, HardwareProfile> builtin_profiles(int num_stages) {
    auto stretch = [num_stages](std::initializer_list<double> factors) {
        // Interpolate the 5-stage reference multipliers onto num_stages.
        std::vector<double> ref(factors);
        std::vector<double> out(static_cast<std::size_t>(num_stages));
        for (int s = 0; s < num_stages; ++s) {
            const double pos = num_stages == 1
                                   ? 0.0
                                   : static_cast<double>(s) * (ref.size() - 1) / (num_stages - 1);
            const auto lo = static_cast<std::size_t>(pos);
            const auto hi = std::min(lo + 1, ref.size() - 1);
            out[s] = ref[lo] + (pos - static_cast<double>(lo)) * (ref[hi] - ref[lo]);
        }
        return out;
    };

    std::map<std::string, HardwareProfile> profiles;
    profiles["uniform"] = {"uniform", std::vector<double>(num_stages, 1.0), 0.0, 0.0};
    // CPU-bound edge board: early high-resolution stages relatively cheap
    // per MAC, strong extra penalty for large feature maps.
    profiles["rpi4-sim"] = {"rpi4-sim", stretch({1.30, 1.15, 1.0, 0.90, 0.85}), 0.25, 0.15};
    // Weak in-order camera SoC: memory traffic dominates everything.
    profiles["camera-t20-sim"] = {"camera-t20-sim", stretch({1.8, 1.45, 1.15, 1.0, 0.92}), 0.40, 0.20};
    // Batch-32 GPU: wide late stages run efficiently, tiny feature maps
    // underutilize the device.
    profiles["m1-gpu-sim"] = {"m1-gpu-sim", stretch({0.6, 0.7, 0.85, 1.0, 1.2}), -0.20, 0.15};
    return profiles;
}

namespace {

SearchSpaceConfig space_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "table1-default") return SearchSpaceConfig::table1_default();
        throw ParseError("unknown space preset '" + j.get<std::string>() +
                         "' (expected \"table1-default\" or an object)");
    }
    SearchSpaceConfig c;
    c.resolutions = j.at("resolutions").get<std::vector<int>>();
    c.width_multipliers = j.at("width_multipliers").get<std::vector<double>>();
    c.expansion_ratios = j.at("expansion_ratios").get<std::vector<int>>();
    c.stage_depth_choices = j.at("stage_depth_choices").get<std::vector<int>>();
    c.num_stages = j.at("num_stages").get<int>();
    c.base_stage_channels = j.at("base_stage_channels").get<std::vector<int>>();
    c.kernel_size = j.value("kernel_size", 3);
    return c;
}

HardwareProfile profile_from_json(const std::string& name, const json& j) {
    HardwareProfile p;
    p.name = name;
    p.stage_multipliers = j.at("stage_multipliers").get<std::vector<double>>();
    p.resolution_penalty_exponent = j.value("resolution_penalty_exponent", 0.0);
    p.lstar_jitter_sigma = j.value("lstar_jitter_sigma", 0.0);
    return p;
}

}  // namespace

json space_to_json(const SearchSpaceConfig& c) {
    return json{{"resolutions", c.resolutions},
                {"width_multipliers", c.width_multipliers},
                {"expansion_ratios", c.expansion_ratios},
                {"stage_depth_choices", c.stage_depth_choices},
                {"num_stages", c.num_stages},
                {"base_stage_channels", c.base_stage_channels},
                {"kernel_size", c.kernel_size}};
}

json profile_to_json(const HardwareProfile& p) {
    return json{{"name", p.name},
                {"stage_multipliers", p.stage_multipliers},
                {"resolution_penalty_exponent", p.resolution_penalty_exponent},
                {"lstar_jitter_sigma", p.lstar_jitter_sigma}};
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    try {
        RunConfig c;
        c.seed = j.value("seed", std::uint64_t{1});
        if (j.contains("space")) c.space = space_from_json(j.at("space"));
        c.profile_name = j.value("hardware_profile", std::string("uniform"));
        if (j.contains("profiles")) {
            for (const auto& [name, pj] : j.at("profiles").items())
                c.extra_profiles[name] = profile_from_json(name, pj);
        }
        const std::string mode = j.value("mode", std::string("pareto"));
        if (mode == "pareto") {
            c.mode = SearchMode::pareto;
        } else if (mode == "threshold") {
            c.mode = SearchMode::threshold;
        } else {
            throw ParseError("config: mode must be \"pareto\" or \"threshold\", got \"" + mode + "\"");
        }
        c.nu_ms = j.value("nu_ms", 0.0);
        c.budget_units = j.value("budget_units", std::int64_t{0});
        if (j.contains("resource_unit")) {
            c.unit.epochs_per_unit = j.at("resource_unit").value("epochs_per_unit", std::int64_t{1});
            c.unit.trials_per_unit = j.at("resource_unit").value("trials_per_unit", std::int64_t{64});
        }
        c.noiseless = j.value("noiseless", false);
        c.output_dir = j.value("output_dir", std::string("."));
        if (j.contains("oracle")) {
            c.oracle.epochs_full = j.at("oracle").value("epochs_full", std::int64_t{750});
            c.oracle.trials_full_per_key =
                j.at("oracle").value("trials_full_per_key", std::int64_t{1024});
        }
        return c;
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

void RunConfig::validate() const {
    space.validate();
    unit.validate();
    oracle.validate();
    resolved_profile();  // known name, valid shape
    if (mode == SearchMode::threshold && !(nu_ms > 0.0))
        throw ConfigError("threshold mode requires nu_ms > 0");
}

HardwareProfile RunConfig::resolved_profile() const {
    auto profiles = builtin_profiles(space.num_stages);
    for (const auto& [name, p] : extra_profiles) profiles[name] = p;
    auto it = profiles.find(profile_name);
    if (it == profiles.end()) {
        std::string names;
        for (const auto& [name, p] : profiles) {
            if (!names.empty()) names += ", ";
            names += name;
        }
        throw ConfigError("unknown hardware profile '" + profile_name + "'; available: " + names);
    }
    it->second.validate(space.num_stages);
    return it->second;
}

std::string config_hash_hex(std::uint64_t seed, const SearchSpaceConfig& space,
                            const HardwareProfile& profile) {
    json j{{"seed", seed}, {"space", space_to_json(space)}, {"profile", profile_to_json(profile)}};
    const std::string canonical = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace sonarsim
