#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sonarsim/cli_ops.hpp"
#include "sonarsim/config.hpp"
#include "sonarsim/errors.hpp"
#include "sonarsim/engine.hpp"
#include "sonarsim/metrics.hpp"
#include "sonarsim/pareto.hpp"
#include "sonarsim/serialize.hpp"
#include "sonarsim/simbench.hpp"
#include "sonarsim/space.hpp"

namespace py = pybind11;
using namespace sonarsim;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Simulated joint architecture/latency search engine";
    m.attr("__version__") = kToolVersion;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<ProvenanceError>(m, "ProvenanceError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_RuntimeError);

    py::class_<SearchSpaceConfig>(m, "SearchSpaceConfig")
        .def(py::init<>())
        .def_static("table1_default", &SearchSpaceConfig::table1_default)
        .def_readwrite("resolutions", &SearchSpaceConfig::resolutions)
        .def_readwrite("width_multipliers", &SearchSpaceConfig::width_multipliers)
        .def_readwrite("expansion_ratios", &SearchSpaceConfig::expansion_ratios)
        .def_readwrite("stage_depth_choices", &SearchSpaceConfig::stage_depth_choices)
        .def_readwrite("num_stages", &SearchSpaceConfig::num_stages)
        .def_readwrite("base_stage_channels", &SearchSpaceConfig::base_stage_channels)
        .def_readwrite("kernel_size", &SearchSpaceConfig::kernel_size)
        .def("size", &SearchSpaceConfig::size)
        .def("validate", &SearchSpaceConfig::validate);

    py::class_<ArchitectureSpec>(m, "ArchitectureSpec")
        .def_readonly("resolution", &ArchitectureSpec::resolution)
        .def_readonly("width_multiplier", &ArchitectureSpec::width_multiplier)
        .def_readonly("expansion_ratio", &ArchitectureSpec::expansion_ratio)
        .def_readonly("stage_depths", &ArchitectureSpec::stage_depths)
        .def_readonly("arch_id", &ArchitectureSpec::arch_id)
        .def("__repr__", [](const ArchitectureSpec& a) {
            return "ArchitectureSpec(id=" + std::to_string(a.arch_id) +
                   ", res=" + std::to_string(a.resolution) + ")";
        });

    py::class_<SubgraphKey>(m, "SubgraphKey")
        .def_readonly("stage_index", &SubgraphKey::stage_index)
        .def_readonly("input_resolution", &SubgraphKey::input_resolution)
        .def_readonly("in_channels", &SubgraphKey::in_channels)
        .def_readonly("out_channels", &SubgraphKey::out_channels)
        .def_readonly("expansion_ratio", &SubgraphKey::expansion_ratio)
        .def_readonly("depth", &SubgraphKey::depth)
        .def_readonly("kernel_size", &SubgraphKey::kernel_size)
        .def("__eq__", [](const SubgraphKey& a, const SubgraphKey& b) { return a == b; })
        .def("__hash__", [](const SubgraphKey& k) { return SubgraphKeyHash{}(k); });

    m.def("enumerate_space", &enumerate_space, py::arg("config"));
    m.def("decode_arch", &decode_arch, py::arg("arch_id"), py::arg("config"));
    m.def("encode_arch", &encode_arch, py::arg("arch"), py::arg("config"));
    m.def("decompose", &decompose, py::arg("arch"), py::arg("config"));
    m.def("flops", &flops, py::arg("arch"), py::arg("config"));

    py::class_<ObjectivePoint>(m, "ObjectivePoint")
        .def(py::init([](int arch_id, double accuracy, double latency) {
                 return ObjectivePoint{arch_id, accuracy, latency};
             }),
             py::arg("arch_id"), py::arg("accuracy"), py::arg("latency"))
        .def_readwrite("arch_id", &ObjectivePoint::arch_id)
        .def_readwrite("accuracy", &ObjectivePoint::accuracy)
        .def_readwrite("latency", &ObjectivePoint::latency)
        .def("__repr__", [](const ObjectivePoint& p) {
            return "ObjectivePoint(" + std::to_string(p.arch_id) + ", " +
                   std::to_string(p.accuracy) + ", " + std::to_string(p.latency) + ")";
        });

    m.def("dominates", &dominates, py::arg("p"), py::arg("q"));
    m.def("pareto_front", &pareto_front, py::arg("points"));
    m.def("nds", [](const std::vector<ObjectivePoint>& pts) { return nds(pts).fronts; },
          py::arg("points"));
    m.def("select_pareto_halving", &select_pareto_halving, py::arg("points"));
    m.def("select_threshold", &select_threshold, py::arg("points"), py::arg("nu"));

    py::class_<HardwareProfile>(m, "HardwareProfile")
        .def(py::init<>())
        .def_readwrite("name", &HardwareProfile::name)
        .def_readwrite("stage_multipliers", &HardwareProfile::stage_multipliers)
        .def_readwrite("resolution_penalty_exponent", &HardwareProfile::resolution_penalty_exponent)
        .def_readwrite("lstar_jitter_sigma", &HardwareProfile::lstar_jitter_sigma);
    m.def("builtin_profiles", &builtin_profiles, py::arg("num_stages"));

    py::class_<GroundTruth>(m, "GroundTruth")
        .def_readonly("seed", &GroundTruth::seed)
        .def_readonly("space", &GroundTruth::space)
        .def_readonly("profile", &GroundTruth::profile)
        .def("asymptotic_accuracy",
             [](const GroundTruth& t, int arch_id) {
                 return t.per_arch.at(arch_id).asymptotic_accuracy;
             })
        .def("curve_rate",
             [](const GroundTruth& t, int arch_id) { return t.per_arch.at(arch_id).curve_rate; })
        .def("true_latency", &GroundTruth::true_latency, py::arg("arch_keys"))
        .def("optimal_latency", [](const GroundTruth& t, const SubgraphKey& k) {
            return t.subgraph(k).optimal_latency_ms;
        });
    m.def("generate_ground_truth", &generate_ground_truth, py::arg("seed"), py::arg("config"),
          py::arg("profile"));
    m.def("sample_trial", &sample_trial, py::arg("truth"), py::arg("key"), py::arg("trial_index"),
          py::arg("noiseless") = false);

    py::class_<ResourceUnit>(m, "ResourceUnit")
        .def(py::init<>())
        .def_readwrite("epochs_per_unit", &ResourceUnit::epochs_per_unit)
        .def_readwrite("trials_per_unit", &ResourceUnit::trials_per_unit);

    py::class_<ResourceLedger>(m, "ResourceLedger")
        .def_readonly("epochs", &ResourceLedger::epochs)
        .def_readonly("trials", &ResourceLedger::trials)
        .def_readonly("units", &ResourceLedger::units);

    py::class_<RoundPlan>(m, "RoundPlan")
        .def_readonly("round_index", &RoundPlan::round_index)
        .def_readonly("total_rounds", &RoundPlan::total_rounds)
        .def_readonly("resource_units", &RoundPlan::resource_units)
        .def_readonly("survivors_in", &RoundPlan::survivors_in);

    py::class_<RoundRecord>(m, "RoundRecord")
        .def_readonly("plan", &RoundRecord::plan)
        .def_readonly("estimates", &RoundRecord::estimates)
        .def_readonly("eliminated", &RoundRecord::eliminated)
        .def_readonly("ledger_after", &RoundRecord::ledger_after);

    py::class_<SearchTrace>(m, "SearchTrace")
        .def_readonly("seed", &SearchTrace::seed)
        .def_readonly("budget_units", &SearchTrace::budget_units)
        .def_readonly("noiseless", &SearchTrace::noiseless)
        .def_readonly("rounds", &SearchTrace::rounds)
        .def_readonly("final_survivors", &SearchTrace::final_survivors)
        .def_readonly("final_front", &SearchTrace::final_front)
        .def_readonly("threshold_answer", &SearchTrace::threshold_answer)
        .def_readonly("final_estimates", &SearchTrace::final_estimates)
        .def_readonly("ledger", &SearchTrace::ledger);

    py::class_<OracleTable>(m, "OracleTable")
        .def_readonly("points", &OracleTable::points)
        .def_readonly("front", &OracleTable::front)
        .def_readonly("ledger", &OracleTable::ledger);

    m.def("run_sonar_pareto", &run_sonar_pareto, py::arg("space"), py::arg("truth"),
          py::arg("budget_units"), py::arg("unit") = ResourceUnit{}, py::arg("seed") = 0,
          py::arg("noiseless") = false, py::call_guard<py::gil_scoped_release>());
    m.def("run_sonar_threshold", &run_sonar_threshold, py::arg("space"), py::arg("truth"),
          py::arg("budget_units"), py::arg("unit"), py::arg("nu_ms"), py::arg("seed") = 0,
          py::arg("noiseless") = false, py::call_guard<py::gil_scoped_release>());
    m.def("run_brute_force", &run_brute_force, py::arg("space"), py::arg("truth"),
          py::arg("epochs_full"), py::arg("trials_full_per_key"),
          py::arg("unit") = ResourceUnit{}, py::arg("noiseless") = false,
          py::call_guard<py::gil_scoped_release>());
    m.def("proxy_front", &proxy_front, py::arg("space"), py::arg("truth"));

    m.def("hypervolume_2d", &hypervolume_2d, py::arg("points"), py::arg("reference"));
    m.def("kendall_tau", &kendall_tau, py::arg("scores_a"), py::arg("scores_b"));
    py::class_<GapCurvePoint>(m, "GapCurvePoint")
        .def_readonly("ledger_units", &GapCurvePoint::ledger_units)
        .def_readonly("mean_gap", &GapCurvePoint::mean_gap);
    m.def("gap_curve", &gap_curve, py::arg("trace"), py::arg("oracle"));

    m.def("write_benchmark", &write_benchmark, py::arg("truth"), py::arg("path"));
    m.def("load_benchmark",
          [](const std::string& path) { return load_benchmark(path, nullptr); }, py::arg("path"));
}
