"""Simulated joint architecture/latency search engine (C++ core)."""

from ._core import (  # noqa: F401
    ArchitectureSpec,
    ConfigError,
    GapCurvePoint,
    GroundTruth,
    HardwareProfile,
    ObjectivePoint,
    OracleTable,
    ParseError,
    ProvenanceError,
    ResourceLedger,
    ResourceUnit,
    RoundPlan,
    RoundRecord,
    SearchSpaceConfig,
    SearchTrace,
    SubgraphKey,
    UsageError,
    __version__,
    builtin_profiles,
    decode_arch,
    decompose,
    dominates,
    encode_arch,
    enumerate_space,
    flops,
    gap_curve,
    generate_ground_truth,
    hypervolume_2d,
    kendall_tau,
    load_benchmark,
    nds,
    pareto_front,
    proxy_front,
    run_brute_force,
    run_sonar_pareto,
    run_sonar_threshold,
    sample_trial,
    select_pareto_halving,
    select_threshold,
    write_benchmark,
)
