"""Weak-probe error-disturbance simulator.

Simulates a four-qubit circuit that measures one observable of a
two-level system at tunable strength while weakly probing a second,
incompatible observable before and after.  Exact density-matrix
evolution and seeded finite-shot sampling feed weak-valued estimators
of measurement error and disturbance, which are then tested against
four uncertainty trade-off relations.
"""

from .bounds import (
    BOUND_NAMES,
    EdrInputs,
    EdrReport,
    branciard_lhs,
    classify,
    effective_bound,
    heisenberg_lhs,
    ozawa_lhs,
    strong_branciard_lhs,
    tilde,
)
from .circuit import (
    Circuit,
    CouplingMap,
    DEVICE_COUPLING,
    DEVICE_LAYOUT,
    GateOp,
    METER,
    PROBE_X,
    PROBE_Z,
    SYSTEM,
    angle_for_strength,
    build_edr_circuit,
    export_qasm,
    strength_for_angle,
    validate_against_coupling,
)
from .estimators import (
    ErrDistEstimate,
    JointDistribution,
    ShotRecord,
    derive_seed,
    estimate_from_distribution,
    estimate_from_shots,
    exact_joint_distributions,
    outcome_distribution,
    run_circuit,
    sample_counts,
    sample_shots,
    weak_valued_rms,
    weak_valued_table,
)
from .measurement import (
    IndirectMeasurement,
    PovmPair,
    build_povm,
    commutator_bound,
    exact_disturbance,
    exact_error,
    reference_input_state,
    standard_deviation,
)
from .noise import (
    CalibrationProfile,
    NoiseModel,
    QubitCalibration,
    compile_noise,
    depolarizing_channel,
    dump_profile,
    load_profile,
    parse_profile,
    representative_profile,
    thermal_relaxation_channel,
)
from .qsim import DensityMatrix, KrausChannel, embed, kron, rx, ry
from .sweep import (
    SweepConfig,
    SweepResultRow,
    default_strength_grid,
    emit_csv,
    emit_json,
    post_probe_system_state,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BOUND_NAMES",
    "CalibrationProfile",
    "Circuit",
    "CouplingMap",
    "DEVICE_COUPLING",
    "DEVICE_LAYOUT",
    "DensityMatrix",
    "EdrInputs",
    "EdrReport",
    "ErrDistEstimate",
    "GateOp",
    "IndirectMeasurement",
    "JointDistribution",
    "KrausChannel",
    "METER",
    "NoiseModel",
    "PROBE_X",
    "PROBE_Z",
    "PovmPair",
    "QubitCalibration",
    "SYSTEM",
    "ShotRecord",
    "SweepConfig",
    "SweepResultRow",
    "angle_for_strength",
    "branciard_lhs",
    "build_edr_circuit",
    "build_povm",
    "classify",
    "commutator_bound",
    "compile_noise",
    "default_strength_grid",
    "depolarizing_channel",
    "derive_seed",
    "dump_profile",
    "effective_bound",
    "embed",
    "emit_csv",
    "emit_json",
    "estimate_from_distribution",
    "estimate_from_shots",
    "exact_disturbance",
    "exact_error",
    "exact_joint_distributions",
    "export_qasm",
    "heisenberg_lhs",
    "kron",
    "load_profile",
    "outcome_distribution",
    "ozawa_lhs",
    "parse_profile",
    "post_probe_system_state",
    "reference_input_state",
    "representative_profile",
    "run_circuit",
    "run_sweep",
    "rx",
    "ry",
    "sample_counts",
    "sample_shots",
    "standard_deviation",
    "strength_for_angle",
    "strong_branciard_lhs",
    "thermal_relaxation_channel",
    "tilde",
    "validate_against_coupling",
    "weak_valued_rms",
    "weak_valued_table",
]
