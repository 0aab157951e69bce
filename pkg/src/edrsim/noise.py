"""Parametric hardware-style noise: calibration profiles and compiled channels.

Three effects are modelled, composed after every gate of a circuit:

* depolarizing noise on the gate's qubits, with probability derived from
  the calibrated average gate error as p = error * d / (d - 1) for gate
  dimension d (so a single-qubit error e gives p = 2e, a CNOT error e
  gives p = 4e/3);
* thermal relaxation over the gate duration: amplitude damping with
  gamma = 1 - exp(-t/T1) composed with enough pure dephasing that the
  total coherence decay matches exp(-t/T2);
* by default the same relaxation acts on every idle qubit while a gate
  runs elsewhere (disable with ``compile_noise(..., include_idle=False)``).

Readout is modelled as a per-qubit confusion matrix applied to outcome
probabilities before sampling:

    [[1 - e01, e10], [e01, 1 - e10]]

with e01 = P(read 1 | prepared 0) and e10 = P(read 0 | prepared 1).

Calibration file schema (YAML, flat keys), version 1::

    schema_version: 1
    q0_t1_us: 90.0             # relaxation time, microseconds
    q0_t2_us: 70.0             # dephasing time, microseconds; t2 <= 2*t1
    q0_readout_error_01: 0.02
    q0_readout_error_10: 0.03
    ... further qubits q1_, q2_, ... (contiguous from q0) ...
    single_qubit_gate_error: 0.0004
    cnot_error: 0.012
    single_qubit_gate_duration_ns: 35.0
    cnot_duration_ns: 300.0
    readout_duration_ns: 700.0

Any omitted field takes its noiseless default (t1 = t2 = .inf, zero
errors) or the duration defaults above.  ``readout_duration_ns`` is
recorded for completeness but does not enter the compiled channels;
confusion matrices as calibrated already include decay during readout.
Unknown keys are rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np
import yaml

from .circuit import GateOp
from .qsim import I2, X, Y, Z, KrausChannel

SCHEMA_VERSION = 1

_QUBIT_FIELDS = ("t1_us", "t2_us", "readout_error_01", "readout_error_10")
_GATE_FIELD_DEFAULTS = {
    "single_qubit_gate_error": 0.0,
    "cnot_error": 0.0,
    "single_qubit_gate_duration_ns": 35.0,
    "cnot_duration_ns": 300.0,
    "readout_duration_ns": 700.0,
}


@dataclass(frozen=True)
class QubitCalibration:
    t1_us: float = math.inf
    t2_us: float = math.inf
    readout_error_01: float = 0.0
    readout_error_10: float = 0.0

    def __post_init__(self) -> None:
        if not self.t1_us > 0.0 or not self.t2_us > 0.0:
            raise ValueError(f"t1_us/t2_us must be positive, got {self.t1_us}/{self.t2_us}")
        if self.t2_us > 2.0 * self.t1_us:
            raise ValueError(
                f"t2_us may not exceed 2*t1_us (got {self.t2_us} > 2*{self.t1_us})"
            )
        for name in ("readout_error_01", "readout_error_10"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} = {p} outside [0, 1]")


@dataclass(frozen=True)
class CalibrationProfile:
    qubits: tuple[QubitCalibration, ...]
    single_qubit_gate_error: float = 0.0
    cnot_error: float = 0.0
    single_qubit_gate_duration_ns: float = 35.0
    cnot_duration_ns: float = 300.0
    readout_duration_ns: float = 700.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "qubits", tuple(self.qubits))
        if not self.qubits:
            raise ValueError("profile needs at least one qubit")
        for name in ("single_qubit_gate_error", "cnot_error"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} = {p} outside [0, 1]")
        for name in (
            "single_qubit_gate_duration_ns",
            "cnot_duration_ns",
            "readout_duration_ns",
        ):
            d = getattr(self, name)
            if not d > 0.0 or not math.isfinite(d):
                raise ValueError(f"{name} = {d} must be positive and finite")

    @property
    def num_qubits(self) -> int:
        return len(self.qubits)


def _parse_float(key: str, value: object) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{key}: expected a number, got {value!r}")
    return float(value)


def parse_profile(text: str) -> CalibrationProfile:
    """Parse a schema-version-1 calibration document; see the module docstring."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ValueError(f"calibration document does not parse: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("calibration document must be a key-value mapping")
    doc = dict(doc)
    version = doc.pop("schema_version", None)
    if version != SCHEMA_VERSION:
        raise ValueError(f"schema_version must be {SCHEMA_VERSION}, got {version!r}")

    per_qubit: dict[int, dict[str, float]] = {}
    gate_values: dict[str, float] = {}
    for key, value in doc.items():
        if isinstance(key, str) and key.startswith("q") and "_" in key:
            head, _, rest = key.partition("_")
            if head[1:].isdigit() and rest in _QUBIT_FIELDS:
                per_qubit.setdefault(int(head[1:]), {})[rest] = _parse_float(key, value)
                continue
        if key in _GATE_FIELD_DEFAULTS:
            gate_values[key] = _parse_float(key, value)
            continue
        raise ValueError(f"unknown calibration key {key!r}")

    if per_qubit:
        count = max(per_qubit) + 1
        if sorted(per_qubit) != list(range(count)):
            raise ValueError(f"qubit keys must be contiguous from q0, got q{sorted(per_qubit)}")
    else:
        count = 1
    try:
        qubits = tuple(QubitCalibration(**per_qubit.get(i, {})) for i in range(count))
        return CalibrationProfile(qubits, **gate_values)
    except ValueError:
        raise
    except TypeError as exc:
        raise ValueError(str(exc)) from exc


def load_profile(path: str | Path) -> CalibrationProfile:
    return parse_profile(Path(path).read_text(encoding="utf-8"))


def dump_profile(profile: CalibrationProfile) -> str:
    """Canonical document text; ``parse_profile`` round-trips it exactly."""
    lines = [f"schema_version: {SCHEMA_VERSION}"]
    for i, qubit in enumerate(profile.qubits):
        for name in _QUBIT_FIELDS:
            lines.append(f"q{i}_{name}: {_yaml_float(getattr(qubit, name))}")
    for name in _GATE_FIELD_DEFAULTS:
        lines.append(f"{name}: {_yaml_float(getattr(profile, name))}")
    return "\n".join(lines) + "\n"


def _yaml_float(value: float) -> str:
    if math.isinf(value):
        return ".inf"
    return repr(value)


def representative_profile() -> CalibrationProfile:
    """The packaged illustrative four-qubit profile (see data/representative_profile.yaml)."""
    text = resources.files("edrsim").joinpath("data/representative_profile.yaml").read_text(
        encoding="utf-8"
    )
    return parse_profile(text)


def depolarizing_channel(error: float, num_qubits: int) -> KrausChannel | None:
    """Depolarizing channel for an average gate error; None when exactly noiseless."""
    if error < 0.0:
        raise ValueError(f"gate error {error} negative")
    if error == 0.0:
        return None
    dim = 2**num_qubits
    p = min(error * dim / (dim - 1.0), 1.0)
    paulis = [I2, X, Y, Z]
    ops = []
    if num_qubits == 1:
        terms = [(m,) for m in paulis]
    elif num_qubits == 2:
        terms = [(a, b) for a in paulis for b in paulis]
    else:
        raise ValueError("depolarizing channel supports one or two qubits")
    for k, term in enumerate(terms):
        mat = term[0]
        for extra in term[1:]:
            mat = np.kron(mat, extra)
        weight = 1.0 - p + p / dim**2 if k == 0 else p / dim**2
        ops.append(math.sqrt(weight) * mat)
    return KrausChannel(tuple(ops))


def thermal_relaxation_channel(
    t1_us: float, t2_us: float, duration_ns: float
) -> KrausChannel | None:
    """Amplitude damping plus pure dephasing over a gate duration; None if identity.

    The damping parameter is gamma = 1 - exp(-t/T1); the extra dephasing is
    chosen so the combined off-diagonal decay equals exp(-t/T2).
    """
    if duration_ns < 0.0:
        raise ValueError(f"duration {duration_ns} negative")
    t_us = duration_ns / 1000.0
    gamma = -math.expm1(-t_us / t1_us) if math.isfinite(t1_us) else 0.0
    # residual coherence after removing the sqrt(1-gamma) damping contribution
    rate = (1.0 / t2_us if math.isfinite(t2_us) else 0.0) - (
        1.0 / (2.0 * t1_us) if math.isfinite(t1_us) else 0.0
    )
    coherence = math.exp(-t_us * rate)
    if gamma == 0.0 and coherence == 1.0:
        return None
    damping = (
        np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - gamma)]], dtype=complex),
        np.array([[0.0, math.sqrt(gamma)], [0.0, 0.0]], dtype=complex),
    )
    dephasing = (
        math.sqrt((1.0 + coherence) / 2.0) * I2,
        math.sqrt((1.0 - coherence) / 2.0) * Z,
    )
    ops = tuple(d @ a for d in dephasing for a in damping)
    return KrausChannel(ops)


def confusion_matrix(qubit: QubitCalibration) -> np.ndarray:
    """Column-stochastic map from true to read bit probabilities."""
    e01, e10 = qubit.readout_error_01, qubit.readout_error_10
    return np.array([[1.0 - e01, e10], [e01, 1.0 - e10]])


@dataclass(frozen=True)
class NoiseModel:
    """Channels compiled from a profile, keyed by gate class and qubit."""

    profile: CalibrationProfile
    include_idle: bool
    gate_depolarizing: dict[str, KrausChannel | None]
    relaxation: dict[tuple[int, str], KrausChannel | None]
    confusion: tuple[np.ndarray, ...]

    def channels_after(
        self, op: GateOp, num_qubits: int
    ) -> list[tuple[KrausChannel, tuple[int, ...]]]:
        """Noise channels to apply after ``op``, as (channel, targets) pairs."""
        if num_qubits > self.profile.num_qubits:
            raise ValueError(
                f"profile covers {self.profile.num_qubits} qubit(s), circuit has {num_qubits}"
            )
        gate_class = "cnot" if op.kind == "cnot" else "single"
        out: list[tuple[KrausChannel, tuple[int, ...]]] = []
        depol = self.gate_depolarizing[gate_class]
        if depol is not None:
            out.append((depol, op.qubits))
        affected = range(num_qubits) if self.include_idle else op.qubits
        for q in affected:
            relax = self.relaxation[(q, gate_class)]
            if relax is not None:
                out.append((relax, (q,)))
        return out


def compile_noise(profile: CalibrationProfile, *, include_idle: bool = True) -> NoiseModel:
    """Precompute every channel the model can emit for the given profile."""
    gate_depolarizing = {
        "single": depolarizing_channel(profile.single_qubit_gate_error, 1),
        "cnot": depolarizing_channel(profile.cnot_error, 2),
    }
    durations = {
        "single": profile.single_qubit_gate_duration_ns,
        "cnot": profile.cnot_duration_ns,
    }
    relaxation = {
        (q, gate_class): thermal_relaxation_channel(qubit.t1_us, qubit.t2_us, duration)
        for q, qubit in enumerate(profile.qubits)
        for gate_class, duration in durations.items()
    }
    confusion = tuple(confusion_matrix(qubit) for qubit in profile.qubits)
    return NoiseModel(profile, include_idle, gate_depolarizing, relaxation, confusion)


def apply_readout_confusion(
    probs: np.ndarray, model: NoiseModel, qubits: Sequence[int]
) -> np.ndarray:
    """Push an outcome distribution through each measured qubit's confusion matrix.

    ``probs`` is indexed by bit pattern, most significant bit first, with
    ``qubits`` naming the physical qubit behind each bit position.
    """
    qubits = tuple(qubits)
    k = len(qubits)
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (2**k,):
        raise ValueError(f"expected {2**k} outcome probabilities, got shape {probs.shape}")
    table = probs.reshape((2,) * k)
    for axis, q in enumerate(qubits):
        mat = model.confusion[q]
        table = np.moveaxis(np.tensordot(mat, table, axes=([1], [axis])), 0, axis)
    return table.reshape(2**k)
