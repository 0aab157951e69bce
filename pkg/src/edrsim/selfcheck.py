"""Fast internal consistency battery behind ``edrsim check``.

Each check is independent, takes well under a second, and raises on
failure; ``run_checks`` collects pass/fail results so the CLI can print
one line per check and exit nonzero if anything broke.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .bounds import EdrInputs, classify, effective_bound
from .circuit import angle_for_strength, build_edr_circuit
from .estimators import (
    derive_seed,
    estimate_from_distribution,
    exact_joint_distributions,
    outcome_distribution,
    sample_counts,
)
from .measurement import (
    IndirectMeasurement,
    build_povm,
    commutator_bound,
    exact_disturbance,
    exact_error,
    reference_input_state,
)
from .noise import compile_noise, confusion_matrix, representative_profile
from .qsim import ATOL, CNOT, DensityMatrix, X, Z, ry


def _random_state(rng: np.random.Generator) -> DensityMatrix:
    g = rng.normal(size=(2, 4)) + 1j * rng.normal(size=(2, 4))
    mat = g @ g.conj().T
    return DensityMatrix(1, mat / np.trace(mat).real)


def _check_unitaries() -> None:
    for angle in np.linspace(0.0, math.pi, 7):
        for gate in (ry(angle),):
            residue = np.abs(gate.conj().T @ gate - np.eye(2)).max()
            assert residue < ATOL, f"ry({angle}) not unitary: {residue}"
    assert np.array_equal(CNOT @ CNOT, np.eye(4))


def _check_closed_forms() -> None:
    state = reference_input_state()
    for s in np.linspace(0.0, 1.0, 21):
        eps = exact_error(state, s)
        eta = exact_disturbance(state, s)
        assert abs(eps - math.sqrt(2.0 * (1.0 - s))) < 1e-10, f"error at s={s}"
        want_eta = math.sqrt(2.0 * (1.0 - math.sqrt(1.0 - s * s)))
        assert abs(eta - want_eta) < 1e-10, f"disturbance at s={s}"


def _check_meter_statistics() -> None:
    rng = np.random.default_rng(7)
    for s in (0.0, 0.3, 1.0):
        meas = IndirectMeasurement.z_through_meter(s)
        povm = build_povm(s)
        for _ in range(5):
            state = _random_state(rng)
            joint = meas.composite(state).apply_unitary(meas.interaction, (0, 1))
            probs = joint.probabilities([1])
            want = povm.probabilities(state)
            assert np.abs(probs - np.asarray(want)).max() < 1e-10


def _check_weak_value_bias() -> None:
    theta_w = angle_for_strength(0.05)
    budget = 2.0 * (1.0 - math.sin(theta_w)) + 1e-9
    state = reference_input_state()
    for s in np.linspace(0.0, 1.0, 11):
        dist_z, dist_x = exact_joint_distributions(theta_w, angle_for_strength(s))
        est = estimate_from_distribution(dist_z, dist_x, theta_w)
        eps, eta = exact_error(state, s), exact_disturbance(state, s)
        assert abs(est.epsilon_sq - eps * eps) <= budget
        assert abs(est.eta_sq - eta * eta) <= budget


def _check_ideal_saturation() -> None:
    state = reference_input_state()
    for s in np.linspace(0.0, 1.0, 9):
        inputs = EdrInputs(exact_error(state, s), exact_disturbance(state, s), 1.0, 1.0, 1.0)
        report = classify(inputs)
        assert abs(report.strong_branciard_lhs - 1.0) < 1e-9, f"saturation at s={s}"
        assert report.satisfied["ozawa"] and report.satisfied["branciard"]


def _check_effective_bound() -> None:
    assert abs(effective_bound(0.0)) < 1e-12
    assert abs(effective_bound(math.pi / 2) - 1.0) < 1e-12
    weak = effective_bound(angle_for_strength(0.05))
    assert abs(weak - 0.99501246882793) < 5e-12, weak
    state = reference_input_state()
    assert commutator_bound(state, Z, X) == 1.0


def _check_sampling_determinism() -> None:
    probs = outcome_distribution(angle_for_strength(0.05), angle_for_strength(0.5))
    seed = derive_seed(12345, 3, 0)
    first = sample_counts(probs, 2000, seed)
    second = sample_counts(probs, 2000, seed)
    assert np.array_equal(first, second)
    other = sample_counts(probs, 2000, derive_seed(12345, 3, 1))
    assert not np.array_equal(first, other)
    assert first.sum() == 2000
    assert np.all(first[np.asarray(probs) <= 0.0] == 0)


def _check_representative_profile() -> None:
    profile = representative_profile()
    model = compile_noise(profile)
    assert model.profile.num_qubits == 4
    circuit = build_edr_circuit(angle_for_strength(0.05), angle_for_strength(0.5))
    for op in circuit.ops:
        assert model.channels_after(op, circuit.num_qubits)
    for qubit in range(4):
        cols = confusion_matrix(profile.qubits[qubit]).sum(axis=0)
        assert np.abs(cols - 1.0).max() < 1e-12


CHECKS: tuple[tuple[str, Callable[[], None]], ...] = (
    ("gate matrices are unitary", _check_unitaries),
    ("closed-form error and disturbance curves", _check_closed_forms),
    ("meter statistics match the induced two-outcome model", _check_meter_statistics),
    ("weak-valued estimates track operator values", _check_weak_value_bias),
    ("strengthened relation saturates on the ideal curve", _check_ideal_saturation),
    ("probe-adjusted bound and commutator endpoints", _check_effective_bound),
    ("sampling is deterministic in the seed", _check_sampling_determinism),
    ("packaged calibration profile compiles", _check_representative_profile),
)


def run_checks() -> list[tuple[str, bool, str]]:
    """(name, passed, detail) for every check; detail is empty on success."""
    results = []
    for name, check in CHECKS:
        try:
            check()
        except Exception as exc:  # report, never crash the battery
            results.append((name, False, f"{type(exc).__name__}: {exc}"))
        else:
            results.append((name, True, ""))
    return results
