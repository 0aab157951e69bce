import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import helpers
from edrsim.circuit import angle_for_strength, build_edr_circuit
from edrsim.estimators import (
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

THETA_W = angle_for_strength(0.05)


def test_outcome_distribution_matches_independent_simulation():
    for s in (0.0, 0.3, 0.75, 1.0):
        theta = angle_for_strength(s)
        got = outcome_distribution(THETA_W, theta)
        want = helpers.oracle_outcome_distribution(THETA_W, theta)
        assert np.abs(got - want).max() < 1e-12
        assert abs(got.sum() - 1.0) < 1e-12
        assert np.all(got >= -1e-15)


def test_correlator_closed_forms():
    # <z_i z_f> = cos(theta_w) sin(theta_w) cos(theta); <x_i x_f> = cos(theta_w) sin(theta)
    for s in np.linspace(0.0, 1.0, 11):
        theta = angle_for_strength(s)
        dist_z, dist_x = exact_joint_distributions(THETA_W, theta)
        want_z = math.cos(THETA_W) * math.sin(THETA_W) * math.cos(theta)
        want_x = math.cos(THETA_W) * math.sin(theta)
        assert abs(dist_z.correlator() - want_z) < 1e-12
        assert abs(dist_x.correlator() - want_x) < 1e-12


def test_estimator_closed_forms():
    for s in np.linspace(0.0, 1.0, 11):
        theta = angle_for_strength(s)
        dist_z, dist_x = exact_joint_distributions(THETA_W, theta)
        est = estimate_from_distribution(dist_z, dist_x, THETA_W)
        assert abs(est.epsilon_sq - 2.0 * (1.0 - math.sin(THETA_W) * math.cos(theta))) < 1e-12
        assert abs(est.eta_sq - 2.0 * (1.0 - math.sin(theta))) < 1e-12
        assert est.method == "exact"


def test_frozen_point_values():
    theta = angle_for_strength(1.0)
    dist_z, dist_x = exact_joint_distributions(THETA_W, theta)
    assert abs(dist_z.correlator() - 0.04993746088859545) < 1e-14
    est = estimate_from_distribution(dist_z, dist_x, THETA_W)
    assert abs(est.epsilon_sq - 0.0025015644561822) < 1e-12
    assert abs(est.eta - math.sqrt(2.0)) < 1e-12


def test_joint_distribution_validation():
    labels = ("z_i", "z_f")
    good = {(1, 1): 0.5, (1, -1): 0.1, (-1, 1): 0.1, (-1, -1): 0.3}
    dist = JointDistribution(labels, good)
    assert abs(dist.correlator() - (0.5 + 0.3 - 0.2)) < 1e-12
    with pytest.raises(ValueError):
        JointDistribution(labels, {(1, 1): 1.0})
    with pytest.raises(ValueError):
        JointDistribution(labels, {**good, (1, 1): 0.9})
    with pytest.raises(ValueError):
        JointDistribution(labels, {**good, (1, 1): -0.2, (-1, -1): 1.0})


def test_run_circuit_noiseless_is_pure():
    circ = build_edr_circuit(THETA_W, angle_for_strength(0.4))
    state = run_circuit(circ)
    assert abs(state.purity() - 1.0) < 1e-12


def test_estimate_rejects_zero_probe_strength():
    dist_z, dist_x = exact_joint_distributions(THETA_W, 0.3)
    with pytest.raises(ValueError):
        estimate_from_distribution(dist_z, dist_x, math.pi / 2.0)


def test_derive_seed_is_stable_and_injective():
    seeds = {derive_seed(12345, i, r) for i in range(21) for r in range(10)}
    assert len(seeds) == 210
    assert derive_seed(12345, 3, 7) == derive_seed(12345, 3, 7)
    assert derive_seed(12345, 3, 7) != derive_seed(12345, 7, 3)
    assert derive_seed(1, 0) != derive_seed(2, 0)


def test_sample_counts_deterministic_and_conserving():
    probs = outcome_distribution(THETA_W, angle_for_strength(0.6))
    a = sample_counts(probs, 5000, 99)
    b = sample_counts(probs, 5000, 99)
    assert np.array_equal(a, b)
    assert a.sum() == 5000
    assert a.dtype == np.int64
    c = sample_counts(probs, 5000, 100)
    assert not np.array_equal(a, c)


def test_sample_counts_never_draws_zero_probability_outcomes():
    probs = np.zeros(16)
    probs[[0, 5, 10]] = (0.25, 0.5, 0.25)
    for seed in range(20):
        counts = sample_counts(probs, 1000, seed)
        assert counts.sum() == 1000
        drawn = set(np.nonzero(counts)[0])
        assert drawn <= {0, 5, 10}


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_sampled_frequencies_form_valid_record(seed):
    record = sample_shots(THETA_W, angle_for_strength(0.5), 2000, seed)
    assert record.total_shots == 2000
    freq = record.frequencies()
    assert abs(freq.sum() - 1.0) < 1e-12
    for pair in ("z", "x"):
        joint = record.joint(pair)
        assert abs(sum(joint.probs.values()) - 1.0) < 1e-12


def test_shot_record_validation():
    with pytest.raises(ValueError):
        ShotRecord(np.zeros(8, dtype=np.int64), 0, 1)
    counts = np.zeros(16, dtype=np.int64)
    counts[0] = 5
    with pytest.raises(ValueError):
        ShotRecord(counts, 6, 1)
    counts[1] = -1
    with pytest.raises(ValueError):
        ShotRecord(counts, 4, 1)


def test_estimate_from_shots_converges():
    record = sample_shots(
        THETA_W, angle_for_strength(0.5), 4_000_000, derive_seed(77, 0, 0)
    )
    est = estimate_from_shots(record, THETA_W)
    exact_z, exact_x = exact_joint_distributions(THETA_W, angle_for_strength(0.5))
    want = estimate_from_distribution(exact_z, exact_x, THETA_W)
    # weak-value amplification leaves ~20x sampling noise on the squares
    assert abs(est.epsilon_sq - want.epsilon_sq) < 0.1
    assert abs(est.eta_sq - want.eta_sq) < 0.1
    assert est.method == "sampled"
    assert est.shots == 4_000_000


def test_weak_valued_table_sums_to_one_and_matches_rms():
    for s in (0.2, 0.7):
        theta = angle_for_strength(s)
        dist_z, dist_x = exact_joint_distributions(THETA_W, theta)
        table = weak_valued_table(dist_z, 0.05)
        assert abs(sum(table.values()) - 1.0) < 1e-12
        est = estimate_from_distribution(dist_z, dist_x, THETA_W)
        assert abs(weak_valued_rms(dist_z, 0.05) - est.epsilon_sq) < 1e-12
        assert abs(weak_valued_rms(dist_x, 0.05) - est.eta_sq) < 1e-12


def test_weak_valued_table_admits_negative_entries():
    # correlator greater than the probe strength forces quasi-probability < 0
    dist = JointDistribution(
        ("z_i", "z_f"), {(1, 1): 0.6, (1, -1): 0.0, (-1, 1): 0.0, (-1, -1): 0.4}
    )
    table = weak_valued_table(dist, 0.05)
    assert min(table.values()) < 0.0
    assert abs(sum(table.values()) - 1.0) < 1e-12
