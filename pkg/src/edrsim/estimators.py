"""Weak-valued error and disturbance estimation from joint outcome statistics.

A probe of strength cos(theta_w) attenuates the correlation between its
record a_i and the later readout a_f.  Inverting that attenuation on the
measured joint distribution yields the weak-valued joint probabilities

    P_wv(a_i, a_f) = (1 + a_i a_f E / cos(theta_w)) / 4,

with E the measured correlator; the weak-valued root-mean-square spread

    sum (a_i - a_f)^2 P_wv(a_i, a_f) = 2 (1 - E / cos(theta_w))

then estimates the squared error (z records) or squared disturbance
(x records) of the main measurement.  Squared estimates can go slightly
negative under sampling noise; they are reported raw alongside estimates
clamped at zero before the square root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, build_edr_circuit
from .noise import NoiseModel, apply_readout_confusion
from .qsim import DensityMatrix

OUTCOMES = (1, -1)  # bit 0 reads +1, bit 1 reads -1


@dataclass(frozen=True)
class JointDistribution:
    """Joint probabilities of two +/-1 outcomes, keyed (early, late)."""

    labels: tuple[str, str]
    probs: dict[tuple[int, int], float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        expected = {(a, b) for a in OUTCOMES for b in OUTCOMES}
        if set(self.probs) != expected:
            raise ValueError(f"outcome keys must be {sorted(expected)}")
        cleaned = {}
        for key, p in self.probs.items():
            if p < -1e-12:
                raise ValueError(f"negative probability {p} at {key}")
            cleaned[key] = max(float(p), 0.0)
        total = sum(cleaned.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "probs", cleaned)

    def correlator(self) -> float:
        """E[a_i * a_f] under this distribution."""
        return sum(a * b * p for (a, b), p in self.probs.items())


def run_circuit(circuit: Circuit, noise: NoiseModel | None = None) -> DensityMatrix:
    """Evolve |0...0> through the circuit, interleaving compiled noise channels."""
    state = DensityMatrix.ground(circuit.num_qubits)
    for op in circuit.ops:
        state = state.apply_unitary(op.matrix(), op.qubits)
        if noise is not None:
            for channel, targets in noise.channels_after(op, circuit.num_qubits):
                state = state.apply_channel(channel, targets)
    return state


def outcome_distribution(
    theta_w: float, theta: float, noise: NoiseModel | None = None
) -> np.ndarray:
    """The 16 readout probabilities, bits ordered (z_i, x_i, z_f, x_f).

    Includes readout confusion when a noise model is given, so this is
    exactly the distribution the sampler draws from.
    """
    circuit = build_edr_circuit(theta_w, theta)
    state = run_circuit(circuit, noise)
    probs = state.probabilities(circuit.measured_qubits)
    if noise is not None:
        probs = apply_readout_confusion(probs, noise, circuit.measured_qubits)
    return probs


def _pair_marginal(
    probs: np.ndarray, pos_early: int, pos_late: int, labels: tuple[str, str]
) -> JointDistribution:
    table = np.asarray(probs, dtype=float).reshape((2, 2, 2, 2))
    other = tuple(a for a in range(4) if a not in (pos_early, pos_late))
    pair = table.sum(axis=other)
    if pos_early > pos_late:
        pair = pair.T
    out = {
        (OUTCOMES[i], OUTCOMES[j]): float(pair[i, j]) for i in range(2) for j in range(2)
    }
    return JointDistribution(labels, out)


def exact_joint_distributions(
    theta_w: float, theta: float, noise: NoiseModel | None = None
) -> tuple[JointDistribution, JointDistribution]:
    """The (z_i, z_f) and (x_i, x_f) marginals of the full outcome distribution."""
    probs = outcome_distribution(theta_w, theta, noise)
    dist_z = _pair_marginal(probs, 0, 2, ("z_i", "z_f"))
    dist_x = _pair_marginal(probs, 1, 3, ("x_i", "x_f"))
    return dist_z, dist_x


@dataclass(frozen=True)
class ShotRecord:
    """Counts of the 16 joint outcomes, index bits ordered (z_i, x_i, z_f, x_f)."""

    counts: np.ndarray
    total_shots: int
    seed: int

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64)
        object.__setattr__(self, "counts", counts)
        if counts.shape != (16,):
            raise ValueError(f"counts must have 16 entries, got shape {counts.shape}")
        if np.any(counts < 0):
            raise ValueError("negative count")
        if int(counts.sum()) != self.total_shots:
            raise ValueError(f"counts sum {counts.sum()} != total_shots {self.total_shots}")

    def frequencies(self) -> np.ndarray:
        return self.counts / float(self.total_shots)

    def joint(self, pair: str) -> JointDistribution:
        """Empirical (z_i, z_f) or (x_i, x_f) marginal for pair in {"z", "x"}."""
        if pair == "z":
            return _pair_marginal(self.frequencies(), 0, 2, ("z_i", "z_f"))
        if pair == "x":
            return _pair_marginal(self.frequencies(), 1, 3, ("x_i", "x_f"))
        raise ValueError(f"pair must be 'z' or 'x', got {pair!r}")


def derive_seed(base_seed: int, *indices: int) -> int:
    """Deterministic per-task seed from a base seed and position indices."""
    ss = np.random.SeedSequence([int(base_seed), *[int(i) for i in indices]])
    return int(ss.generate_state(1, np.uint64)[0])


def sample_counts(probs: np.ndarray, shots: int, seed: int) -> np.ndarray:
    """Draw i.i.d. outcomes by inverse transform over the outcome index.

    Outcomes with exactly zero probability are never produced.
    """
    probs = np.asarray(probs, dtype=float)
    if shots < 1:
        raise ValueError(f"shots must be positive, got {shots}")
    if np.any(probs < -1e-12):
        raise ValueError("negative probability in outcome distribution")
    probs = np.clip(probs, 0.0, None)
    cdf = np.cumsum(probs / probs.sum())
    cdf[-1] = 1.0
    rng = np.random.default_rng(int(seed))
    draws = np.searchsorted(cdf, rng.random(shots), side="right")
    return np.bincount(draws, minlength=probs.size).astype(np.int64)


def sample_shots(
    theta_w: float,
    theta: float,
    shots: int,
    seed: int,
    noise: NoiseModel | None = None,
) -> ShotRecord:
    """Sample the experiment's joint readout ``shots`` times, deterministically in ``seed``."""
    probs = outcome_distribution(theta_w, theta, noise)
    return ShotRecord(sample_counts(probs, shots, seed), int(shots), int(seed))


@dataclass(frozen=True)
class ErrDistEstimate:
    """Weak-valued estimates; *_sq carry the raw, possibly negative squares."""

    epsilon: float
    eta: float
    epsilon_sq: float
    eta_sq: float
    method: str
    shots: int | None = None

    def __post_init__(self) -> None:
        if self.method not in ("exact", "sampled"):
            raise ValueError(f"method must be 'exact' or 'sampled', got {self.method!r}")


def estimate_from_distribution(
    dist_z: JointDistribution,
    dist_x: JointDistribution,
    theta_w: float,
    *,
    method: str = "exact",
    shots: int | None = None,
) -> ErrDistEstimate:
    """Error/disturbance estimates from the two pair marginals at probe angle theta_w."""
    cw = math.cos(theta_w)
    if cw < 1e-12:  # the 1/cos normalisation is meaningless at zero strength
        raise ValueError(f"probe strength cos(theta_w) = {cw} is too small to invert")
    eps_sq = 2.0 * (1.0 - dist_z.correlator() / cw)
    eta_sq = 2.0 * (1.0 - dist_x.correlator() / cw)
    return ErrDistEstimate(
        epsilon=math.sqrt(max(eps_sq, 0.0)),
        eta=math.sqrt(max(eta_sq, 0.0)),
        epsilon_sq=eps_sq,
        eta_sq=eta_sq,
        method=method,
        shots=shots,
    )


def estimate_from_shots(record: ShotRecord, theta_w: float) -> ErrDistEstimate:
    return estimate_from_distribution(
        record.joint("z"),
        record.joint("x"),
        theta_w,
        method="sampled",
        shots=record.total_shots,
    )


def weak_valued_table(
    dist: JointDistribution, strength: float
) -> dict[tuple[int, int], float]:
    """Reconstructed weak-valued joint probabilities; sums to 1 by construction.

    Individual entries may be negative; that is a feature of weak values,
    not an error.
    """
    if strength <= 0.0:
        raise ValueError(f"probe strength {strength} must be positive")
    corr = dist.correlator()
    return {
        (a, b): (1.0 + a * b * corr / strength) / 4.0 for a in OUTCOMES for b in OUTCOMES
    }


def weak_valued_rms(dist: JointDistribution, strength: float) -> float:
    """Weak-valued root-mean-square spread sum (a_i - a_f)^2 P_wv, reported squared."""
    table = weak_valued_table(dist, strength)
    return sum((a - b) ** 2 * p for (a, b), p in table.items())
