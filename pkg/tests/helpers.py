"""Independent reference implementations used as test oracles.

Everything here is literal numpy on explicit matrices, written without
the package's own linear-algebra helpers, so agreement between the two
paths is evidence rather than tautology.
"""

from __future__ import annotations

import math

import numpy as np

ID2 = np.eye(2, dtype=complex)
SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
CX = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ],
    dtype=complex,
)


def ry_mat(angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rx_mat(angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    return np.array([[c, -1.0j * s], [-1.0j * s, c]], dtype=complex)


def rand_density(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Random full-rank density matrix (Ginibre construction)."""
    g = rng.normal(size=(dim, dim)) + 1.0j * rng.normal(size=(dim, dim))
    mat = g @ g.conj().T
    return mat / np.trace(mat).real


def rand_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1.0j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _meter_extension(rho: np.ndarray, strength: float) -> np.ndarray:
    meter = ry_mat(math.acos(strength)) @ np.array([1.0, 0.0], dtype=complex)
    return np.kron(rho, np.outer(meter, meter.conj()))


def oracle_error(rho: np.ndarray, strength: float) -> float:
    """Root-mean-square discrepancy between meter reading and Z, by definition."""
    joint = _meter_extension(rho, strength)
    heisenberg_meter = CX.conj().T @ np.kron(ID2, SZ) @ CX
    noise_op = heisenberg_meter - np.kron(SZ, ID2)
    value = np.trace(joint @ noise_op @ noise_op).real
    return math.sqrt(max(value, 0.0))


def oracle_disturbance(rho: np.ndarray, strength: float) -> float:
    """Root-mean-square change of X across the interaction, by definition."""
    joint = _meter_extension(rho, strength)
    x_before = np.kron(SX, ID2)
    x_after = CX.conj().T @ x_before @ CX
    diff = x_after - x_before
    value = np.trace(joint @ diff @ diff).real
    return math.sqrt(max(value, 0.0))


def oracle_outcome_distribution(theta_w: float, theta: float) -> np.ndarray:
    """16 noiseless readout probabilities via one literal 16x16 simulation.

    Qubit order (system, probe_z, probe_x, meter), most significant first;
    readout bits packed as (z_i, x_i, z_f, x_f) = qubits (1, 2, 3, 0).
    """

    def chain(mats: list[np.ndarray]) -> np.ndarray:
        full = mats[0]
        for m in mats[1:]:
            full = np.kron(full, m)
        return full

    def on1(op: np.ndarray, qubit: int) -> np.ndarray:
        mats = [ID2] * 4
        mats[qubit] = op
        return chain(mats)

    def cnot_on(control: int, target: int) -> np.ndarray:
        p0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
        p1 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
        a = [ID2] * 4
        a[control] = p0
        b = [ID2] * 4
        b[control] = p1
        b[target] = SX
        return chain(a) + chain(b)

    hadamard = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)
    ket = np.zeros(16, dtype=complex)
    ket[0] = 1.0
    for mat in (
        on1(rx_mat(math.pi / 2.0), 0),
        on1(ry_mat(theta_w), 1),
        cnot_on(0, 1),
        on1(hadamard, 0),
        on1(ry_mat(theta_w), 2),
        cnot_on(0, 2),
        on1(hadamard, 0),
        on1(ry_mat(theta), 3),
        cnot_on(0, 3),
        on1(hadamard, 0),
    ):
        ket = mat @ ket
    amp2 = np.abs(ket) ** 2
    probs = np.zeros(16)
    for index in range(16):
        bits = [(index >> (3 - q)) & 1 for q in range(4)]
        packed = (bits[1] << 3) | (bits[2] << 2) | (bits[3] << 1) | bits[0]
        probs[packed] += amp2[index]
    return probs
