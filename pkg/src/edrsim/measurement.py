"""Operator-level model of the variable-strength indirect measurement.

The main measurement couples the system to a fresh meter qubit through a
CNOT and reads the meter in the computational basis.  Preparing the
meter with a y-rotation of angle a induces the two-outcome POVM

    E(+/-) = (I +/- s Z) / 2,        s = cos(a),

on the system, which interpolates between no measurement (s = 0) and a
projective Z measurement (s = 1).

``exact_error`` and ``exact_disturbance`` evaluate the root-mean-square
error and disturbance of that apparatus from the operator definitions

    error^2       = < (U^ (I x M) U - A x I)^2 >
    disturbance^2 = < (U^ (B x I) U - B x I)^2 >

on the system-meter composite, with A = Z measured, B = X disturbed,
U the CNOT and M the meter's Z readout.  For this apparatus both reduce
to closed forms independent of the system state:

    error        = sqrt(2 (1 - s))
    disturbance  = sqrt(2 (1 - sqrt(1 - s^2)))
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qsim
from .circuit import angle_for_strength
from .qsim import ATOL, CNOT, I2, X, Z, DensityMatrix

# Standard input state: the -1 eigenstate of Y, written with exact dyadic
# entries so that expectation values on it stay exact in floating point.
KET_R = np.array([1.0, -1.0j]) / np.sqrt(2.0)
_RHO_R = np.array([[0.5, 0.5j], [-0.5j, 0.5]], dtype=complex)


def reference_input_state() -> DensityMatrix:
    """|R><R| with R = (|0> - i|1>)/sqrt(2); maximises the commutator bound."""
    return DensityMatrix(1, _RHO_R.copy())


def _clamped_sqrt(value: float, tol: float = ATOL) -> float:
    if value < -tol:
        raise ValueError(f"negative squared quantity {value} beyond tolerance")
    return math.sqrt(max(value, 0.0))


@dataclass(frozen=True)
class PovmPair:
    """The two POVM elements of the strength-s meter readout."""

    plus: np.ndarray
    minus: np.ndarray
    strength: float

    def __post_init__(self) -> None:
        for name, el in (("plus", self.plus), ("minus", self.minus)):
            el = np.asarray(el, dtype=complex)
            object.__setattr__(self, name, el)
            if np.max(np.abs(el - el.conj().T)) > ATOL:
                raise ValueError(f"POVM element {name} is not Hermitian")
            if float(np.linalg.eigvalsh(el)[0]) < -ATOL:
                raise ValueError(f"POVM element {name} is not positive semidefinite")
        if np.max(np.abs(self.plus + self.minus - np.eye(self.plus.shape[0]))) > ATOL:
            raise ValueError("POVM elements do not sum to the identity")

    def probabilities(self, state: DensityMatrix) -> tuple[float, float]:
        p_plus = float(np.trace(state.mat @ self.plus).real)
        p_minus = float(np.trace(state.mat @ self.minus).real)
        return p_plus, p_minus


def build_povm(strength: float) -> PovmPair:
    """POVM pair (I +/- s Z)/2 for measurement strength s in [0, 1]."""
    if not 0.0 <= strength <= 1.0:
        raise ValueError(f"strength {strength} outside [0, 1]")
    return PovmPair((I2 + strength * Z) / 2.0, (I2 - strength * Z) / 2.0, strength)


@dataclass(frozen=True)
class IndirectMeasurement:
    """System observable measured through a meter via a fixed interaction.

    The composite register is (system, meter), system most significant.
    ``meter_init_angle`` is the y-rotation preparing the meter from |0>.
    """

    system_observable: np.ndarray
    meter_observable: np.ndarray
    interaction: np.ndarray
    meter_init_angle: float

    def __post_init__(self) -> None:
        for name in ("system_observable", "meter_observable", "interaction"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=complex))
        for name, obs in (
            ("system_observable", self.system_observable),
            ("meter_observable", self.meter_observable),
        ):
            if np.max(np.abs(obs - obs.conj().T)) > ATOL:
                raise ValueError(f"{name} is not Hermitian")
            eig = np.linalg.eigvalsh(obs)
            if abs(eig[0] + 1.0) > 1e-10 or abs(eig[-1] - 1.0) > 1e-10:
                raise ValueError(f"{name} must have eigenvalues -1 and +1")
        dev = np.max(np.abs(self.interaction.conj().T @ self.interaction - np.eye(4)))
        if dev > ATOL:
            raise ValueError(f"interaction is not unitary (deviation {dev:.3e})")

    @classmethod
    def z_through_meter(cls, strength: float) -> "IndirectMeasurement":
        """The CNOT-coupled Z measurement at the given strength."""
        return cls(Z, Z, CNOT, angle_for_strength(strength))

    def composite(self, system_state: DensityMatrix) -> DensityMatrix:
        if system_state.num_qubits != 1:
            raise ValueError("system state must be a single qubit")
        meter_ket = qsim.ry(self.meter_init_angle) @ np.array([1.0, 0.0], dtype=complex)
        return DensityMatrix.product(system_state, DensityMatrix.from_ket(meter_ket))

    def error(self, system_state: DensityMatrix) -> float:
        """Root-mean-square error of the apparatus on the given input."""
        u = self.interaction
        heis = u.conj().T @ qsim.embed(self.meter_observable, [1], 2) @ u
        noise_op = heis - qsim.embed(self.system_observable, [0], 2)
        value = self.composite(system_state).expectation(noise_op @ noise_op)
        return _clamped_sqrt(value)

    def disturbance(self, system_state: DensityMatrix, observable: np.ndarray) -> float:
        """Root-mean-square disturbance the apparatus inflicts on ``observable``."""
        observable = np.asarray(observable, dtype=complex)
        if np.max(np.abs(observable - observable.conj().T)) > ATOL:
            raise ValueError("observable is not Hermitian")
        u = self.interaction
        before = qsim.embed(observable, [0], 2)
        after = u.conj().T @ before @ u
        diff = after - before
        value = self.composite(system_state).expectation(diff @ diff)
        return _clamped_sqrt(value)


def exact_error(system_state: DensityMatrix, strength: float) -> float:
    """Operator-definition error of the strength-s Z measurement."""
    return IndirectMeasurement.z_through_meter(strength).error(system_state)


def exact_disturbance(system_state: DensityMatrix, strength: float) -> float:
    """Operator-definition disturbance of X under the strength-s Z measurement."""
    return IndirectMeasurement.z_through_meter(strength).disturbance(system_state, X)


def standard_deviation(state: DensityMatrix, obs: np.ndarray) -> float:
    """sqrt(<obs^2> - <obs>^2) on the given state."""
    obs = np.asarray(obs, dtype=complex)
    mean = state.expectation(obs)
    second = state.expectation(obs @ obs)
    return _clamped_sqrt(second - mean * mean)


def commutator_bound(state: DensityMatrix, a: np.ndarray, b: np.ndarray) -> float:
    """|<[A, B]>| / 2, the right-hand side shared by the uncertainty relations."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    for name, obs in (("a", a), ("b", b)):
        if np.max(np.abs(obs - obs.conj().T)) > ATOL:
            raise ValueError(f"observable {name} is not Hermitian")
    value = np.trace(state.mat @ (a @ b - b @ a))
    return abs(value) / 2.0
