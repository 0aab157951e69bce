"""The four error-disturbance trade-off relations and their classification.

All left-hand sides are compared against the commutator bound c with a
fixed tolerance: a relation counts as satisfied when lhs >= c - 1e-9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SATISFIED_TOL = 1e-9

BOUND_NAMES = ("heisenberg", "ozawa", "branciard", "strong_branciard")


@dataclass(frozen=True)
class EdrInputs:
    """Error, disturbance, the two standard deviations, and the commutator bound."""

    epsilon: float
    eta: float
    sigma_a: float = 1.0
    sigma_b: float = 1.0
    c: float = 1.0

    def __post_init__(self) -> None:
        for name in ("epsilon", "eta", "sigma_a", "sigma_b"):
            v = getattr(self, name)
            if not v >= 0.0:
                raise ValueError(f"{name} = {v} must be nonnegative")
        if not 0.0 <= self.c <= 1.0:
            raise ValueError(f"c = {self.c} outside [0, 1]")
        if self.sigma_a * self.sigma_b < self.c - 1e-12:
            raise ValueError(
                f"sigma_a * sigma_b = {self.sigma_a * self.sigma_b} below c = {self.c}"
            )


def heisenberg_lhs(inputs: EdrInputs) -> float:
    """epsilon * eta, the naive error-disturbance product."""
    return inputs.epsilon * inputs.eta


def ozawa_lhs(inputs: EdrInputs) -> float:
    """epsilon sigma_b + sigma_a eta + epsilon eta."""
    return (
        inputs.epsilon * inputs.sigma_b
        + inputs.sigma_a * inputs.eta
        + inputs.epsilon * inputs.eta
    )


def branciard_lhs(inputs: EdrInputs) -> float:
    """sqrt(e^2 sb^2 + sa^2 n^2 + 2 e n sqrt(sa^2 sb^2 - c^2))."""
    radicand = (inputs.sigma_a * inputs.sigma_b) ** 2 - inputs.c**2
    if radicand < -1e-12:
        raise ValueError(f"sigma_a^2 sigma_b^2 - c^2 = {radicand} is negative")
    cross = 2.0 * inputs.epsilon * inputs.eta * math.sqrt(max(radicand, 0.0))
    return math.sqrt(
        (inputs.epsilon * inputs.sigma_b) ** 2
        + (inputs.sigma_a * inputs.eta) ** 2
        + cross
    )


def tilde(value: float) -> float:
    """The strengthened-bound map v -> v sqrt(1 - v^2/4) for v in [0, 2]."""
    if not 0.0 <= value <= 2.0:
        raise ValueError(f"value {value} outside [0, 2]")
    return value * math.sqrt(1.0 - value * value / 4.0)


def strong_branciard_lhs(inputs: EdrInputs) -> float:
    """The tightened relation for +/-1-valued observables, via the tilde map."""
    te, tn = tilde(inputs.epsilon), tilde(inputs.eta)
    cross = 2.0 * te * tn * math.sqrt(max(1.0 - inputs.c**2, 0.0))
    return math.sqrt(te * te + tn * tn + cross)


def effective_bound(theta_w: float) -> float:
    """Commutator bound left after two weak probes of angle theta_w: 4/(3 + cos 2 theta_w) - 1."""
    if not 0.0 <= theta_w <= math.pi / 2.0 + 1e-12:
        raise ValueError(f"theta_w = {theta_w} outside [0, pi/2]")
    return 4.0 / (3.0 + math.cos(2.0 * theta_w)) - 1.0


@dataclass(frozen=True)
class EdrReport:
    """The four left-hand sides and satisfied flags for one set of inputs."""

    inputs: EdrInputs
    heisenberg_lhs: float
    ozawa_lhs: float
    branciard_lhs: float
    strong_branciard_lhs: float
    satisfied: dict[str, bool]
    strength: float | None = None
    method: str = "exact"
    shots: int | None = None
    repeats: int | None = None

    def lhs(self, name: str) -> float:
        return getattr(self, f"{name}_lhs")


def classify(
    inputs: EdrInputs,
    *,
    strength: float | None = None,
    method: str = "exact",
    shots: int | None = None,
    repeats: int | None = None,
) -> EdrReport:
    """Evaluate all four relations and flag each against c - 1e-9."""
    values = {
        "heisenberg": heisenberg_lhs(inputs),
        "ozawa": ozawa_lhs(inputs),
        "branciard": branciard_lhs(inputs),
        "strong_branciard": strong_branciard_lhs(inputs),
    }
    satisfied = {name: values[name] >= inputs.c - SATISFIED_TOL for name in BOUND_NAMES}
    return EdrReport(
        inputs=inputs,
        heisenberg_lhs=values["heisenberg"],
        ozawa_lhs=values["ozawa"],
        branciard_lhs=values["branciard"],
        strong_branciard_lhs=values["strong_branciard"],
        satisfied=satisfied,
        strength=strength,
        method=method,
        shots=shots,
        repeats=repeats,
    )
