"""Dense density-matrix simulation for small qubit registers.

States are 2**n x 2**n complex density matrices with qubit 0 as the most
significant tensor factor, i.e. the basis index of |b0 b1 ... b(n-1)> is
the integer with bit b0 in the highest position.  Every operation returns
a new state; nothing is mutated in place, so states can be shared freely
across threads and processes.

Numerical contracts, assuming double precision and registers of at most
about ten qubits: equality-type checks use an absolute tolerance of
``ATOL`` (1e-12), and positive semidefiniteness admits eigenvalues down
to ``PSD_FLOOR`` (-1e-10).  Hermiticity and unit trace are enforced on
construction; the eigenvalue check is only run by :meth:`DensityMatrix.
validate` because it is the one check that costs a full diagonalisation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

ATOL = 1e-12
PSD_FLOOR = -1e-10

I2 = np.eye(2, dtype=complex)
X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
CNOT = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ],
    dtype=complex,
)


def rx(angle: float) -> np.ndarray:
    """Rotation about the x axis: [[cos a/2, -i sin a/2], [-i sin a/2, cos a/2]]."""
    c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
    return np.array([[c, -1.0j * s], [-1.0j * s, c]], dtype=complex)


def ry(angle: float) -> np.ndarray:
    """Rotation about the y axis: [[cos a/2, -sin a/2], [sin a/2, cos a/2]]."""
    c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def kron(*matrices: np.ndarray) -> np.ndarray:
    """Left-fold Kronecker product of one or more matrices."""
    if not matrices:
        raise ValueError("kron needs at least one matrix")
    out = np.asarray(matrices[0], dtype=complex)
    for m in matrices[1:]:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def embed(op: np.ndarray, targets: Sequence[int], num_qubits: int) -> np.ndarray:
    """Expand ``op`` acting on ``targets`` (in the given order) to the full register."""
    op = np.asarray(op, dtype=complex)
    targets = tuple(targets)
    _check_targets(targets, num_qubits)
    k = len(targets)
    if op.shape != (2**k, 2**k):
        raise ValueError(f"operator shape {op.shape} does not match {k} target qubit(s)")
    n = num_qubits
    rest = [q for q in range(n) if q not in targets]
    big = np.kron(op, np.eye(2 ** (n - k), dtype=complex))
    # axis a of the reshaped tensor currently carries qubit (targets + rest)[a]
    src = list(targets) + rest
    pos = {q: a for a, q in enumerate(src)}
    perm = [pos[q] for q in range(n)]
    t = big.reshape((2,) * (2 * n)).transpose(perm + [n + p for p in perm])
    return np.ascontiguousarray(t.reshape(2**n, 2**n))


def _check_targets(targets: tuple[int, ...], num_qubits: int) -> None:
    if not targets:
        raise ValueError("no target qubits given")
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target qubits: {targets}")
    for q in targets:
        if not 0 <= q < num_qubits:
            raise ValueError(f"target qubit {q} outside register of {num_qubits}")


def _require_unitary(u: np.ndarray) -> None:
    dim = u.shape[0]
    if u.shape != (dim, dim):
        raise ValueError("unitary must be square")
    dev = np.max(np.abs(u.conj().T @ u - np.eye(dim)))
    if dev > ATOL:
        raise ValueError(f"matrix is not unitary (deviation {dev:.3e})")


def _require_hermitian(m: np.ndarray, what: str) -> None:
    dev = np.max(np.abs(m - m.conj().T))
    if dev > ATOL:
        raise ValueError(f"{what} is not Hermitian (deviation {dev:.3e})")


@dataclass(frozen=True)
class KrausChannel:
    """A completely positive trace-preserving map given by Kraus operators.

    Completeness (sum of K^dagger K equal to the identity within ``ATOL``)
    is checked on construction.
    """

    operators: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if not self.operators:
            raise ValueError("channel needs at least one Kraus operator")
        ops = tuple(np.asarray(k, dtype=complex) for k in self.operators)
        object.__setattr__(self, "operators", ops)
        dim = ops[0].shape[0]
        for k in ops:
            if k.shape != (dim, dim):
                raise ValueError("Kraus operators must be square and equally sized")
        total = sum(k.conj().T @ k for k in ops)
        dev = np.max(np.abs(total - np.eye(dim)))
        if dev > ATOL:
            raise ValueError(f"Kraus operators are not complete (deviation {dev:.3e})")

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    @property
    def num_qubits(self) -> int:
        return int(round(np.log2(self.dim)))


@dataclass(frozen=True)
class DensityMatrix:
    """Immutable density matrix over ``num_qubits`` qubits."""

    num_qubits: int
    mat: np.ndarray

    def __post_init__(self) -> None:
        mat = np.asarray(self.mat, dtype=complex)
        object.__setattr__(self, "mat", mat)
        dim = 2**self.num_qubits
        if self.num_qubits < 1:
            raise ValueError("need at least one qubit")
        if mat.shape != (dim, dim):
            raise ValueError(f"matrix shape {mat.shape} does not match {self.num_qubits} qubit(s)")
        _require_hermitian(mat, "density matrix")
        tr = np.trace(mat)
        if abs(tr - 1.0) > ATOL:
            raise ValueError(f"density matrix trace {tr} is not 1")

    @classmethod
    def ground(cls, num_qubits: int) -> "DensityMatrix":
        """The all-zeros computational basis state."""
        dim = 2**num_qubits
        mat = np.zeros((dim, dim), dtype=complex)
        mat[0, 0] = 1.0
        return cls(num_qubits, mat)

    @classmethod
    def from_ket(cls, ket: np.ndarray) -> "DensityMatrix":
        ket = np.asarray(ket, dtype=complex).reshape(-1)
        n = int(round(np.log2(ket.size)))
        if 2**n != ket.size:
            raise ValueError("ket length must be a power of two")
        norm = np.linalg.norm(ket)
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"ket norm {norm} is not 1")
        return cls(n, np.outer(ket, ket.conj()))

    @classmethod
    def product(cls, *states: "DensityMatrix") -> "DensityMatrix":
        """Tensor product of states, first argument most significant."""
        mat = kron(*(s.mat for s in states))
        return cls(sum(s.num_qubits for s in states), mat)

    def apply_unitary(self, u: np.ndarray, targets: Sequence[int]) -> "DensityMatrix":
        """Conjugate by a unitary acting on ``targets`` (order defines the wiring)."""
        u = np.asarray(u, dtype=complex)
        _require_unitary(u)
        full = embed(u, targets, self.num_qubits)
        return DensityMatrix(self.num_qubits, full @ self.mat @ full.conj().T)

    def apply_channel(self, channel: KrausChannel, targets: Sequence[int]) -> "DensityMatrix":
        """Apply a Kraus channel on ``targets``; the trace is preserved by completeness."""
        out = np.zeros_like(self.mat)
        for k in channel.operators:
            full = embed(k, targets, self.num_qubits)
            out += full @ self.mat @ full.conj().T
        return DensityMatrix(self.num_qubits, out)

    def partial_trace(self, keep: Sequence[int]) -> "DensityMatrix":
        """Reduced state over ``keep``, ordered as listed."""
        keep = tuple(keep)
        _check_targets(keep, self.num_qubits)
        n = self.num_qubits
        keepset = set(keep)
        t = self.mat.reshape((2,) * (2 * n))
        row = list(range(n))
        col = [n + q if q in keepset else q for q in range(n)]
        out = [row[q] for q in keep] + [col[q] for q in keep]
        reduced = np.einsum(t, row + col, out)
        k = len(keep)
        return DensityMatrix(k, reduced.reshape(2**k, 2**k))

    def expectation(self, obs: np.ndarray) -> float:
        """Real expectation value of a Hermitian observable on the full register."""
        obs = np.asarray(obs, dtype=complex)
        if obs.shape != self.mat.shape:
            raise ValueError(f"observable shape {obs.shape} does not match state")
        _require_hermitian(obs, "observable")
        val = np.trace(self.mat @ obs)
        if abs(val.imag) > 1e-10:
            raise ValueError(f"expectation has imaginary residue {val.imag:.3e}")
        return float(val.real)

    def probabilities(self, targets: Sequence[int] | None = None) -> np.ndarray:
        """Measurement probabilities over ``targets`` in the computational basis.

        The returned vector has length 2**len(targets); entry ``j`` is the
        probability of the outcome whose bits, most significant first,
        follow the order of ``targets``.
        """
        if targets is None:
            targets = tuple(range(self.num_qubits))
        targets = tuple(targets)
        _check_targets(targets, self.num_qubits)
        n = self.num_qubits
        diag = np.real(np.diag(self.mat))
        idx = np.arange(2**n)
        out_index = np.zeros(2**n, dtype=np.int64)
        for q in targets:
            out_index = (out_index << 1) | ((idx >> (n - 1 - q)) & 1)
        return np.bincount(out_index, weights=diag, minlength=2 ** len(targets))

    def purity(self) -> float:
        return float(np.trace(self.mat @ self.mat).real)

    def validate(self) -> "DensityMatrix":
        """Full state check including positive semidefiniteness; returns self."""
        _require_hermitian(self.mat, "density matrix")
        tr = np.trace(self.mat)
        if abs(tr - 1.0) > ATOL:
            raise ValueError(f"density matrix trace {tr} is not 1")
        lowest = float(np.linalg.eigvalsh((self.mat + self.mat.conj().T) / 2.0)[0])
        if lowest < PSD_FLOOR:
            raise ValueError(f"density matrix has eigenvalue {lowest:.3e} below {PSD_FLOOR}")
        return self
