"""Density matrices, gates and threshold projectors on the repeater register.

Register order is ``A1, A2, B2, B1`` (positions 0..3); the repeater station
holds the middle two qubits.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_SLACK = 1e-9
UNITARY_TOL = 1e-10

A1, A2, B2, B1 = 0, 1, 2, 3
STATION = (A2, B2)

I2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
)


class InvalidStateError(ValueError):
    """A matrix failed the density-matrix checks."""


def _basis_projector(k: int) -> np.ndarray:
    p = np.zeros((2, 2), dtype=np.complex128)
    p[k, k] = 1.0
    return p


def _is_psd(m: np.ndarray, slack: float) -> bool:
    # Cholesky of m + slack*I succeeds iff every eigenvalue exceeds -slack.
    try:
        np.linalg.cholesky(m + slack * np.eye(m.shape[0]))
    except np.linalg.LinAlgError:
        return False
    return True


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated qubit-register state (Hermitian, unit trace, PSD)."""

    matrix: np.ndarray = field(repr=False)
    qubit_count: int

    def __post_init__(self):
        try:
            m = linalg.as_matrix(self.matrix)
        except linalg.LinalgError as exc:
            raise InvalidStateError(str(exc)) from exc
        if m.shape != (2**self.qubit_count, 2**self.qubit_count):
            raise InvalidStateError(
                f"shape {m.shape} does not match {self.qubit_count} qubits"
            )
        herm = linalg.hermiticity_error(m)
        if herm > HERMITIAN_TOL:
            raise InvalidStateError(f"not Hermitian (max deviation {herm:.3g})")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"trace is {tr:.12g}, expected 1")
        if not _is_psd(m, PSD_SLACK):
            raise InvalidStateError("matrix has an eigenvalue below the PSD slack")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_vector(cls, psi) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=np.complex128).ravel()
        n = int(round(np.log2(psi.size)))
        return cls(np.outer(psi, psi.conj()), n)

    def __matmul__(self, other: "DensityMatrix") -> "DensityMatrix":
        """Tensor product, ``self`` on the left."""
        return DensityMatrix(
            linalg.kron(self.matrix, other.matrix), self.qubit_count + other.qubit_count
        )


@dataclass(frozen=True, eq=False)
class ThresholdProjectors:
    j1: np.ndarray = field(repr=False)
    j0: np.ndarray = field(repr=False)
    outcome_i: int
    outcome_j: int


def bell_vector(label: str = "phi+") -> np.ndarray:
    s = 1 / np.sqrt(2)
    vectors = {
        "phi+": [s, 0, 0, s],
        "phi-": [s, 0, 0, -s],
        "psi+": [0, s, s, 0],
        "psi-": [0, s, -s, 0],
    }
    return np.array(vectors[label], dtype=np.complex128)


def bell_pair() -> DensityMatrix:
    """(|00> + |11>)/sqrt(2) as a 2-qubit density matrix."""
    return DensityMatrix.from_vector(bell_vector("phi+"))


def initial_state() -> DensityMatrix:
    """Two Bell pairs on ``A1 A2`` and ``B2 B1``."""
    return bell_pair() @ bell_pair()


def rotation_gate(theta: float) -> np.ndarray:
    if not np.isfinite(theta):
        raise ValueError("theta must be finite")
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def projector_j(i: int, j: int) -> ThresholdProjectors:
    """Threshold measurement {J1 = |i><i| (x) |j><j|, J0 = I - J1} on two qubits."""
    if i not in (0, 1) or j not in (0, 1):
        raise ValueError(f"threshold outcome must be bits, got ({i}, {j})")
    j1 = linalg.kron(_basis_projector(i), _basis_projector(j))
    j0 = np.eye(4, dtype=np.complex128) - j1
    return ThresholdProjectors(j1=j1, j0=j0, outcome_i=i, outcome_j=j)


def lift_station_operator(op2) -> np.ndarray:
    """Embed a two-qubit operator on ``A2 B2`` as ``I (x) op2 (x) I``."""
    op2 = linalg.as_matrix(op2)
    if op2.shape != (4, 4):
        raise linalg.LinalgError(f"station operator must be 4x4, got {op2.shape}")
    return linalg.kron_all(I2, op2, I2)


def lift_single(op, target: int, qubit_count: int) -> np.ndarray:
    if not 0 <= target < qubit_count:
        raise ValueError(f"target {target} outside a {qubit_count}-qubit register")
    factors = [I2] * qubit_count
    factors[target] = op
    return linalg.kron_all(*factors)


def pauli(which: str, target: int, qubit_count: int) -> np.ndarray:
    ops = {"X": SIGMA_X, "Z": SIGMA_Z, "I": I2}
    try:
        op = ops[which.upper()]
    except KeyError:
        raise ValueError(f"unknown Pauli {which!r}") from None
    return lift_single(op, target, qubit_count)


def is_unitary(u, tol: float = UNITARY_TOL) -> bool:
    u = linalg.as_matrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def apply_unitary(rho: DensityMatrix, u) -> DensityMatrix:
    u = linalg.as_matrix(u)
    if u.shape != rho.matrix.shape:
        raise linalg.LinalgError(f"unitary {u.shape} does not match state {rho.matrix.shape}")
    if not is_unitary(u):
        raise ValueError("operator is not unitary")
    return DensityMatrix(u @ rho.matrix @ u.conj().T, rho.qubit_count)


def reduce(rho: DensityMatrix, keep) -> DensityMatrix:
    keep = sorted(set(keep))
    return DensityMatrix(linalg.partial_trace(rho.matrix, keep, rho.qubit_count), len(keep))
