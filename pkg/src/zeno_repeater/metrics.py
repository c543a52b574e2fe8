"""Entanglement and closeness measures for two-qubit states."""
from __future__ import annotations

import numpy as np

from . import linalg
from .qstate import DensityMatrix, bell_vector

NEGATIVE_EIG_FLOOR = -1e-12

# Tie-break order for closest_bell.
BELL_LABELS = ("phi+", "phi-", "psi+", "psi-")


def _two_qubit(rho: DensityMatrix) -> DensityMatrix:
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho, 2)
    if rho.qubit_count != 2:
        raise ValueError(f"expected a 2-qubit state, got {rho.qubit_count} qubits")
    return rho


def partial_transpose_spectrum(rho: DensityMatrix, subsystem: int = 0) -> list[float]:
    rho = _two_qubit(rho)
    pt = linalg.partial_transpose(rho.matrix, subsystem, 2)
    return linalg.hermitian_eigenvalues(pt)


def negativity(rho: DensityMatrix, subsystem: int = 0) -> float:
    """Sum of |negative eigenvalues| of the partial transpose on ``subsystem``.

    Equivalent to (||rho^T_A||_1 - 1) / 2.  Eigenvalues above
    ``NEGATIVE_EIG_FLOOR`` are treated as zero.
    """
    eigs = partial_transpose_spectrum(rho, subsystem)
    return float(-sum(e for e in eigs if e < NEGATIVE_EIG_FLOOR))


def fidelity_to_pure(rho: DensityMatrix, psi) -> float:
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    if abs(np.vdot(psi, psi).real - 1.0) > 1e-12:
        raise ValueError("target state vector is not normalized")
    m = rho.matrix if isinstance(rho, DensityMatrix) else linalg.as_matrix(rho)
    return float(np.vdot(psi, m @ psi).real)


def bell_fidelities(rho: DensityMatrix) -> dict[str, float]:
    rho = _two_qubit(rho)
    return {label: fidelity_to_pure(rho, bell_vector(label)) for label in BELL_LABELS}


def closest_bell(rho: DensityMatrix) -> tuple[str, float]:
    """Bell state with the largest overlap; earlier labels win exact ties."""
    fids = bell_fidelities(rho)
    best = BELL_LABELS[0]
    for label in BELL_LABELS[1:]:
        if fids[label] > fids[best]:
            best = label
    return best, fids[best]
