"""Dense complex linear algebra for small registers (up to 16x16).

Matrices are plain ``numpy`` complex arrays.  Qubit 0 is always the
leftmost (slowest) tensor factor, so for the repeater register
``A1, A2, B2, B1`` the positions are 0, 1, 2, 3.
"""
from __future__ import annotations

import math

import numpy as np

MAX_DIM = 16
EIG_TOL = 1e-12
EIG_MAX_SWEEPS = 100


class LinalgError(ValueError):
    """Shape or structure of an operand is wrong for the requested operation."""


class ConvergenceError(ArithmeticError):
    """The Hermitian eigensolver hit its sweep cap."""


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.size == 0:
        raise LinalgError(f"expected a non-empty 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise LinalgError("matrix has non-finite entries")
    return m


def _square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise LinalgError(f"expected a square matrix, got shape {m.shape}")
    return m


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise LinalgError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product with ``a`` as the left (slower) factor."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*factors) -> np.ndarray:
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = kron(out, f)
    return out


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(_square(a)))


def _register_shape(rho, qubit_count: int) -> np.ndarray:
    m = _square(rho)
    if qubit_count < 1 or m.shape[0] != 2**qubit_count:
        raise LinalgError(
            f"matrix of size {m.shape[0]} does not describe {qubit_count} qubits"
        )
    return m.reshape([2] * (2 * qubit_count))


def partial_transpose(rho, subsystem: int, qubit_count: int) -> np.ndarray:
    """Transpose the row/column indices belonging to one qubit."""
    t = _register_shape(rho, qubit_count)
    if not 0 <= subsystem < qubit_count:
        raise LinalgError(f"qubit {subsystem} outside a {qubit_count}-qubit register")
    axes = list(range(2 * qubit_count))
    axes[subsystem], axes[qubit_count + subsystem] = (
        axes[qubit_count + subsystem],
        axes[subsystem],
    )
    dim = 2**qubit_count
    return t.transpose(axes).reshape(dim, dim)


def partial_trace(rho, keep, qubit_count: int) -> np.ndarray:
    """Reduced matrix on the ``keep`` qubits, kept in their original order."""
    t = _register_shape(rho, qubit_count)
    keep = sorted(set(keep))
    if not keep:
        raise LinalgError("keep set is empty")
    if keep[0] < 0 or keep[-1] >= qubit_count:
        raise LinalgError(f"keep set {keep} outside a {qubit_count}-qubit register")
    drop = [q for q in range(qubit_count) if q not in keep]
    # rows: keep, drop; columns: keep, drop
    order = keep + drop + [qubit_count + q for q in keep] + [qubit_count + q for q in drop]
    dk, dd = 2 ** len(keep), 2 ** len(drop)
    t = t.transpose(order).reshape(dk, dd, dk, dd)
    return np.einsum("ajbj->ab", t)


def hermiticity_error(m) -> float:
    m = _square(m)
    return float(np.max(np.abs(m - m.conj().T)))


def _off_norm(a: list[list[complex]]) -> float:
    n = len(a)
    total = 0.0
    for i in range(n):
        row = a[i]
        for j in range(n):
            if i != j:
                v = row[j]
                total += v.real * v.real + v.imag * v.imag
    return math.sqrt(total)


def hermitian_eigenvalues(m, tol: float = 1e-10) -> list[float]:
    """Eigenvalues of a Hermitian matrix in ascending order.

    Cyclic complex Jacobi: each pivot ``a[p, q] = r e^{i phi}`` is first
    made real by a diagonal phase and then annihilated by a real plane
    rotation.  Sweeps continue until the off-diagonal Frobenius norm drops
    below ``EIG_TOL`` (relative to the matrix norm once that exceeds one).
    Works on Python lists; at these sizes that beats numpy's per-call cost.
    """
    m = _square(m)
    n = m.shape[0]
    if n > MAX_DIM:
        raise LinalgError(f"eigensolver limited to {MAX_DIM}x{MAX_DIM}, got {n}x{n}")
    if hermiticity_error(m) > tol:
        raise LinalgError("matrix is not Hermitian within tolerance")
    a = (0.5 * (m + m.conj().T)).tolist()
    target = EIG_TOL * max(1.0, float(np.linalg.norm(m)))

    for _ in range(EIG_MAX_SWEEPS):
        if _off_norm(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                ph = (apq / r).conjugate()
                tau = (a[q][q].real - a[p][p].real) / (2.0 * r)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # columns: A <- A G with G = diag(1, ph) @ [[c, s], [-s, c]]
                g10, g11 = -s * ph, c * ph
                for row in a:
                    x, y = row[p], row[q]
                    row[p] = c * x + g10 * y
                    row[q] = s * x + g11 * y
                # rows: A <- G^H A
                h10, h11 = g10.conjugate(), g11.conjugate()
                rp, rq = a[p], a[q]
                for k in range(n):
                    x, y = rp[k], rq[k]
                    rp[k] = c * x + h10 * y
                    rq[k] = s * x + h11 * y
                a[p][q] = a[q][p] = 0j
    else:
        if _off_norm(a) > target:
            raise ConvergenceError(f"Jacobi did not converge in {EIG_MAX_SWEEPS} sweeps")
    return sorted(a[i][i].real for i in range(n))
