"""Entanglement swapping at one repeater station.

The Zeno route repeatedly rotates both station qubits by the same angle and
post-selects the ``J0`` branch of a threshold measurement, then measures the
station in the z basis.  The circuit route (CNOT + Hadamard + z measurement
+ Pauli correction) is kept as an exact reference.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator

import numpy as np

from . import linalg
from .metrics import closest_bell, fidelity_to_pure, negativity
from .qstate import (
    A1,
    B1,
    CNOT,
    HADAMARD,
    I2,
    SIGMA_X,
    SIGMA_Z,
    DensityMatrix,
    ThresholdProjectors,
    _basis_projector,
    bell_vector,
    lift_single,
    lift_station_operator,
    projector_j,
    reduce,
    rotation_gate,
)

PROBABILITY_FLOOR = 1e-15
# Negativity gains smaller than this count as ties (earlier candidate kept).
TIE_TOL = 1e-12
MAX_ITERATIONS = 1000

Outcome = tuple[int, int]
Z_OUTCOMES: tuple[Outcome, ...] = tuple(product((0, 1), repeat=2))


class ConfigError(ValueError):
    pass


class UnderflowError(ArithmeticError):
    """A post-selected branch has vanishing probability."""


def _check_bits(pair, what: str) -> Outcome:
    pair = tuple(int(x) for x in pair)
    if len(pair) != 2 or any(x not in (0, 1) for x in pair):
        raise ConfigError(f"{what} must be two bits, got {pair}")
    return pair


@dataclass(frozen=True)
class SwapConfig:
    """Tunables of one Zeno swap.

    ``n_iterations=None`` searches n over ``[1, n_max]``; ``z_outcome=None``
    keeps the z outcome with the largest negativity.
    """

    theta: float = math.pi / 180
    threshold_outcome: Outcome = (1, 1)
    n_iterations: int | None = None
    n_max: int = 100
    z_outcome: Outcome | None = None
    validation_tol: float = 1e-10

    def __post_init__(self):
        if not (math.isfinite(self.theta) and 0.0 < self.theta < math.pi / 2):
            raise ConfigError(f"theta must lie in (0, pi/2), got {self.theta}")
        object.__setattr__(
            self, "threshold_outcome", _check_bits(self.threshold_outcome, "threshold_outcome")
        )
        if self.z_outcome is not None:
            object.__setattr__(self, "z_outcome", _check_bits(self.z_outcome, "z_outcome"))
        if not 1 <= self.n_max <= MAX_ITERATIONS:
            raise ConfigError(f"n_max must be in [1, {MAX_ITERATIONS}], got {self.n_max}")
        if self.n_iterations is not None and not 1 <= self.n_iterations <= MAX_ITERATIONS:
            raise ConfigError(
                f"n_iterations must be in [1, {MAX_ITERATIONS}], got {self.n_iterations}"
            )
        if not self.validation_tol > 0:
            raise ConfigError("validation_tol must be positive")


@dataclass(frozen=True, eq=False)
class SwapResult:
    pair_state: DensityMatrix = field(repr=False)
    n_used: int
    z_outcome: Outcome
    negativity: float
    best_bell_fidelity: float
    closest_bell: str
    cumulative_j0_probability: float
    z_outcome_probability: float

    @property
    def success_probability(self) -> float:
        return self.cumulative_j0_probability * self.z_outcome_probability


@lru_cache(maxsize=64)
def _station_rotation(theta: float) -> np.ndarray:
    r = rotation_gate(theta)
    u = lift_station_operator(linalg.kron(r, r))
    u.setflags(write=False)
    return u


@lru_cache(maxsize=8)
def _station_z_projector(a: int, b: int) -> np.ndarray:
    p = lift_station_operator(linalg.kron(_basis_projector(a), _basis_projector(b)))
    p.setflags(write=False)
    return p


def _require_register(rho: DensityMatrix):
    if rho.qubit_count != 4:
        raise linalg.LinalgError(f"expected the 4-qubit register, got {rho.qubit_count} qubits")


def assemble(left: DensityMatrix, right: DensityMatrix) -> DensityMatrix:
    """Place ``left`` on ``A1 A2`` and ``right`` on ``B2 B1``."""
    if left.qubit_count != 2 or right.qubit_count != 2:
        raise ValueError("both inputs must be 2-qubit pairs")
    return left @ right


def rotate_step(rho: DensityMatrix, theta: float) -> DensityMatrix:
    _require_register(rho)
    if theta == 0:
        return rho
    u = _station_rotation(float(theta))
    return DensityMatrix(u @ rho.matrix @ u.conj().T, 4)


def measure_step(rho: DensityMatrix, proj: ThresholdProjectors) -> tuple[DensityMatrix, float]:
    """Keep the ``J0`` branch; returns the renormalised state and its probability."""
    _require_register(rho)
    j0 = lift_station_operator(proj.j0)
    branch = j0 @ rho.matrix @ j0.conj().T
    p = float(np.trace(branch).real)
    if p < PROBABILITY_FLOOR:
        raise UnderflowError(f"J0 branch probability {p:.3g} below floor")
    return DensityMatrix(branch / p, 4), p


def _iterate(rho: DensityMatrix, cfg: SwapConfig) -> Iterator[tuple[int, DensityMatrix, float]]:
    proj = projector_j(*cfg.threshold_outcome)
    cumulative = 1.0
    n = 0
    while True:
        n += 1
        rho, p = measure_step(rotate_step(rho, cfg.theta), proj)
        cumulative *= p
        yield n, rho, cumulative


def zeno_iterate(rho: DensityMatrix, cfg: SwapConfig, n: int) -> tuple[DensityMatrix, float]:
    """Apply ``n`` rotate-measure rounds; returns the state and the product of J0 probabilities."""
    _require_register(rho)
    if n < 1:
        raise ConfigError(f"n must be at least 1, got {n}")
    for k, state, cumulative in _iterate(rho, cfg):
        if k == n:
            return state, cumulative
    raise AssertionError("unreachable")


def final_z_measure(rho: DensityMatrix, outcome: Outcome) -> tuple[DensityMatrix, float]:
    """Project the station onto ``|a b>`` and return the ``A1 B1`` state with its probability."""
    _require_register(rho)
    a, b = _check_bits(outcome, "outcome")
    p_op = _station_z_projector(a, b)
    branch = p_op @ rho.matrix @ p_op
    p = float(np.trace(branch).real)
    if p < PROBABILITY_FLOOR:
        raise UnderflowError(f"z outcome {outcome} has probability {p:.3g}")
    return reduce(DensityMatrix(branch / p, 4), (A1, B1)), p


def _result(pair, n, outcome, neg, cumulative, p_z) -> SwapResult:
    label, fid = closest_bell(pair)
    return SwapResult(
        pair_state=pair,
        n_used=n,
        z_outcome=outcome,
        negativity=neg,
        best_bell_fidelity=fid,
        closest_bell=label,
        cumulative_j0_probability=cumulative,
        z_outcome_probability=p_z,
    )


def _select_outcome(rho: DensityMatrix, cfg: SwapConfig):
    if cfg.z_outcome is not None:
        pair, p = final_z_measure(rho, cfg.z_outcome)
        return pair, cfg.z_outcome, negativity(pair), p
    best = None
    for outcome in Z_OUTCOMES:
        try:
            pair, p = final_z_measure(rho, outcome)
        except UnderflowError:
            continue
        neg = negativity(pair)
        if best is None or neg > best[2] + TIE_TOL:
            best = (pair, outcome, neg, p)
    if best is None:
        raise UnderflowError("every z outcome has vanishing probability")
    return best


def iter_swaps(rho: DensityMatrix, cfg: SwapConfig, n_max: int) -> Iterator[SwapResult]:
    """Swap results for n = 1..n_max, reusing the state from n-1."""
    _require_register(rho)
    for n, state, cumulative in _iterate(rho, cfg):
        if n > n_max:
            return
        pair, outcome, neg, p_z = _select_outcome(state, cfg)
        yield _result(pair, n, outcome, neg, cumulative, p_z)


def swap_sweep(rho: DensityMatrix, cfg: SwapConfig, n_max: int) -> list[tuple[int, float]]:
    if n_max < 1:
        raise ConfigError(f"n_max must be at least 1, got {n_max}")
    return [(r.n_used, r.negativity) for r in iter_swaps(rho, cfg, n_max)]


def best_of(results) -> SwapResult:
    """Highest negativity; the first (smallest n) wins ties."""
    best = None
    for r in results:
        if best is None or r.negativity > best.negativity + TIE_TOL:
            best = r
    if best is None:
        raise ValueError("no swap results to choose from")
    return best


def zeno_swap(rho: DensityMatrix, cfg: SwapConfig = SwapConfig()) -> SwapResult:
    if cfg.n_iterations is not None:
        state, cumulative = zeno_iterate(rho, cfg, cfg.n_iterations)
        pair, outcome, neg, p_z = _select_outcome(state, cfg)
        return _result(pair, cfg.n_iterations, outcome, neg, cumulative, p_z)
    return best_of(iter_swaps(rho, cfg, cfg.n_max))


def _circuit_unitary() -> np.ndarray:
    return lift_station_operator(linalg.kron(HADAMARD, I2) @ CNOT)


def circuit_swap(rho: DensityMatrix, outcome: Outcome) -> SwapResult:
    """CNOT(A2 -> B2), Hadamard on A2, z measurement, then Z^a on A1 and X^b on B1."""
    _require_register(rho)
    a, b = _check_bits(outcome, "outcome")
    u = _circuit_unitary()
    rotated = DensityMatrix(u @ rho.matrix @ u.conj().T, 4)
    pair, p = final_z_measure(rotated, (a, b))
    correction = np.linalg.matrix_power(lift_single(SIGMA_Z, 0, 2), a) @ np.linalg.matrix_power(
        lift_single(SIGMA_X, 1, 2), b
    )
    pair = DensityMatrix(correction @ pair.matrix @ correction.conj().T, 2)
    return _result(pair, 0, (a, b), negativity(pair), 1.0, p)


def phi_plus_fidelity(result: SwapResult) -> float:
    return fidelity_to_pure(result.pair_state, bell_vector("phi+"))
