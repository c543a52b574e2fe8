"""Linear chain of repeater stations.

Each station swaps the pair produced by the previous station against a
fresh Bell pair.  No Pauli correction is applied between stations; the
negativity that drives the per-station search is blind to local Paulis.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .metrics import negativity
from .qstate import DensityMatrix, bell_pair
from .swap import ConfigError, SwapConfig, SwapResult, assemble, circuit_swap, zeno_swap

SIDES = ("left", "right")


@dataclass(frozen=True)
class ChainConfig:
    """``fresh_pair_side`` names where the new Bell pair goes.

    ``"left"`` puts it on ``A1 A2`` and the carried pair on ``B2 B1``; this is
    the layout whose station outputs match the published matrices.
    """

    stations: int = 100
    n_max: int = 100
    swap_cfg: SwapConfig = field(default_factory=SwapConfig)
    fresh_pair_side: str = "left"

    def __post_init__(self):
        if self.stations < 1:
            raise ConfigError(f"stations must be at least 1, got {self.stations}")
        if self.fresh_pair_side not in SIDES:
            raise ConfigError(f"fresh_pair_side must be one of {SIDES}")
        # keeps n_max consistent with the swap-level search bound
        object.__setattr__(self, "swap_cfg", replace(self.swap_cfg, n_max=self.n_max))


@dataclass(frozen=True, eq=False)
class ChainRecord:
    station: int
    result: SwapResult
    input_negativity: float


def station_input(prev_pair: DensityMatrix, side: str) -> DensityMatrix:
    fresh = bell_pair()
    if side == "left":
        return assemble(fresh, prev_pair)
    return assemble(prev_pair, fresh)


def chain_step(prev_pair: DensityMatrix, cfg: ChainConfig) -> SwapResult:
    if prev_pair.qubit_count != 2:
        raise ValueError("the carried state must be a 2-qubit pair")
    return zeno_swap(station_input(prev_pair, cfg.fresh_pair_side), cfg.swap_cfg)


def run_chain(cfg: ChainConfig, swap_fn=None) -> list[ChainRecord]:
    """Thread each station's output into the next.

    ``swap_fn(prev_pair, cfg)`` replaces the Zeno swap, e.g. with a circuit
    swap when cross-checking.
    """
    step = swap_fn or chain_step
    records = []
    pair = bell_pair()
    for station in range(1, cfg.stations + 1):
        result = step(pair, cfg)
        records.append(ChainRecord(station, result, negativity(pair)))
        pair = result.pair_state
    return records


def circuit_chain_step(prev_pair: DensityMatrix, cfg: ChainConfig, outcome=(0, 0)) -> SwapResult:
    return circuit_swap(station_input(prev_pair, cfg.fresh_pair_side), outcome)
