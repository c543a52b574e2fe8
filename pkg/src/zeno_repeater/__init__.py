"""Entanglement swapping by quantum Zeno dynamics, single station and chains."""
from .chain import ChainConfig, ChainRecord, chain_step, run_chain
from .metrics import closest_bell, fidelity_to_pure, negativity
from .qstate import DensityMatrix, bell_pair, initial_state
from .swap import SwapConfig, SwapResult, circuit_swap, swap_sweep, zeno_swap

__all__ = [
    "ChainConfig",
    "ChainRecord",
    "DensityMatrix",
    "SwapConfig",
    "SwapResult",
    "bell_pair",
    "chain_step",
    "circuit_swap",
    "closest_bell",
    "fidelity_to_pure",
    "initial_state",
    "negativity",
    "run_chain",
    "swap_sweep",
    "zeno_swap",
]
