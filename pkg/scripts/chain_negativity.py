"""Negativity per station along a repeater chain, plus the first few station states."""
import argparse

import numpy as np

from zeno_repeater import ChainConfig, run_chain


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--stations", type=int, default=100)
    ap.add_argument("--fresh-side", choices=["left", "right"], default="left")
    ap.add_argument("--show-states", type=int, default=9)
    args = ap.parse_args()

    records = run_chain(ChainConfig(stations=args.stations, fresh_pair_side=args.fresh_side))
    print("station  n  outcome  negativity    closest  fidelity")
    for rec in records:
        r = rec.result
        print(f"{rec.station:7d} {r.n_used:3d}  {r.z_outcome}  {r.negativity:.9f}  "
              f"{r.closest_bell:7s}  {r.best_bell_fidelity:.6f}")
    np.set_printoptions(precision=6, suppress=False, linewidth=120)
    for rec in records[: args.show_states]:
        print(f"\nstation {rec.station}:")
        print(rec.result.pair_state.matrix.real)
    negs = [rec.result.negativity for rec in records]
    print(f"\nband [{min(negs):.9f}, {max(negs):.9f}]")


if __name__ == "__main__":
    main()
