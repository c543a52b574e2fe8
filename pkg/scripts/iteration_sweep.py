"""Negativity after n rotate-measure rounds for a single station, n = 1..N."""
import argparse
import csv
import math
import sys

from zeno_repeater import initial_state
from zeno_repeater.swap import SwapConfig, best_of, iter_swaps


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta", type=float, default=math.pi / 180)
    ap.add_argument("--n-max", type=int, default=100)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    results = list(iter_swaps(initial_state(), SwapConfig(theta=args.theta), args.n_max))
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["n", "negativity", "best_bell_fidelity", "closest_bell", "success_probability"])
    for r in results:
        w.writerow([r.n_used, f"{r.negativity:.12g}", f"{r.best_bell_fidelity:.12g}",
                    r.closest_bell, f"{r.success_probability:.12g}"])
    if fh is not sys.stdout:
        fh.close()
    best = best_of(results)
    print(f"best n={best.n_used} negativity={best.negativity:.6f} "
          f"fidelity={best.best_bell_fidelity:.6f} ({best.closest_bell})", file=sys.stderr)


if __name__ == "__main__":
    main()
