"""Best iteration count and negativity for a range of rotation angles."""
import argparse
import math

import numpy as np

from zeno_repeater import initial_state, zeno_swap
from zeno_repeater.swap import SwapConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degrees", type=float, nargs="+", default=[0.5, 1.0, 2.0, 3.0, 5.0])
    ap.add_argument("--n-max", type=int, default=400)
    args = ap.parse_args()
    print("theta_deg  best_n  negativity    fidelity  success_prob")
    for deg in args.degrees:
        cfg = SwapConfig(theta=math.radians(deg), n_max=args.n_max)
        r = zeno_swap(initial_state(), cfg)
        print(f"{deg:9.3f}  {r.n_used:6d}  {r.negativity:.9f}  {r.best_bell_fidelity:.6f}  "
              f"{r.success_probability:.6f}")


if __name__ == "__main__":
    main()
