#!/usr/bin/env python3
"""Map the eligibility region of the conditional H^2 decay bound.

Sweeps the (alpha, beta) square for a fixed dimension and writes a CSV of the
five condition flags, the interpolation exponent, and the combined verdict.
"""

import argparse

import numpy as np

from fracpnp import FracExponents, check_conditions


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--resolution", type=int, default=40)
    ap.add_argument("--out", default="eligibility_sweep.csv")
    args = ap.parse_args()

    values = np.linspace(0.05, 1.95, args.resolution)
    eligible_count = 0
    with open(args.out, "w") as fh:
        fh.write("alpha,beta,cond_22,cond_23,cond_24,cond_25,cond_26,gamma,eligible\n")
        for a in map(float, values):
            for b in map(float, values):
                rep = check_conditions(args.d, FracExponents(a, b))
                eligible_count += rep.eligible
                fh.write(
                    f"{a!r},{b!r},{int(rep.cond_22)},{int(rep.cond_23)},"
                    f"{int(rep.cond_24)},{int(rep.cond_25)},{int(rep.cond_26)},"
                    f"{rep.gamma_value!r},{int(rep.eligible)}\n"
                )
    total = args.resolution**2
    print(f"d={args.d}: {eligible_count}/{total} grid points eligible -> {args.out}")


if __name__ == "__main__":
    main()
