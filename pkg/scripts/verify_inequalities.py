#!/usr/bin/env python3
"""Run every inequality verification suite and summarize the report."""

import argparse

from fracpnp import run_suite
from fracpnp.runio import write_json


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--suite", default="all")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="verification_report.json")
    args = ap.parse_args()

    report = run_suite(args.suite, args.seed)
    write_json(report, args.out)
    print(f"{report['n_checks']} checks, {report['counterexamples']} counterexamples "
          f"-> {args.out}")
    worst = sorted(report["checks"], key=lambda c: -c.get("ratio", 0.0))[:5]
    print("largest lhs/rhs ratios:")
    for c in worst:
        print(f"  {c['id']:>28}  ratio={c['ratio']:.4f}  holds={c['holds']}")
    return 4 if report["counterexamples"] else 0


if __name__ == "__main__":
    raise SystemExit(main())
