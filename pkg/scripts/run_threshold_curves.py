#!/usr/bin/env python3
"""Sweep the minimal fully-solvable interval length across primes.

For each prime, finds the smallest uniform length n such that every
coefficient pair (b, c) at a = 1 admits a solution with all thirteen
intervals equal to {1..n}, and reports n against p**0.25 (a ratio only;
no threshold is asserted).
"""

import argparse

from prodcong.arith import primes_in_range
from prodcong.report import Report
from prodcong.solver import threshold_scan


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p-min", type=int, default=5)
    parser.add_argument("--p-max", type=int, default=101)
    parser.add_argument("--out", default=None)
    parser.add_argument("--format", choices=("json", "csv"), default="csv")
    args = parser.parse_args()

    rows = []
    for p in primes_in_range(args.p_min, args.p_max):
        res = threshold_scan(p)
        quarter = p**0.25
        rows.append(
            {
                "p": p,
                "minimal_len": res.minimal_len,
                "p_quarter": quarter,
                "ratio": None if res.minimal_len is None else res.minimal_len / quarter,
                "curve": ";".join(f"{r.length}:{r.fraction:.4f}" for r in res.curve),
            }
        )
    report = Report(
        command="threshold-curves",
        config={"p_min": args.p_min, "p_max": args.p_max},
        columns=["p", "minimal_len", "p_quarter", "ratio", "curve"],
        rows=rows,
        summary={"primes": len(rows)},
    )
    report.write(args.out, args.format)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
