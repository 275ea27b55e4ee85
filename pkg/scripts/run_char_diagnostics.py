#!/usr/bin/env python3
"""Character-sum diagnostics across primes: the worst nonprincipal
normalized interval sum (its decay as the interval grows is the measured
analogue of the classical cancellation estimates) and the residual of the
collision-count identity."""

import argparse
from math import ceil

from prodcong.arith import build_field_context, primes_in_range
from prodcong.charsums import burgess_profile, energy_diagnostic
from prodcong.report import Report


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p-min", type=int, default=101)
    parser.add_argument("--p-max", type=int, default=499)
    parser.add_argument("--exponent", type=float, default=0.5, help="interval length = ceil(p**exponent)")
    parser.add_argument("--n0", type=int, default=2)
    parser.add_argument("--out", default=None)
    parser.add_argument("--format", choices=("json", "csv"), default="csv")
    args = parser.parse_args()

    rows = []
    for p in primes_in_range(args.p_min, args.p_max):
        length = min(ceil(p**args.exponent), p - 1)
        ctx = build_field_context(p)
        profile = burgess_profile(ctx, length)
        diag = energy_diagnostic(ctx, range(1, length + 1), length, args.n0)
        rows.append(
            {
                "p": p,
                "len": length,
                "max_ratio": profile.max_ratio,
                "argmax_j": profile.argmax_j,
                "j_direct": diag.j_direct,
                "identity_residual": abs(diag.j_char - diag.j_direct) / diag.j_direct,
                "bound_delta": diag.bound_delta,
            }
        )
    report = Report(
        command="char-diagnostics",
        config={
            "p_min": args.p_min,
            "p_max": args.p_max,
            "exponent": args.exponent,
            "n0": args.n0,
        },
        columns=[
            "p",
            "len",
            "max_ratio",
            "argmax_j",
            "j_direct",
            "identity_residual",
            "bound_delta",
        ],
        rows=rows,
        summary={
            "primes": len(rows),
            "worst_ratio": max(r["max_ratio"] for r in rows),
            "worst_residual": max(r["identity_residual"] for r in rows),
        },
    )
    report.write(args.out, args.format)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
