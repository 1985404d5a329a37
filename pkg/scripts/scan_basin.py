#!/usr/bin/env python3
"""Scan a grid of initial conditions and record each cell's long-run fate.

Produces the same CSV schema as ``mosquito-allee basin`` (header
``x0,y0,verdict,iterations``) plus a printed verdict tally.  The default
window covers the basin boundary around the interior fixed point of the
alpha=0.8, beta=0.9, gamma=2, mu=0.4 parameter set.
"""

from __future__ import annotations

import argparse
import os

from mosquito_allee import Params, basin_scan


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--alpha", type=float, default=0.8)
    parser.add_argument("--beta", type=float, default=0.9)
    parser.add_argument("--gamma", type=float, default=2.0)
    parser.add_argument("--mu", type=float, default=0.4)
    parser.add_argument("--x-min", type=float, default=0.0)
    parser.add_argument("--x-max", type=float, default=7.0)
    parser.add_argument("--y-min", type=float, default=0.0)
    parser.add_argument("--y-max", type=float, default=5.0)
    parser.add_argument("--nx", type=int, default=71)
    parser.add_argument("--ny", type=int, default=51)
    parser.add_argument("--budget", type=int, default=10**5, help="iteration budget per cell")
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    parser.add_argument("--out", default="basin.csv")
    args = parser.parse_args()

    params = Params(alpha=args.alpha, beta=args.beta, gamma=args.gamma, mu=args.mu)
    grid = basin_scan(
        params,
        (args.x_min, args.x_max),
        (args.y_min, args.y_max),
        args.nx,
        args.ny,
        budget=args.budget,
        workers=args.workers,
    )

    counts: dict[str, int] = {}
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("x0,y0,verdict,iterations\n")
        for x0, y0, outcome in grid.iter_rows():
            fh.write(f"{x0:.17g},{y0:.17g},{outcome.verdict.value},{outcome.iterations_used}\n")
            counts[outcome.verdict.value] = counts.get(outcome.verdict.value, 0) + 1

    total = grid.nx * grid.ny
    tally = " ".join(f"{k}={counts[k]}" for k in sorted(counts))
    print(f"wrote {args.out}: {total} cells, {tally}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
