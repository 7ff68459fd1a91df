#!/usr/bin/env python3
# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT
"""
SPRM(2, 4, gamma) parameter table.

Reference:
    ``prmpir table --which 1``, checked against ``prmpir.golden.SPRM_TABLE``.

What this script does:
    Builds SPRM(2, 4, gamma) for gamma = 0..9, i.e. PRM(2, 4) (n = 26, k = 10,
    tau = 8) shortened by every possible number of message symbols, and lists
    for each one the rho vector, the set family whose 2-subsets are zeroed,
    the number gamma' of deleted coordinates and the resulting (n, k).

    Every code is actually constructed, so its 8 recovery sets per symbol are
    checked for disjointness and correctness along the way. The table is then
    compared with the reference copy in prmpir.golden.

Expected execution time:
    Under a second.

How to run:
    cd experiments/
    python table1_sprm.py

Output:
    - The table as markdown on stdout
    - ~/.prmpir/results/table1_sprm.csv
"""

import sys
from pathlib import Path

from prmpir import bounds
from prmpir.shorten import build_sprm

RESULTS_DIR = Path.home() / ".prmpir" / "results"


def main() -> None:
    table = bounds.table1()
    for row in table.itertuples(index=False):
        code = build_sprm(5, 2, row.gamma)
        assert (code.n, code.k, code.tau) == (row.n, row.k, 8)

    print(bounds.to_markdown(table))

    RESULTS_DIR.mkdir(parents=True, exist_ok=True)
    out_csv = RESULTS_DIR / "table1_sprm.csv"
    table.to_csv(out_csv, index=False)
    print(f"Saved: {out_csv}")

    problems = bounds.table1_diff()
    for problem in problems:
        print(f"MISMATCH: {problem}", file=sys.stderr)
    if problems:
        sys.exit(1)
    print("All 10 rows match the reference table.")


if __name__ == "__main__":
    main()
