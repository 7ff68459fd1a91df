#!/usr/bin/env python3
# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT
"""
Block length n(k, tau) of the shortened PRM constructions, and their storage overhead.

Reference:
    ``prmpir table --which 2``, checked against ``prmpir.golden.BLOCKLENGTH_TABLE``;
    ``prmpir bounds`` for a single (k, tau).

What this script does:
    For k = 2..32 and tau = 3, 4, 8, 16, builds the best construction
    (SPRM for tau = 2^l, SPRM punctured once for tau = 2^l - 1) and reports
    its block length n1 next to the best previously published value n2 and
    the systematic lower bound. For tau = 3 and 4, n1 always meets the bound.

    A second view plots the storage overhead n1/k against k, one line per
    tau, with the tau-fold replication overhead as a dashed reference, to show
    how far below replication the coded servers stay.

Expected execution time:
    A few seconds.

How to run:
    cd experiments/
    python table2_blocklength.py

Output:
    - The table (n1/n2 per tau) as markdown on stdout
    - ~/.prmpir/results/table2_blocklength.csv
    - ~/.prmpir/results/table2_overhead.pdf and .png
"""

import sys
from pathlib import Path

import matplotlib.pyplot as plt
import seaborn as sns

from prmpir import bounds

RESULTS_DIR = Path.home() / ".prmpir" / "results"


def main() -> None:
    table = bounds.table2()
    print(bounds.to_markdown(bounds.table2_wide(table)))

    RESULTS_DIR.mkdir(parents=True, exist_ok=True)
    out_csv = RESULTS_DIR / "table2_blocklength.csv"
    table.to_csv(out_csv, index=False)
    print(f"Saved: {out_csv}")

    # --- Storage overhead plot ---
    df = table.assign(
        overhead=[bounds.storage_overhead(k, tau)[0] for k, tau in zip(table["k"], table["tau"])],
        tau_label=table["tau"].map("tau={}".format),
    )

    sns.set_theme(
        context="talk",
        style="whitegrid",
        palette="colorblind",
        rc={
            "figure.figsize": (8, 6),
            "pdf.fonttype": 42,
            "pdf.use14corefonts": True,
        },
    )
    ax = sns.lineplot(data=df, x="k", y="overhead", hue="tau_label", marker="o")
    for tau, color in zip(sorted(df["tau"].unique()), sns.color_palette("colorblind")):
        ax.axhline(tau, linestyle="--", linewidth=1, color=color)
    ax.set_yscale("log", base=2)
    ax.set_xlabel("k (message symbols)")
    ax.set_ylabel("storage overhead n/k")
    ax.legend(title="")
    plt.tight_layout()

    out_pdf = RESULTS_DIR / "table2_overhead.pdf"
    out_png = RESULTS_DIR / "table2_overhead.png"
    plt.savefig(str(out_pdf))
    plt.savefig(str(out_png), dpi=150)
    print(f"Saved: {out_pdf}")
    print(f"Saved: {out_png}")

    problems = bounds.table2_diff(table)
    for problem in problems:
        print(f"MISMATCH: {problem}", file=sys.stderr)
    if problems:
        sys.exit(1)
    print("All 124 cells match the reference n1 and never exceed n2.")


if __name__ == "__main__":
    main()
