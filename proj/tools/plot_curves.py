#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Quick-look plots for isaclab CSV outputs.

Usage:
  plot_curves.py ccdf file.csv [out.png]     log-log CCDF curves
  plot_curves.py region file.csv [out.png]   trade-off cloud + Pareto frontier
"""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], [[v for v in row] for row in rows[1:]]


def plot_ccdf(path, out):
    header, rows = load(path)
    eps = [float(r[0]) for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for col in range(1, len(header)):
        if header[col] == "stderr":
            continue
        ys = [float(r[col]) for r in rows]
        style = "o" if header[col] == "empirical" else "-"
        ax.plot(eps, ys, style, label=header[col], markersize=3)
    ax.set_xscale("log")
    ax.set_xlabel("eps (rad^2)")
    ax.set_ylabel("P(CRB > eps)")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def plot_region(path, out):
    header, rows = load(path)
    crb_col = header.index("e_crb")
    esr_col = header.index("esr")
    par_col = header.index("pareto")
    cloud = [(float(r[crb_col]), float(r[esr_col])) for r in rows if r[crb_col] != "inf"]
    front = [(float(r[crb_col]), float(r[esr_col]))
             for r in rows if r[par_col] == "1" and r[crb_col] != "inf"]
    front.sort()
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot([c for c, _ in cloud], [e for _, e in cloud], ".", alpha=0.4, label="sweep")
    if front:
        ax.plot([c for c, _ in front], [e for _, e in front], "r-o", markersize=4,
                label="Pareto frontier")
    ax.set_xlabel("E[CRB] (rad^2)")
    ax.set_ylabel("ESR (bits)")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def main():
    if len(sys.argv) < 3:
        print(__doc__)
        return 1
    kind, path = sys.argv[1], sys.argv[2]
    out = sys.argv[3] if len(sys.argv) > 3 else path.rsplit(".", 1)[0] + ".png"
    if kind == "ccdf":
        plot_ccdf(path, out)
    elif kind == "region":
        plot_region(path, out)
    else:
        print(__doc__)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
