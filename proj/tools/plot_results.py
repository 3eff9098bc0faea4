#!/usr/bin/env python3
"""Render PNGs from the CSVs in a result directory. Reads CSVs only."""
import csv
import math
import sys
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def num(x):
    return float(x) if x not in ("", "nan") else math.nan


def plot_curve(d):
    r = rows(d / "curve.csv")
    fig, ax = plt.subplots()
    ax.step([int(x["T"]) for x in r], [num(x["P"]) for x in r], where="post")
    ax.set_xlabel("effective oracle calls T")
    ax.set_ylabel("P(success)")
    ax.set_title(f"N = {r[0]['N']}, M = {r[0]['M']}" if r else "")
    fig.savefig(d / "curve.png", dpi=120)


def plot_curves(d):
    groups = defaultdict(list)
    for x in rows(d / "curves.csv"):
        groups[(x["source"], x["N"])].append((int(x["T"]), num(x["P"])))
    fig, ax = plt.subplots()
    for (source, n), pts in sorted(groups.items(), key=lambda kv: (int(kv[0][1]), kv[0][0])):
        ax.step([p[0] for p in pts], [p[1] for p in pts], where="post", label=f"{source} N={n}",
                linestyle="-" if source != "mc" else "--")
    ax.set_xscale("log")
    ax.set_xlabel("effective oracle calls T")
    ax.set_ylabel("P(success)")
    ax.legend(fontsize=7)
    fig.savefig(d / "curves.png", dpi=120)


def plot_rate_vs_logn(d):
    r = rows(d / "rate_vs_logn.csv")
    x = [int(v["log2N"]) for v in r]
    fig, ax = plt.subplots()
    ax.errorbar(x, [num(v["a"]) for v in r], yerr=[num(v["a_err"]) for v in r], marker="o")
    ax.set_xlabel("log2 N")
    ax.set_ylabel("rate parameter a")
    inset = ax.inset_axes([0.55, 0.55, 0.4, 0.35])
    inset.plot(x, [num(v["r2"]) for v in r], marker=".")
    inset.set_title("R^2", fontsize=8)
    fig.savefig(d / "rate_vs_logn.png", dpi=120)


def plot_survey(d):
    r = rows(d / "survey.csv")
    betas = sorted({num(v["beta"]) for v in r})
    gammas = sorted({num(v["gamma"]) for v in r})
    grid = [[math.nan] * len(gammas) for _ in betas]
    for v in r:
        grid[betas.index(num(v["beta"]))][gammas.index(num(v["gamma"]))] = num(v["a"])
    fig, ax = plt.subplots()
    im = ax.imshow(grid, origin="lower", aspect="auto",
                   extent=[gammas[0], gammas[-1], betas[0], betas[-1]])
    fig.colorbar(im, label="a")
    ax.set_xlabel("gamma")
    ax.set_ylabel("beta")
    fig.savefig(d / "survey.png", dpi=120)


def plot_sem_vs_aem(d):
    r = rows(d / "sem_vs_aem.csv")
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    series = defaultdict(list)
    for v in r:
        t = num(v["t1"]) if v["sweep"] == "T1" else num(v["t2"])
        series[(v["n"], v["sweep"], v["strategy"])].append((t, num(v["a_eff"]), num(v["a_eff_err"]),
                                                            num(v["mean_runtime"])))
    for (n, sweep, strategy), pts in sorted(series.items()):
        pts.sort()
        style = "-" if strategy == "aem" else "--"
        color = "tab:blue" if sweep == "T1" else "tab:red"
        label = f"n={n} {strategy} {sweep} swept"
        ax1.errorbar([p[0] for p in pts], [p[1] for p in pts], yerr=[p[2] for p in pts], linestyle=style,
                     color=color, marker="o", label=label)
        ax2.plot([p[0] for p in pts], [p[3] for p in pts], linestyle=style, color=color, marker="o", label=label)
    for ax, lab in ((ax1, "a_eff"), (ax2, "mean run-time (SQGT)")):
        ax.set_xscale("log")
        ax.set_xlabel("swept time (SQGT)")
        ax.set_ylabel(lab)
    ax1.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(d / "sem_vs_aem.png", dpi=120)


def plot_realistic(d):
    r = rows(d / "realistic.csv")
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for strategy in sorted({v["strategy"] for v in r}):
        pts = [v for v in r if v["strategy"] == strategy]
        n = [int(v["n"]) for v in pts]
        ax1.errorbar(n, [num(v["a_eff"]) for v in pts], yerr=[num(v["a_eff_err"]) for v in pts], marker="o",
                     label=strategy)
        ax2.plot(n, [num(v["mean_runtime"]) for v in pts], marker="o", label=strategy)
    ax1.set_ylabel("a_eff")
    ax2.set_ylabel("mean run-time (SQGT)")
    ax2.set_yscale("log")
    for ax in (ax1, ax2):
        ax.set_xlabel("log2 |G|")
        ax.legend()
    fig.tight_layout()
    fig.savefig(d / "realistic.png", dpi=120)


PLOTTERS = {
    "curve.csv": plot_curve,
    "curves.csv": plot_curves,
    "rate_vs_logn.csv": plot_rate_vs_logn,
    "survey.csv": plot_survey,
    "sem_vs_aem.csv": plot_sem_vs_aem,
    "realistic.csv": plot_realistic,
}


def main():
    if len(sys.argv) != 2:
        sys.exit("usage: plot_results.py <result-dir>")
    d = Path(sys.argv[1])
    done = 0
    for name, fn in PLOTTERS.items():
        if (d / name).exists():
            fn(d)
            done += 1
    if not done:
        sys.exit(f"no known CSVs in {d}")


if __name__ == "__main__":
    main()
