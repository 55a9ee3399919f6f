#!/usr/bin/env python3
"""Plot a tailsim trace.csv: position, attitude and actuator commands.

usage: plot_trace.py RUN_DIR_OR_CSV [more ...] [--save out.png]
Several traces are overlaid (e.g. the sea/ and cea/ folders written by compare).
"""
import argparse
import math
from pathlib import Path

import matplotlib.pyplot as plt
import pandas as pd


def load(path):
    p = Path(path)
    if p.is_dir():
        p = p / "trace.csv"
    return p, pd.read_csv(p)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("traces", nargs="+")
    ap.add_argument("--save")
    args = ap.parse_args()

    fig, ax = plt.subplots(4, 1, sharex=True, figsize=(9, 10))
    for path in args.traces:
        p, df = load(path)
        tag = p.parent.name or p.stem
        t = df["t"]
        for k, c in zip("xyz", ("C0", "C1", "C2")):
            ax[0].plot(t, df[f"p{k}"], c, label=f"{tag} p{k}")
            ax[0].plot(t, df[f"p{k}_d"], c, ls="--", lw=0.8)
        for k in ("roll", "pitch", "yaw"):
            ax[1].plot(t, df[k] * 180 / math.pi, label=f"{tag} {k}")
            ax[1].plot(t, df[f"{k}_d"] * 180 / math.pi, ls="--", lw=0.8)
        for k in ("C1", "C2", "A1", "A2"):
            ax[2].plot(t, df[k], label=f"{tag} {k}")
        for k in ("d1", "d2"):
            ax[3].plot(t, df[k] * 180 / math.pi, label=f"{tag} {k}")

    ax[0].set_ylabel("position [m]")
    ax[1].set_ylabel("attitude [deg]")
    ax[2].set_ylabel("throttle")
    ax[3].set_ylabel("servo [deg]")
    ax[3].set_xlabel("t [s]")
    for a in ax:
        a.grid(True, alpha=0.3)
        a.legend(fontsize=7, ncol=3)
    fig.tight_layout()
    if args.save:
        fig.savefig(args.save, dpi=120)
    else:
        plt.show()


if __name__ == "__main__":
    main()
