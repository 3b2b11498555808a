#!/usr/bin/env python3
"""Render rpsim output files (CSV or JSON) to a PNG.

Each input file becomes one panel; every series in the file becomes one curve.
"""

import argparse
import csv
import json
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], rows[1:]
    cols = list(zip(*[[float(v) if v else float("nan") for v in r] for r in data]))
    return header[0], [(lbl, cols[0], cols[i]) for i, lbl in enumerate(header[1:], 1)]


def load_json(path):
    doc = json.loads(pathlib.Path(path).read_text())
    series = doc["series"]
    ab = series[0]["abscissa"]
    xlabel = f"{ab['name']}_{ab['unit']}" if ab["unit"] else ab["name"]
    return xlabel, [(s["label"], s["x"], s["y"]) for s in series]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("files", nargs="+", help="rpsim .csv or .json output files")
    ap.add_argument("-o", "--out", default="series.png", help="output image path")
    ap.add_argument("--logx", action="store_true", help="logarithmic abscissa")
    args = ap.parse_args()

    fig, axes = plt.subplots(1, len(args.files), figsize=(6 * len(args.files), 4.5), squeeze=False)
    for ax, path in zip(axes[0], args.files):
        xlabel, series = (load_json if path.endswith(".json") else load_csv)(path)
        for label, x, y in series:
            ax.plot(x, y, lw=1.0, label=label)
        ax.set_xlabel(xlabel)
        ax.set_title(pathlib.Path(path).stem)
        if args.logx:
            ax.set_xscale("log")
        if len(series) > 1:
            ax.legend(fontsize=8)
        ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(args.out)


if __name__ == "__main__":
    main()
