"""Render the CSVs written by reproduce_figures.py as PNG files.

Needs matplotlib (``pip install -e .[plot]``). Nothing else in the package
depends on this script.
"""
import argparse
import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def read_columns(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    out = {}
    for key in rows[0]:
        try:
            out[key] = np.array([float(r[key]) for r in rows])
        except ValueError:
            out[key] = [r[key] for r in rows]
    return out


def read_matrix(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    theta = np.array([float(v) for v in rows[0][1:]])
    r0 = np.array([float(r[0]) for r in rows[1:]])
    values = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
    return r0, theta, values


def ergotropy_panel(ax, path, title):
    d = read_columns(path)
    for key, style in (("E", "-"), ("E_I", "--"), ("E_C", ":")):
        ax.plot(d["gt"], d[key], style, label=key)
    ax.set_xlabel("gamma t")
    ax.set_title(title)
    ax.legend()


def trajectories(src, dst):
    for stem, title in (("fig1", "phase damping"), ("fig2", "amplitude damping")):
        fig, axes = plt.subplots(1, 2, figsize=(10, 4))
        ergotropy_panel(axes[0], src / f"{stem}_{'pd' if stem == 'fig1' else 'ad'}_nm.csv", f"{title}, non-Markovian")
        ergotropy_panel(axes[1], src / f"{stem}_{'pd' if stem == 'fig1' else 'ad'}_markov.csv", f"{title}, Markovian")
        fig.tight_layout()
        fig.savefig(dst / f"{stem}.png", dpi=150)
        plt.close(fig)


def grids(src, dst):
    for stem, label in (("fig3_tau_c", "gamma t_c"), ("fig4_dUpi", "passive cost")):
        r0, theta, values = read_matrix(src / f"{stem}.csv")
        fig, ax = plt.subplots(figsize=(5, 4))
        mesh = ax.pcolormesh(theta, r0, values, shading="auto")
        fig.colorbar(mesh, ax=ax, label=label)
        ax.set_xlabel("theta0")
        ax.set_ylabel("r0")
        fig.tight_layout()
        fig.savefig(dst / f"{stem}.png", dpi=150)
        plt.close(fig)


def lines(src, dst):
    for stem, param in (("fig5_equator", "r0"), ("fig6_pure", "theta0")):
        d = read_columns(src / f"{stem}.csv")
        fig, ax = plt.subplots(figsize=(5, 4))
        for key, color in (("Wstar", "C0"), ("dE", "C1"), ("dUpi", "C2")):
            ax.plot(d[param], d[key], color=color, label=f"{key} Markovian")
            ax.plot(d[param], d[key + "_n"], "--", color=color, label=f"{key} non-Markovian")
        ax.set_xlabel(param)
        ax.legend(fontsize=7)
        fig.tight_layout()
        fig.savefig(dst / f"{stem}.png", dpi=150)
        plt.close(fig)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--src", default="figures")
    p.add_argument("--dst", default=None, help="defaults to --src")
    args = p.parse_args()
    src = Path(args.src)
    dst = Path(args.dst or args.src)
    dst.mkdir(parents=True, exist_ok=True)
    trajectories(src, dst)
    grids(src, dst)
    lines(src, dst)
