"""Figures for the CLI report path (rendered off-screen to files)."""
from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from . import corrections  # noqa: E402

GOLDEN = (np.sqrt(5) - 1.0) / 2.0
FIG_WIDTH = 6.4

params = {
    "font.size": 10,
    "axes.labelsize": 11,
    "legend.fontsize": 9,
    "xtick.labelsize": 9,
    "ytick.labelsize": 9,
    "lines.linewidth": 1.4,
    "figure.dpi": 120,
    "savefig.bbox": "tight",
}


def _figure(width=FIG_WIDTH, height=None):
    with plt.rc_context(params):
        fig, ax = plt.subplots(figsize=(width, height or width * GOLDEN))
    return fig, ax


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context(params):
        fig.savefig(path)
    plt.close(fig)
    return path


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def plot_wavefunctions(series, path, title=None):
    """``series``: iterable of (label, xi, u) triples."""
    fig, ax = _figure()
    for label, xi, u in series:
        ax.plot(xi, u, label=label)
    ax.axhline(0.0, color="0.6", lw=0.6)
    ax.set_xlabel(r"$\xi$")
    ax.set_ylabel(r"$u_{nl}(\xi)$")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False, ncol=2)
    return _save(fig, path)


def plot_levels(rows, path, unit_label="e", title=None):
    """Level ladder, uncorrected vs first-order corrected, one column pair per l.

    ``rows`` are mappings with keys l, e, e_corrected.
    """
    fig, ax = _figure(height=FIG_WIDTH * 0.8)
    ls = sorted({r["l"] for r in rows})
    for i, l in enumerate(ls):
        for r in (r for r in rows if r["l"] == l):
            ax.hlines(r["e"], 3 * i, 3 * i + 1, color="C0")
            ax.hlines(r["e_corrected"], 3 * i + 1.2, 3 * i + 2.2, color="C3")
    ax.set_xticks([3 * i + 1.1 for i in range(len(ls))])
    ax.set_xticklabels([f"l = {l}" for l in ls])
    ax.set_ylabel(unit_label)
    ax.plot([], [], color="C0", label="uncorrected")
    ax.plot([], [], color="C3", label="corrected")
    ax.legend(frameon=False)
    if title:
        ax.set_title(title)
    return _save(fig, path)


def ratio_curve(x_max=0.3, points=301):
    x = np.linspace(0.0, x_max, points)
    paper = np.array([corrections.correction_ratio(v, "paper") for v in x])
    strict = np.array([corrections.correction_ratio(v, "strict") for v in x])
    return x, paper, strict


def plot_ratio(path, ratio=None, thresholds=None, x_max=0.3):
    """Correction ratio against x = 2<t0>/mc2 in both modes, with thresholds marked."""
    x, paper, strict = ratio_curve(x_max)
    fig, ax = _figure()
    ax.plot(x, paper, label=r"paper: $|\Delta h|/(x\,mc^2)$")
    ax.plot(x, strict, label=r"strict: $|\Delta h|/(x\,mc^2/2)$")
    if ratio is not None:
        ax.axhline(ratio, color="0.5", lw=0.8, ls="--")
    for mode, xs in (thresholds or {}).items():
        ax.axvline(xs, color="C0" if mode == "paper" else "C1", lw=0.8, ls=":")
    ax.set_xlabel(r"$x = 2\langle t_0\rangle / mc^2$")
    ax.set_ylabel("relative correction")
    ax.legend(frameon=False)
    return _save(fig, path)
