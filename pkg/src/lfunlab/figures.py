"""Figure rendering for the report path.

Reports stay plot-ready columns; these helpers render them to PNG files next
to the delimited output.  Output bytes are deterministic for a fixed
matplotlib version (Agg backend, fixed dpi, software tag stripped).
"""
from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

_DPI = 110
_META = {"Software": None}


def save_line_figure(
    path: str | Path,
    x: Sequence[float],
    curves: Mapping[str, Sequence[float]],
    xlabel: str,
    ylabel: str,
    title: str,
    logx: bool = False,
    logy: bool = False,
    marks: Mapping[str, float] | None = None,
) -> None:
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for label, y in curves.items():
        ax.plot(x, y, label=label, linewidth=1.2)
    for label, xv in (marks or {}).items():
        ax.axvline(xv, color="crimson", linestyle="--", linewidth=0.9)
        ax.text(xv, ax.get_ylim()[1], f" {label}", va="top", fontsize=8, color="crimson")
    if logx:
        ax.set_xscale("log")
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=10)
    if len(curves) > 1:
        ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI, metadata=_META)
    plt.close(fig)


def save_step_figure(
    path: str | Path,
    x: Sequence[float],
    y: Sequence[float],
    xlabel: str,
    ylabel: str,
    title: str,
) -> None:
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    ax.step(x, y, where="post", linewidth=1.0)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=10)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI, metadata=_META)
    plt.close(fig)
