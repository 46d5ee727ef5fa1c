"""Figure rendering for simulation reports.

Draws the density-scaled histogram of a simulation run with the
correlation-limit curve overlaid, and writes it next to the delimited
output.  SVG output is reproducible: a fixed hash salt and no creation
date are embedded.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "cauchycorr"

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .distributions import _corr_limit_pdf_abs
from .exceptions import DomainError

__all__ = ["render_overlay"]


def render_overlay(
    edges: np.ndarray,
    counts: np.ndarray,
    total: int,
    a: float,
    out_path: str | Path,
    title: str = "Simulated histogram vs. limit density",
) -> Path:
    """Histogram bars scaled to density (count / (total * width)) with the
    closed-form correlation-limit curve for correction factor ``a``.
    """
    edges = np.asarray(edges, dtype=float)
    counts = np.asarray(counts, dtype=float)
    if counts.size == 0 or counts.sum() == 0:
        raise DomainError("histogram is empty; nothing to plot")
    widths = np.diff(edges)
    if not np.allclose(widths, widths[0], rtol=1e-9):
        raise DomainError("histogram bins are not fixed-width")
    if total < counts.sum():
        raise DomainError(
            f"total {total} is smaller than the in-range count {int(counts.sum())}: "
            "binning/total mismatch"
        )

    width = float(widths[0])
    heights = counts / (total * width)

    grid = np.linspace(edges[0], edges[-1], 1601)
    safe = np.abs(grid) > width / 100.0
    curve = np.full_like(grid, np.nan)
    curve[safe] = _corr_limit_pdf_abs(np.abs(grid[safe]), a)

    fig, ax = plt.subplots(figsize=(7.0, 4.4))
    ax.bar(edges[:-1], heights, width=width, align="edge",
           color="#9ecae1", edgecolor="#4292c6", linewidth=0.6, label="simulation")
    ax.plot(grid, curve, color="#d62728", linewidth=1.6, label="limit density")
    ax.set_xlabel("scaled centralized correlation")
    ax.set_ylabel("density")
    ax.set_title(title)
    ax.annotate(f"a = {a:.5f}", xy=(0.02, 0.93), xycoords="axes fraction")
    ax.legend(frameon=False)
    ax.set_xlim(edges[0], edges[-1])
    fig.tight_layout()

    out_path = Path(out_path)
    metadata = {"Date": None} if out_path.suffix.lower() == ".svg" else None
    fig.savefig(out_path, metadata=metadata)
    plt.close(fig)
    return out_path
