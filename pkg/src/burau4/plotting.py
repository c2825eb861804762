"""Figure output for the analysis reports."""

from __future__ import annotations

from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_min2k(rows: list[tuple[int, str, int, Optional[int]]], path: str,
               title: str = "minimum norm outside earlier families") -> None:
    """Scatter of the family-excluded minimum norm against the level.

    One marker series per (kind, depth) pair present in the rows; levels on
    which every arc was excluded are drawn at zero with an open marker.
    """
    fig, ax = plt.subplots(figsize=(7, 4.5))
    series: dict[tuple[str, int], tuple[list, list]] = {}
    excluded: tuple[list, list] = ([], [])
    for level, kind, depth, value in rows:
        if value is None:
            excluded[0].append(level)
            excluded[1].append(0)
        else:
            xs, ys = series.setdefault((kind, depth), ([], []))
            xs.append(level)
            ys.append(value)
    for (kind, depth), (xs, ys) in sorted(series.items()):
        ax.scatter(xs, ys, s=12, label=f"{kind}, depth {depth}")
    if excluded[0]:
        ax.scatter(*excluded, s=18, facecolors="none", edgecolors="gray",
                   label="all excluded")
    ax.set_xlabel("level (crossings with the reference arc)")
    ax.set_ylabel("min norm, non-initial family members removed")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_level_stats(stats, path: str) -> None:
    """Minimum norm and multiplicity per level, for the stats command."""
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 5.5), sharex=True)
    levels = [s.level for s in stats]
    ax1.scatter(levels, [s.minnorm for s in stats], s=12)
    ax1.set_ylabel("minimum norm")
    ax2.scatter(levels, [s.mult for s in stats], s=12, color="tab:orange")
    ax2.set_ylabel("multiplicity")
    ax2.set_xlabel("level")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
