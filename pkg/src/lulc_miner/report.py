"""Report rendering: area bar chart figure and delimited stats output."""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .stats import ClusterStats, bar_chart_series, round_percent


def save_bar_chart(stats: ClusterStats, path: Union[str, Path]) -> None:
    """Percent-area bar chart, one bar per cluster in its display color.

    Cluster 1 (background) shows percent of the whole image; thematic
    clusters show percent of the foreground area.
    """
    series = bar_chart_series(stats)
    labels = [f"{i + 1}: {label}" for i, (label, _, _) in enumerate(series)]
    values = [pct for _, pct, _ in series]
    colors = [color for _, _, color in series]

    fig, ax = plt.subplots(figsize=(8, 4.5))
    bars = ax.bar(range(len(values)), values, color=colors, edgecolor="black", linewidth=0.5)
    ax.bar_label(bars, fmt="%.2f")
    ax.set_xticks(range(len(values)))
    ax.set_xticklabels(labels, rotation=30, ha="right")
    ax.set_ylabel("Area (%)")
    ax.set_title("Percent area of color class clusters (cluster 1 is image background)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_stats_csv(stats: ClusterStats, path: Union[str, Path]) -> None:
    """Per-cluster table: index, label, pixel count, both percent families, color."""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(
            ["cluster", "label", "pixels", "pct_of_image", "pct_of_foreground", "red", "green", "blue"]
        )
        for k, row in enumerate(stats.rows):
            writer.writerow(
                [
                    k + 1,
                    row.label,
                    row.count,
                    f"{round_percent(row.pct_of_image):.2f}",
                    "" if row.pct_of_foreground is None else f"{round_percent(row.pct_of_foreground):.2f}",
                    f"{row.mean_color[0]:.5f}",
                    f"{row.mean_color[1]:.5f}",
                    f"{row.mean_color[2]:.5f}",
                ]
            )
