"""Per-cluster area counting and the percentage report.

Cluster 0 is the image background (null data). Thematic percentages are
reported two ways: against the whole image and against the foreground
(background-excluded) area. The human-facing listing and bar chart quote
the background against the image and the thematic clusters against the
foreground, which is how the source imagery's published numbers reconcile.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .errors import DegenerateImageError
from .raster import IndexedImage, RgbColor, RgbImage


def round_percent(x: float, places: int = 2) -> float:
    """Round half away from zero at the given number of decimals."""
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class ClusterRow:
    label: str
    count: int
    mean_color: RgbColor
    pct_of_image: float
    pct_of_foreground: Optional[float]  # None for the background row


@dataclass(frozen=True)
class ClusterStats:
    rows: tuple[ClusterRow, ...]  # index 0 = background
    image_area: int
    background_area: int
    foreground_area: int


def cluster_areas(img: IndexedImage) -> np.ndarray:
    """Pixel count per cluster index; sums to width*height."""
    return np.bincount(img.labels.ravel(), minlength=img.n_clusters)


def cluster_mean_colors(img: RgbImage, idx: IndexedImage) -> np.ndarray:
    """Centroid color of each cluster's member pixels.

    Empty clusters fall back to the colormap entry so reports stay total.
    """
    flat = img.pixels.reshape(-1, 3)
    labels = idx.labels.ravel()
    means = idx.colormap.entries.copy()
    for k in range(idx.n_clusters):
        members = flat[labels == k]
        if members.shape[0] > 0:
            means[k] = members.mean(axis=0)
    return means


_GRAY: RgbColor = (0.5, 0.5, 0.5)


def area_report(
    counts: Sequence[int],
    background_index: int = 0,
    labels: Optional[Sequence[str]] = None,
    mean_colors: Optional[np.ndarray] = None,
) -> ClusterStats:
    """Build the per-cluster area statistics from raw pixel counts.

    Only background_index == 0 is supported; the palette convention pins
    background to the first entry.
    """
    if background_index != 0:
        raise ValueError("background must be cluster 0")
    counts = [int(c) for c in counts]
    if not counts:
        raise ValueError("counts must be nonempty")
    image_area = sum(counts)
    background_area = counts[0]
    foreground_area = image_area - background_area
    if foreground_area == 0:
        raise DegenerateImageError("image is entirely background")
    if labels is None:
        labels = [f"Cluster{k + 1}" for k in range(len(counts))]
    rows = []
    for k, count in enumerate(counts):
        color = tuple(mean_colors[k]) if mean_colors is not None else _GRAY
        pct_img = 100.0 * count / image_area
        pct_fg = None if k == 0 else 100.0 * count / foreground_area
        rows.append(
            ClusterRow(
                label=labels[k],
                count=count,
                mean_color=color,
                pct_of_image=pct_img,
                pct_of_foreground=pct_fg,
            )
        )
    return ClusterStats(
        rows=tuple(rows),
        image_area=image_area,
        background_area=background_area,
        foreground_area=foreground_area,
    )


def bar_chart_series(stats: ClusterStats) -> list[tuple[str, float, RgbColor]]:
    """One (label, percent, color) bar per cluster in palette order.

    The background bar carries its share of the image; thematic bars carry
    their share of the foreground.
    """
    series = []
    for k, row in enumerate(stats.rows):
        pct = row.pct_of_image if k == 0 else row.pct_of_foreground
        series.append((row.label, pct, row.mean_color))
    return series


def text_report(stats: ClusterStats) -> str:
    """Plain-text listing in the classic area-report format."""
    fg_pct = round_percent(100.0 * stats.foreground_area / stats.image_area)
    lines = [
        f"Total image area= {stats.image_area} pixels",
        f"Background area= {stats.background_area} pixels or "
        f"{round_percent(stats.rows[0].pct_of_image):.2f}% image area (i.e Cluster1/null data)",
        f"Total LULC area= {stats.foreground_area} pixels or {fg_pct:.2f}% image area.",
    ]
    for k, row in enumerate(stats.rows[1:], start=2):
        lines.append(
            f"Cluster{k} area= {row.count} pixels or "
            f"{round_percent(row.pct_of_foreground):.2f}% image area"
        )
    return "\n".join(lines) + "\n"


def stats_to_json(stats: ClusterStats) -> str:
    """Deterministic JSON serialization (sorted keys, fixed float rendering)."""
    doc = {
        "image_area": stats.image_area,
        "background_area": stats.background_area,
        "foreground_area": stats.foreground_area,
        "clusters": [
            {
                "index": k + 1,  # human-facing 1-based, Cluster1 = background
                "label": row.label,
                "count": row.count,
                "mean_color": [round(float(c), 10) for c in row.mean_color],
                "pct_of_image": round_percent(row.pct_of_image),
                "pct_of_foreground": (
                    None if row.pct_of_foreground is None else round_percent(row.pct_of_foreground)
                ),
            }
            for k, row in enumerate(stats.rows)
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2)


def stats_from_json(source: Union[str, Path]) -> ClusterStats:
    doc = json.loads(Path(source).read_text() if not str(source).lstrip().startswith("{") else source)
    rows = tuple(
        ClusterRow(
            label=c["label"],
            count=c["count"],
            mean_color=tuple(c["mean_color"]),
            pct_of_image=c["pct_of_image"],
            pct_of_foreground=c["pct_of_foreground"],
        )
        for c in doc["clusters"]
    )
    return ClusterStats(
        rows=rows,
        image_area=doc["image_area"],
        background_area=doc["background_area"],
        foreground_area=doc["foreground_area"],
    )
