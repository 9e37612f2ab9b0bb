"""Seed picking and nearest-mean pixel classification.

Each pixel is labeled with the palette entry whose color is closest in
squared Euclidean RGB distance; ties break toward the lowest index so
results are deterministic. Palette entry 0 is the image background
(null data) by convention.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .raster import ColorMap, IndexedImage, RgbColor, RgbImage


@dataclass(frozen=True)
class SeedPalette:
    """Ordered user-picked class colors; entry 0 is background/null data."""

    labels: tuple[str, ...]
    colors: np.ndarray  # (k, 3) float64

    def __post_init__(self):
        c = np.asarray(self.colors, dtype=np.float64)
        if c.ndim != 2 or c.shape[1] != 3:
            raise ValueError(f"expected (k, 3) seed colors, got {c.shape}")
        if len(self.labels) != c.shape[0]:
            raise ValueError("label count does not match color count")
        if c.shape[0] < 2:
            raise ValueError("palette needs background plus at least one class")
        if len({tuple(row) for row in c.tolist()}) != c.shape[0]:
            raise ValueError("seed colors must be pairwise distinct")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "colors", c)

    @property
    def k(self) -> int:
        return self.colors.shape[0]

    def colormap(self) -> ColorMap:
        return ColorMap(self.colors.copy())

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[str, RgbColor]]) -> "SeedPalette":
        return cls(tuple(p[0] for p in pairs), np.array([p[1] for p in pairs]))

    @classmethod
    def from_json(cls, source: Union[str, Path]) -> "SeedPalette":
        """Load from a JSON array of {label, rgb:[r,g,b]}; first entry is background."""
        data = json.loads(Path(source).read_text())
        return cls(
            tuple(entry["label"] for entry in data),
            np.array([entry["rgb"] for entry in data], dtype=np.float64),
        )

    def to_json(self, path: Union[str, Path]) -> None:
        entries = [
            {"label": lab, "rgb": [float(c) for c in rgb]}
            for lab, rgb in zip(self.labels, self.colors)
        ]
        Path(path).write_text(json.dumps(entries, indent=2))


def pick_seed(img: RgbImage, x: int, y: int, neighborhood_mean: bool = False) -> RgbColor:
    """Color at column x, row y; optionally the mean of the 3x3 neighborhood.

    The neighborhood is clipped at image borders, so corner picks average
    the 4 available pixels.
    """
    if not (0 <= x < img.width and 0 <= y < img.height):
        raise IndexError(f"({x}, {y}) outside {img.width}x{img.height} image")
    if neighborhood_mean:
        y0, y1 = max(0, y - 1), min(img.height, y + 2)
        x0, x1 = max(0, x - 1), min(img.width, x + 2)
        patch = img.pixels[y0:y1, x0:x1].reshape(-1, 3)
        return tuple(patch.mean(axis=0))
    return tuple(img.pixels[y, x])


def classify_nearest(img: RgbImage, palette: SeedPalette) -> IndexedImage:
    """Assign every pixel to its nearest seed color (squared Euclidean).

    np.argmin returns the first minimum, which realizes the
    lowest-index tie rule.
    """
    flat = img.pixels.reshape(-1, 3)
    # (n, k) squared distances; n*k floats is fine at the image sizes in scope
    d2 = ((flat[:, None, :] - palette.colors[None, :, :]) ** 2).sum(axis=2)
    labels = np.argmin(d2, axis=1).astype(np.int32).reshape(img.height, img.width)
    return IndexedImage(labels, palette.colormap())
