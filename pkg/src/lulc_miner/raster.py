"""Raster data model: RGB images, indexed images, logical masks, colormaps.

All color channels are normalized reals in [0, 1] (8-bit value v maps to
exactly v/255). An indexed image stores one shared label matrix plus a
k-entry colormap; per-cluster views are produced by swapping colormaps
rather than duplicating the label matrix.
"""
from __future__ import annotations

import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Union

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DimensionError, RasterFormatError

RgbColor = tuple[float, float, float]

WHITE: RgbColor = (1.0, 1.0, 1.0)


@dataclass(frozen=True)
class RgbImage:
    """Row-major RGB raster, channels normalized to [0, 1]."""

    pixels: np.ndarray  # (height, width, 3) float64

    def __post_init__(self):
        p = np.asarray(self.pixels, dtype=np.float64)
        if p.ndim != 3 or p.shape[2] != 3:
            raise DimensionError(f"expected (h, w, 3) array, got {p.shape}")
        if p.shape[0] < 1 or p.shape[1] < 1:
            raise DimensionError(f"image must be at least 1x1, got {p.shape[:2]}")
        if p.min() < 0.0 or p.max() > 1.0:
            raise ValueError("channel values must lie in [0, 1]")
        object.__setattr__(self, "pixels", p)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


@dataclass(frozen=True)
class ColorMap:
    """Ordered list of display colors, one per cluster index."""

    entries: np.ndarray  # (k, 3) float64

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=np.float64)
        if e.ndim != 2 or e.shape[1] != 3 or e.shape[0] < 1:
            raise DimensionError(f"expected (k, 3) colormap, got {e.shape}")
        if e.min() < 0.0 or e.max() > 1.0:
            raise ValueError("colormap entries must lie in [0, 1]")
        object.__setattr__(self, "entries", e)

    def __len__(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class IndexedImage:
    """Shared label matrix plus colormap (single-matrix masking layout)."""

    labels: np.ndarray  # (height, width) integer, values in [0, k)
    colormap: ColorMap

    def __post_init__(self):
        lab = np.asarray(self.labels)
        if lab.ndim != 2 or lab.shape[0] < 1 or lab.shape[1] < 1:
            raise DimensionError(f"expected (h, w) label matrix, got {lab.shape}")
        if len(self.colormap) < 2:
            raise ValueError("indexed image needs background plus at least one class")
        if lab.min() < 0 or lab.max() >= len(self.colormap):
            raise IndexError("label out of colormap range")
        object.__setattr__(self, "labels", lab.astype(np.int32))

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def n_clusters(self) -> int:
        return len(self.colormap)


@dataclass(frozen=True)
class BitMask:
    """Boolean raster marking membership of one cluster."""

    bits: np.ndarray  # (height, width) bool

    def __post_init__(self):
        b = np.asarray(self.bits, dtype=bool)
        if b.ndim != 2:
            raise DimensionError(f"expected (h, w) mask, got {b.shape}")
        object.__setattr__(self, "bits", b)

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    def popcount(self) -> int:
        return int(self.bits.sum())


def load_image(source: Union[str, Path, bytes, BinaryIO]) -> RgbImage:
    """Decode a PNG/JPEG into an RgbImage with channels in [0, 1].

    Alpha, palette, and 16-bit inputs are down-converted to 8-bit RGB.
    """
    if isinstance(source, bytes):
        source = io.BytesIO(source)
    try:
        with Image.open(source) as im:
            rgb = im.convert("RGB")
            arr = np.asarray(rgb, dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise RasterFormatError(f"cannot decode image: {exc}") from exc
    if arr.size == 0:
        raise DimensionError("image has a zero dimension")
    return RgbImage(arr.astype(np.float64) / 255.0)


def save_image(img: RgbImage, path: Union[str, Path]) -> None:
    """Write an RgbImage as a 24-bit PNG."""
    arr = np.round(img.pixels * 255.0).astype(np.uint8)
    Image.fromarray(arr, mode="RGB").save(path, format="PNG")


def render_indexed(img: IndexedImage, cmap: ColorMap) -> RgbImage:
    """Translate labels through a colormap (the imshow-with-map idiom)."""
    if len(cmap) < int(img.labels.max()) + 1:
        raise IndexError(
            f"colormap has {len(cmap)} entries, labels need {int(img.labels.max()) + 1}"
        )
    return RgbImage(cmap.entries[img.labels])


def individual_colormap(shared: ColorMap, k: int, mute: RgbColor = WHITE) -> ColorMap:
    """Colormap that keeps entry k and mutes every other entry.

    Applying each of the k individual maps to one shared label matrix
    yields the per-cluster masked renderings without duplicating the
    matrix itself.
    """
    if not 0 <= k < len(shared):
        raise IndexError(f"cluster {k} out of range for {len(shared)}-entry map")
    entries = np.tile(np.asarray(mute, dtype=np.float64), (len(shared), 1))
    entries[k] = shared.entries[k]
    return ColorMap(entries)


def logical_mask(img: IndexedImage, k: int) -> BitMask:
    """Boolean mask of pixels labeled k."""
    if not 0 <= k < img.n_clusters:
        raise IndexError(f"cluster {k} out of range for {img.n_clusters} clusters")
    return BitMask(img.labels == k)


def memory_footprint(width: int, height: int, k: int, method: int) -> dict[str, int]:
    """Element counts for the two indexed-image masking layouts.

    Method 1 stores k label matrices sharing one colormap; method 2
    stores one label matrix with k colormaps.
    """
    if width < 1 or height < 1 or k < 1:
        raise ValueError("width, height and k must be >= 1")
    if method == 1:
        index_elements = width * height * k
        colormap_elements = k * 3
    elif method == 2:
        index_elements = width * height
        colormap_elements = k * 3 * k
    else:
        raise ValueError(f"method must be 1 or 2, got {method}")
    return {
        "index_elements": index_elements,
        "colormap_elements": colormap_elements,
        "total": index_elements + colormap_elements,
    }


def save_mask(mask: BitMask, path: Union[str, Path]) -> None:
    """Write a BitMask as an 8-bit grayscale PNG (255 = member)."""
    arr = np.where(mask.bits, 255, 0).astype(np.uint8)
    Image.fromarray(arr, mode="L").save(path, format="PNG")


def load_mask(path: Union[str, Path]) -> BitMask:
    with Image.open(path) as im:
        arr = np.asarray(im.convert("L"))
    return BitMask(arr > 127)


def save_indexed(img: IndexedImage, png_path: Union[str, Path], map_path: Union[str, Path]) -> None:
    """Persist an IndexedImage as the sidecar pair: label PNG + colormap JSON."""
    if img.n_clusters > 256:
        raise ValueError("label raster limited to 256 clusters (8-bit PNG)")
    Image.fromarray(img.labels.astype(np.uint8), mode="L").save(png_path, format="PNG")
    Path(map_path).write_text(
        json.dumps([[round(c, 10) for c in row] for row in img.colormap.entries.tolist()])
    )


def load_indexed(png_path: Union[str, Path], map_path: Union[str, Path]) -> IndexedImage:
    with Image.open(png_path) as im:
        labels = np.asarray(im.convert("L"), dtype=np.int32)
    entries = np.asarray(json.loads(Path(map_path).read_text()), dtype=np.float64)
    return IndexedImage(labels, ColorMap(entries))
