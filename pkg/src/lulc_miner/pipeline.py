"""End-to-end run: classify -> optional K-means refinement -> areas ->
masks/colormaps -> feature-space meshes, plus artifact persistence.

Artifacts for a k-cluster run: k logical masks, k individual colormaps,
one shared clustered pair (label PNG + colormap JSON), one stats report,
and k-1 meshes (background excluded from feature space).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from . import featurespace as fs
from . import raster, stats
from .classify import SeedPalette, classify_nearest
from .kmeans import DEFAULT_MAX_ITER, DEFAULT_TOL, KMeansResult, lloyd, wcss
from .raster import IndexedImage, RgbImage


@dataclass(frozen=True)
class PipelineOptions:
    refine_means: bool = True  # False: freeze nearest-seed assignments
    bins_per_axis: int = fs.DEFAULT_BINS
    iso_level_fraction: float = fs.DEFAULT_ISO_FRACTION
    sample_n: int = fs.DEFAULT_SAMPLE_N
    rng_seed: int = 0
    surface_mode: str = "iso"  # "iso" or "ellipsoid"
    mute_color: tuple[float, float, float] = raster.WHITE
    max_iter: int = DEFAULT_MAX_ITER
    tol: float = DEFAULT_TOL


@dataclass(frozen=True)
class PipelineResult:
    indexed: IndexedImage
    kmeans: Optional[KMeansResult]
    stats: stats.ClusterStats
    meshes: dict[int, fs.IsoMesh]  # keyed by 0-based cluster index, background absent
    grids: dict[int, fs.DensityGrid]
    iso_level: float


def _refine(img: RgbImage, indexed: IndexedImage, palette: SeedPalette, options: PipelineOptions):
    """K-means over foreground pixels, seeded at the thematic seed colors.

    Returns the (possibly relabeled) indexed image and the KMeansResult.
    Foreground points may migrate across thematic classes; background
    membership is frozen by the initial nearest-seed pass.
    """
    fg = indexed.labels.ravel() != 0
    points = img.pixels.reshape(-1, 3)[fg]
    if points.shape[0] < palette.k - 1:
        return indexed, None
    if options.refine_means:
        result = lloyd(points, palette.colors[1:], options.max_iter, options.tol)
        labels = indexed.labels.ravel().copy()
        labels[fg] = result.assignments + 1
        indexed = IndexedImage(labels.reshape(indexed.labels.shape), indexed.colormap)
    else:
        assignments = indexed.labels.ravel()[fg].astype(np.int32) - 1
        means = palette.colors[1:].copy()
        for i in range(palette.k - 1):
            members = points[assignments == i]
            if members.shape[0] > 0:
                means[i] = members.mean(axis=0)
        result = KMeansResult(
            means=means,
            assignments=assignments,
            wcss=wcss(points, assignments, means),
            iterations=0,
            converged=True,
        )
    return indexed, result


def run_pipeline(img: RgbImage, palette: SeedPalette, options: PipelineOptions = PipelineOptions()) -> PipelineResult:
    indexed = classify_nearest(img, palette)
    indexed, km = _refine(img, indexed, palette, options)

    counts = stats.cluster_areas(indexed)
    mean_colors = stats.cluster_mean_colors(img, indexed)
    report = stats.area_report(counts, 0, list(palette.labels), mean_colors)

    grids: dict[int, fs.DensityGrid] = {}
    meshes: dict[int, fs.IsoMesh] = {}
    iso_level = 0.0
    for k in range(1, palette.k):  # background excluded from feature space
        if counts[k] == 0:
            continue
        sample = fs.sample_training_pixels(
            img, indexed, k, options.sample_n, seed=[options.rng_seed, k]
        )
        grid = fs.density_grid(sample, options.bins_per_axis)
        grids[k] = grid
        color = tuple(mean_colors[k])
        if options.surface_mode == "ellipsoid":
            meshes[k] = fs.ellipsoid_mesh(
                fs.ClusterGaussian.from_points(sample), cluster=k, color=color
            )
        else:
            level = fs.default_iso_level(grid, options.iso_level_fraction)
            iso_level = max(iso_level, level)
            meshes[k] = fs.isosurface(grid, level, cluster=k, color=color)
    return PipelineResult(indexed, km, report, meshes, grids, iso_level)


def write_artifacts(out_dir: Union[str, Path], result: PipelineResult) -> list[str]:
    """Persist the full artifact family into out_dir; returns filenames written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[str] = []

    def _w(name: str):
        written.append(name)
        return out / name

    raster.save_indexed(result.indexed, _w("clustered.png"), _w("clustered_map.json"))
    raster.save_image(raster.render_indexed(result.indexed, result.indexed.colormap), _w("segmented.png"))

    k_total = result.indexed.n_clusters
    for k in range(k_total):
        raster.save_mask(raster.logical_mask(result.indexed, k), _w(f"cluster_mask_{k + 1}.png"))
        cmap = raster.individual_colormap(result.indexed.colormap, k)
        _w(f"individual_colormap_{k + 1}.json").write_text(
            json.dumps([[round(c, 10) for c in row] for row in cmap.entries.tolist()])
        )

    _w("stats.json").write_text(stats.stats_to_json(result.stats))
    _w("report.txt").write_text(stats.text_report(result.stats))

    if result.kmeans is not None:
        _w("kmeans.json").write_text(
            json.dumps(
                {
                    "means": [[round(float(c), 10) for c in m] for m in result.kmeans.means],
                    "wcss": result.kmeans.wcss,
                    "iterations": result.kmeans.iterations,
                    "converged": result.kmeans.converged,
                },
                sort_keys=True,
                indent=2,
            )
        )

    for k, mesh in sorted(result.meshes.items()):
        fs.save_mesh(mesh, _w(f"mesh_{k + 1}.json"), _w(f"mesh_{k + 1}.obj"))
    return written
