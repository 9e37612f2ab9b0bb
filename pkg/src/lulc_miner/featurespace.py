"""3D RGB feature-space geometry: sampled clouds, density grids,
marching-cubes isosurfaces, mean-centered ellipsoids, and overlap surfaces.

Density is a plain 3D histogram over the RGB unit cube, box-smoothed once
before surfacing. Mesh vertices live in RGB coordinates (cell centers), so
surfaces drop straight into an RGB-axes scene.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np
from scipy import ndimage
from skimage import measure

from .errors import DegenerateClusterError, EmptySampleError
from .raster import IndexedImage, RgbColor, RgbImage

DEFAULT_BINS = 32
DEFAULT_SAMPLE_N = 160
DEFAULT_ISO_FRACTION = 0.1


@dataclass(frozen=True)
class DensityGrid:
    """Histogram counts over the RGB unit cube."""

    cells: np.ndarray  # (bins, bins, bins) float64 counts

    def __post_init__(self):
        c = np.asarray(self.cells, dtype=np.float64)
        if c.ndim != 3 or len(set(c.shape)) != 1 or c.shape[0] < 2:
            raise ValueError(f"expected cubic grid with >=2 bins/axis, got {c.shape}")
        object.__setattr__(self, "cells", c)

    @property
    def bins_per_axis(self) -> int:
        return self.cells.shape[0]

    @property
    def total_points(self) -> int:
        return int(round(self.cells.sum()))


@dataclass(frozen=True)
class IsoMesh:
    """Triangle mesh of one cluster's feature-space surface."""

    vertices: np.ndarray  # (v, 3) RGB-space positions
    triangles: np.ndarray  # (t, 3) vertex indices
    color: RgbColor
    cluster: int

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=np.float64).reshape(-1, 3)
        t = np.asarray(self.triangles, dtype=np.int64).reshape(-1, 3)
        if t.size and (t.min() < 0 or t.max() >= v.shape[0]):
            raise IndexError("triangle index out of vertex range")
        if not np.isfinite(v).all():
            raise ValueError("mesh vertices must be finite")
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "triangles", t)

    @property
    def is_empty(self) -> bool:
        return self.triangles.shape[0] == 0


@dataclass(frozen=True)
class ClusterGaussian:
    """Mean and covariance of one cluster's color cloud."""

    mean: np.ndarray  # (3,)
    covariance: np.ndarray  # (3, 3) symmetric PSD

    def __post_init__(self):
        m = np.asarray(self.mean, dtype=np.float64).reshape(3)
        c = np.asarray(self.covariance, dtype=np.float64).reshape(3, 3)
        if np.abs(c - c.T).max() > 1e-12:
            raise ValueError("covariance must be symmetric")
        if np.linalg.eigvalsh(c).min() < -1e-12:
            raise ValueError("covariance must be positive semi-definite")
        object.__setattr__(self, "mean", m)
        object.__setattr__(self, "covariance", c)

    @classmethod
    def from_points(cls, points: np.ndarray) -> "ClusterGaussian":
        points = np.asarray(points, dtype=np.float64)
        mean = points.mean(axis=0)
        if points.shape[0] < 2:
            cov = np.zeros((3, 3))
        else:
            cov = np.cov(points, rowvar=False)
        # symmetrize against floating-point drift in np.cov
        cov = 0.5 * (cov + cov.T)
        return cls(mean, cov)


def sample_training_pixels(
    img: RgbImage,
    idx: IndexedImage,
    k: int,
    n: int = DEFAULT_SAMPLE_N,
    seed=None,
) -> np.ndarray:
    """Uniform sample without replacement of min(n, |cluster k|) member colors."""
    if not 0 <= k < idx.n_clusters:
        raise IndexError(f"cluster {k} out of range")
    members = np.flatnonzero(idx.labels.ravel() == k)
    if members.size == 0:
        raise EmptySampleError(f"cluster {k} has no member pixels")
    take = min(n, members.size)
    rng = np.random.default_rng(seed)
    chosen = rng.choice(members, size=take, replace=False)
    return img.pixels.reshape(-1, 3)[chosen]


def density_grid(points: np.ndarray, bins_per_axis: int = DEFAULT_BINS) -> DensityGrid:
    """3D histogram of RGB points; upper cube boundary falls in the last bin."""
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    if points.size and (points.min() < 0.0 or points.max() > 1.0):
        raise ValueError("points must lie inside the RGB unit cube")
    edges = np.linspace(0.0, 1.0, bins_per_axis + 1)
    cells, _ = np.histogramdd(points, bins=(edges, edges, edges))
    return DensityGrid(cells)


def smooth_grid(grid: DensityGrid) -> DensityGrid:
    """One pass of 3x3x3 box smoothing (zero-padded at the cube faces)."""
    return DensityGrid(ndimage.uniform_filter(grid.cells, size=3, mode="constant"))


def isosurface(
    grid: DensityGrid,
    level: float,
    cluster: int = 0,
    color: RgbColor = (0.5, 0.5, 0.5),
    smooth: bool = True,
) -> IsoMesh:
    """Marching-cubes surface of the (smoothed) density field at `level`.

    Vertices interpolate along cell edges and are mapped to RGB space via
    cell centers. An empty level set yields an empty mesh.
    """
    if not np.isfinite(level) or level <= 0:
        raise ValueError(f"iso level must be positive, got {level}")
    field = smooth_grid(grid).cells if smooth else grid.cells
    if field.max() <= level:
        return IsoMesh(np.zeros((0, 3)), np.zeros((0, 3), dtype=np.int64), color, cluster)
    # pad with zeros so level sets touching the cube faces still close up
    padded = np.pad(field, 1, mode="constant")
    verts, faces, _, _ = measure.marching_cubes(padded, level=level, gradient_direction="descent")
    cell_width = 1.0 / grid.bins_per_axis
    verts_rgb = (verts - 1.0 + 0.5) * cell_width  # undo pad, index -> cell center
    return IsoMesh(verts_rgb, faces, color, cluster)


def default_iso_level(grid: DensityGrid, fraction: float = DEFAULT_ISO_FRACTION) -> float:
    """Level at a fraction of the smoothed grid's maximum."""
    return float(smooth_grid(grid).cells.max()) * fraction


def overlap_mesh(
    a: DensityGrid,
    b: DensityGrid,
    level: float,
    cluster: int = -1,
    color: RgbColor = (0.5, 0.5, 0.5),
    smooth: bool = True,
) -> IsoMesh:
    """Surface of the region where both clusters have density >= level."""
    if a.bins_per_axis != b.bins_per_axis:
        raise ValueError("grids must share bins_per_axis")
    return isosurface(DensityGrid(np.minimum(a.cells, b.cells)), level, cluster, color, smooth)


# icosahedron base for the ellipsoid tessellation
_PHI = (1.0 + np.sqrt(5.0)) / 2.0
_ICO_VERTS = np.array(
    [
        (-1, _PHI, 0), (1, _PHI, 0), (-1, -_PHI, 0), (1, -_PHI, 0),
        (0, -1, _PHI), (0, 1, _PHI), (0, -1, -_PHI), (0, 1, -_PHI),
        (_PHI, 0, -1), (_PHI, 0, 1), (-_PHI, 0, -1), (-_PHI, 0, 1),
    ],
    dtype=np.float64,
)
_ICO_FACES = np.array(
    [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ],
    dtype=np.int64,
)


def unit_sphere_mesh(subdivisions: int = 2) -> tuple[np.ndarray, np.ndarray]:
    """Icosphere: subdivide an icosahedron and project onto the unit sphere."""
    verts = _ICO_VERTS / np.linalg.norm(_ICO_VERTS, axis=1, keepdims=True)
    faces = _ICO_FACES.copy()
    for _ in range(subdivisions):
        verts_list = list(verts)
        midpoint_cache: dict[tuple[int, int], int] = {}

        def midpoint(i: int, j: int) -> int:
            key = (min(i, j), max(i, j))
            if key not in midpoint_cache:
                m = verts_list[i] + verts_list[j]
                verts_list.append(m / np.linalg.norm(m))
                midpoint_cache[key] = len(verts_list) - 1
            return midpoint_cache[key]

        new_faces = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            new_faces += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        verts = np.array(verts_list)
        faces = np.array(new_faces, dtype=np.int64)
    return verts, faces


RIDGE = 1e-6


def ellipsoid_mesh(
    g: ClusterGaussian,
    scale: float = 1.0,
    subdivisions: int = 2,
    cluster: int = 0,
    color: RgbColor = (0.5, 0.5, 0.5),
) -> IsoMesh:
    """Tessellated surface {x : (x - mean)' inv(cov) (x - mean) = scale^2}.

    Singular covariances get a ridge of RIDGE*I; clusters with zero spread
    (exact nearest-color mapping) then render as small spheres whose radius
    comes from scale alone.
    """
    if scale <= 0:
        raise ValueError("scale must be positive")
    cov = g.covariance
    if np.linalg.eigvalsh(cov).min() < RIDGE:
        cov = cov + RIDGE * np.eye(3)
    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise DegenerateClusterError("covariance singular beyond ridge repair") from exc
    sphere_verts, faces = unit_sphere_mesh(subdivisions)
    verts = g.mean + scale * (sphere_verts @ chol.T)
    return IsoMesh(verts, faces, color, cluster)


def mesh_to_json(mesh: IsoMesh) -> str:
    doc = {
        "vertices": [[round(float(c), 8) for c in v] for v in mesh.vertices],
        "triangles": [[int(i) for i in t] for t in mesh.triangles],
        "color": [round(float(c), 8) for c in mesh.color],
        "cluster": mesh.cluster,
    }
    return json.dumps(doc, sort_keys=True)


def mesh_from_json(text: str) -> IsoMesh:
    doc = json.loads(text)
    return IsoMesh(
        np.array(doc["vertices"], dtype=np.float64).reshape(-1, 3),
        np.array(doc["triangles"], dtype=np.int64).reshape(-1, 3),
        tuple(doc["color"]),
        doc["cluster"],
    )


def mesh_to_obj(mesh: IsoMesh) -> str:
    """Wavefront OBJ text (positions and faces only; 1-based indices)."""
    lines = [f"v {v[0]:.8f} {v[1]:.8f} {v[2]:.8f}" for v in mesh.vertices]
    lines += [f"f {t[0] + 1} {t[1] + 1} {t[2] + 1}" for t in mesh.triangles]
    return "\n".join(lines) + "\n"


def save_mesh(mesh: IsoMesh, json_path: Union[str, Path], obj_path: Optional[Union[str, Path]] = None) -> None:
    Path(json_path).write_text(mesh_to_json(mesh))
    if obj_path is not None:
        Path(obj_path).write_text(mesh_to_obj(mesh))
