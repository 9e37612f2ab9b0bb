"""Visual data-mining workbench for land-use/land-cover rasters."""

from .classify import SeedPalette, classify_nearest, pick_seed
from .featurespace import (
    ClusterGaussian,
    DensityGrid,
    IsoMesh,
    density_grid,
    ellipsoid_mesh,
    isosurface,
    overlap_mesh,
    sample_training_pixels,
)
from .kmeans import KMeansResult, lloyd, wcss
from .pipeline import PipelineOptions, PipelineResult, run_pipeline, write_artifacts
from .raster import (
    BitMask,
    ColorMap,
    IndexedImage,
    RgbImage,
    individual_colormap,
    load_image,
    logical_mask,
    memory_footprint,
    render_indexed,
)
from .session import SessionStore
from .stats import ClusterStats, area_report, bar_chart_series, cluster_areas

__version__ = "0.1.0"

__all__ = [
    "BitMask",
    "ClusterGaussian",
    "ClusterStats",
    "ColorMap",
    "DensityGrid",
    "IndexedImage",
    "IsoMesh",
    "KMeansResult",
    "PipelineOptions",
    "PipelineResult",
    "RgbImage",
    "SeedPalette",
    "SessionStore",
    "area_report",
    "bar_chart_series",
    "classify_nearest",
    "cluster_areas",
    "density_grid",
    "ellipsoid_mesh",
    "individual_colormap",
    "isosurface",
    "lloyd",
    "load_image",
    "logical_mask",
    "memory_footprint",
    "overlap_mesh",
    "pick_seed",
    "render_indexed",
    "run_pipeline",
    "sample_training_pixels",
    "wcss",
    "write_artifacts",
]
