"""Command-line interface.

Each verb runs one pipeline stage against an output directory that acts as
the working session:

    lulc-miner segment --image lulc.png --palette seeds.json --out run/
    lulc-miner stats   --image lulc.png --out run/
    lulc-miner mesh    --image lulc.png --out run/ --bins 32 --iso-frac 0.1
    lulc-miner report  --out run/
    lulc-miner serve   --port 8000
"""
from __future__ import annotations

import sys
from pathlib import Path

import click

from . import featurespace as fs
from . import raster, report as report_mod, stats as stats_mod
from .classify import SeedPalette
from .pipeline import PipelineOptions, run_pipeline
from .session import SessionStore


@click.group()
def main():
    """Visual data-mining workbench for LULC rasters."""


def _load_indexed(out: Path) -> raster.IndexedImage:
    png, cmap = out / "clustered.png", out / "clustered_map.json"
    if not png.is_file() or not cmap.is_file():
        raise click.ClickException(f"no clustered pair in {out}; run `segment` first")
    return raster.load_indexed(png, cmap)


@main.command()
@click.option("--image", "image_path", required=True, type=click.Path(exists=True))
@click.option("--palette", "palette_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--refine-means/--freeze-assignments", default=True,
              help="Refine with K-means over all foreground pixels, or keep nearest-seed assignments.")
@click.option("--bins", default=fs.DEFAULT_BINS, show_default=True)
@click.option("--iso-frac", default=fs.DEFAULT_ISO_FRACTION, show_default=True)
@click.option("--sample-n", default=fs.DEFAULT_SAMPLE_N, show_default=True)
@click.option("--seed", default=0, show_default=True)
def segment(image_path, palette_path, out_dir, refine_means, bins, iso_frac, sample_n, seed):
    """Classify and segment the image; writes the full artifact family."""
    img = raster.load_image(image_path)
    palette = SeedPalette.from_json(palette_path)
    options = PipelineOptions(
        refine_means=refine_means,
        bins_per_axis=bins,
        iso_level_fraction=iso_frac,
        sample_n=sample_n,
        rng_seed=seed,
    )
    result = run_pipeline(img, palette, options)
    from .pipeline import write_artifacts

    written = write_artifacts(out_dir, result)
    click.echo(f"wrote {len(written)} artifacts to {out_dir}")
    click.echo(stats_mod.text_report(result.stats), nl=False)


@main.command("stats")
@click.option("--image", "image_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path(exists=True))
def stats_cmd(image_path, out_dir):
    """Recompute the area report from the clustered pair in --out."""
    out = Path(out_dir)
    img = raster.load_image(image_path)
    indexed = _load_indexed(out)
    counts = stats_mod.cluster_areas(indexed)
    mean_colors = stats_mod.cluster_mean_colors(img, indexed)
    report = stats_mod.area_report(counts, 0, mean_colors=mean_colors)
    (out / "stats.json").write_text(stats_mod.stats_to_json(report))
    (out / "report.txt").write_text(stats_mod.text_report(report))
    click.echo(stats_mod.text_report(report), nl=False)


@main.command()
@click.option("--image", "image_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path(exists=True))
@click.option("--bins", default=fs.DEFAULT_BINS, show_default=True)
@click.option("--iso-frac", default=fs.DEFAULT_ISO_FRACTION, show_default=True)
@click.option("--sample-n", default=fs.DEFAULT_SAMPLE_N, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--ellipsoid", "surface_mode", flag_value="ellipsoid",
              help="Render mean-centered ellipsoids instead of density isosurfaces.")
@click.option("--iso", "surface_mode", flag_value="iso", default=True)
def mesh(image_path, out_dir, bins, iso_frac, sample_n, seed, surface_mode):
    """Rebuild feature-space meshes from the clustered pair in --out."""
    out = Path(out_dir)
    img = raster.load_image(image_path)
    indexed = _load_indexed(out)
    counts = stats_mod.cluster_areas(indexed)
    mean_colors = stats_mod.cluster_mean_colors(img, indexed)
    n_meshes = 0
    for k in range(1, indexed.n_clusters):
        if counts[k] == 0:
            continue
        sample = fs.sample_training_pixels(img, indexed, k, sample_n, seed=[seed, k])
        color = tuple(mean_colors[k])
        if surface_mode == "ellipsoid":
            m = fs.ellipsoid_mesh(fs.ClusterGaussian.from_points(sample), cluster=k, color=color)
        else:
            grid = fs.density_grid(sample, bins)
            m = fs.isosurface(grid, fs.default_iso_level(grid, iso_frac), cluster=k, color=color)
        fs.save_mesh(m, out / f"mesh_{k + 1}.json", out / f"mesh_{k + 1}.obj")
        n_meshes += 1
    click.echo(f"wrote {n_meshes} meshes to {out}")


@main.command()
@click.option("--out", "out_dir", required=True, type=click.Path(exists=True))
def report(out_dir):
    """Render the bar-chart figure and CSV from stats.json in --out."""
    out = Path(out_dir)
    stats_path = out / "stats.json"
    if not stats_path.is_file():
        raise click.ClickException(f"no stats.json in {out}; run `segment` or `stats` first")
    report = stats_mod.stats_from_json(stats_path)
    report_mod.save_bar_chart(report, out / "area_barchart.png")
    report_mod.save_stats_csv(report, out / "stats.csv")
    click.echo(f"wrote area_barchart.png and stats.csv to {out}")


@main.command()
@click.option("--port", default=None, type=int, help="Defaults to $LULC_MINER_PORT or 8000.")
@click.option("--data-dir", default=None, type=click.Path(),
              help="Session root; defaults to $LULC_MINER_DATA_DIR.")
@click.option("--static", "static_dir", default=None, type=click.Path(),
              help="Directory with the UI bundle to serve at /.")
def serve(port, data_dir, static_dir):
    """Host the workbench HTTP API (plus the static UI bundle, if given)."""
    from .server import serve as run_server

    store = SessionStore(data_dir) if data_dir else SessionStore()
    click.echo(f"session root: {store.root}")
    run_server(store, port=port, static_dir=static_dir)


if __name__ == "__main__":
    sys.exit(main())
