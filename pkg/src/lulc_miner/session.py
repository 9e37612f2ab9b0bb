"""Session store: one directory per session, atomic artifact swaps.

Layout under the data root:

    sessions/<id>/
      source.bin          uploaded image bytes, verbatim
      meta.json           id, dimensions, timestamps, pipeline options
      artifacts/          written by the pipeline via staging + rename

A killed pipeline never leaves artifacts/ half-written: everything goes
into a staging directory first and is renamed into place on success.
"""
from __future__ import annotations

import json
import os
import shutil
import time
import uuid
from dataclasses import asdict
from pathlib import Path
from typing import Optional, Union

from filelock import FileLock

from . import pipeline as pl
from . import raster
from .classify import SeedPalette
from .errors import ArtifactMissingError, StageNotRunError

DATA_DIR_ENV = "LULC_MINER_DATA_DIR"


def default_data_dir() -> Path:
    return Path(os.environ.get(DATA_DIR_ENV, Path.home() / ".lulc_miner"))


class SessionStore:
    def __init__(self, root: Optional[Union[str, Path]] = None):
        self.root = Path(root) if root is not None else default_data_dir()
        (self.root / "sessions").mkdir(parents=True, exist_ok=True)

    def _dir(self, session_id: str) -> Path:
        d = self.root / "sessions" / session_id
        if not d.is_dir():
            raise ArtifactMissingError(f"no such session: {session_id}")
        return d

    def _lock(self, session_id: str) -> FileLock:
        return FileLock(self.root / "sessions" / f"{session_id}.lock")

    def create(self, image_bytes: bytes) -> dict:
        """Decode-validate and persist a new session; returns its metadata."""
        img = raster.load_image(image_bytes)  # raises on undecodable input
        session_id = uuid.uuid4().hex
        d = self.root / "sessions" / session_id
        d.mkdir(parents=True)
        (d / "source.bin").write_bytes(image_bytes)
        meta = {
            "id": session_id,
            "width": img.width,
            "height": img.height,
            "pixels": img.width * img.height,
            "created": time.time(),
            "modified": time.time(),
            "stages": {"classified": False},
        }
        (d / "meta.json").write_text(json.dumps(meta, sort_keys=True, indent=2))
        return meta

    def meta(self, session_id: str) -> dict:
        return json.loads((self._dir(session_id) / "meta.json").read_text())

    def load_source(self, session_id: str) -> raster.RgbImage:
        return raster.load_image((self._dir(session_id) / "source.bin").read_bytes())

    def run_pipeline(
        self, session_id: str, palette: SeedPalette, options: pl.PipelineOptions = pl.PipelineOptions()
    ) -> dict:
        """Execute the full pipeline; artifacts land atomically or not at all."""
        d = self._dir(session_id)
        with self._lock(session_id):
            img = self.load_source(session_id)
            result = pl.run_pipeline(img, palette, options)

            staging = d / f".staging-{uuid.uuid4().hex}"
            try:
                written = pl.write_artifacts(staging, result)
                palette.to_json(staging / "palette.json")
                written.append("palette.json")
                old = d / ".artifacts-old"
                if (d / "artifacts").exists():
                    os.rename(d / "artifacts", old)
                os.rename(staging, d / "artifacts")
                if old.exists():
                    shutil.rmtree(old)
            except BaseException:
                shutil.rmtree(staging, ignore_errors=True)
                raise

            meta = self.meta(session_id)
            meta["modified"] = time.time()
            meta["stages"] = {"classified": True}
            meta["options"] = asdict(options)
            meta["artifacts"] = sorted(written)
            meta["n_clusters"] = palette.k
            (d / "meta.json").write_text(json.dumps(meta, sort_keys=True, indent=2))
            return meta

    def artifact_path(self, session_id: str, kind: str, k: Optional[int] = None) -> Path:
        """Resolve an artifact by kind and optional 1-based cluster index.

        kinds: clustered, clustered_map, segmented, stats, report, kmeans,
        palette, mask, colormap, mesh, mesh_obj.
        """
        d = self._dir(session_id)
        art = d / "artifacts"
        if not art.is_dir():
            raise StageNotRunError("pipeline has not run for this session")
        unscoped = {
            "clustered": "clustered.png",
            "clustered_map": "clustered_map.json",
            "segmented": "segmented.png",
            "stats": "stats.json",
            "report": "report.txt",
            "kmeans": "kmeans.json",
            "palette": "palette.json",
        }
        if kind in unscoped:
            path = art / unscoped[kind]
        elif kind in ("mask", "colormap", "mesh", "mesh_obj"):
            if k is None:
                raise ArtifactMissingError(f"kind {kind} needs a cluster index")
            if kind in ("mesh", "mesh_obj") and k == 1:
                raise ValueError("background cluster has no feature-space mesh")
            name = {
                "mask": f"cluster_mask_{k}.png",
                "colormap": f"individual_colormap_{k}.json",
                "mesh": f"mesh_{k}.json",
                "mesh_obj": f"mesh_{k}.obj",
            }[kind]
            path = art / name
        else:
            raise ArtifactMissingError(f"unknown artifact kind: {kind}")
        if not path.is_file():
            raise ArtifactMissingError(f"artifact not found: {path.name}")
        return path

    def get_artifact(self, session_id: str, kind: str, k: Optional[int] = None) -> bytes:
        return self.artifact_path(session_id, kind, k).read_bytes()
