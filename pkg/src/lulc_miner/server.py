"""JSON-over-HTTP workbench API.

Routes:
    POST /sessions                          upload image bytes
    GET  /sessions/{id}                     session metadata
    POST /sessions/{id}/pipeline            run classify/cluster/stats/mesh
    GET  /sessions/{id}/artifacts/{kind}[/{k}]   fetch one artifact
    GET  /healthz

Binary artifacts (PNG, OBJ) are returned with their native content types;
everything else is JSON.
"""
from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

import numpy as np
from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import PlainTextResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import pipeline as pl
from .classify import SeedPalette
from .errors import (
    ArtifactMissingError,
    DegenerateImageError,
    DimensionError,
    RasterFormatError,
    StageNotRunError,
)
from .session import SessionStore

PORT_ENV = "LULC_MINER_PORT"

_MEDIA_TYPES = {
    ".png": "image/png",
    ".json": "application/json",
    ".txt": "text/plain",
    ".obj": "text/plain",
}


class SeedEntry(BaseModel):
    label: str
    rgb: list[float] = Field(min_length=3, max_length=3)


class PipelineRequest(BaseModel):
    palette: list[SeedEntry] = Field(min_length=2)
    refine_means: bool = True
    bins_per_axis: int = 32
    iso_level_fraction: float = 0.1
    sample_n: int = 160
    rng_seed: int = 0
    surface_mode: str = "iso"


def create_app(store: Optional[SessionStore] = None, static_dir: Optional[str] = None) -> FastAPI:
    store = store or SessionStore()
    app = FastAPI(title="lulc-miner")

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        body = await request.body()
        try:
            return store.create(body)
        except (RasterFormatError, DimensionError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        try:
            return store.meta(session_id)
        except ArtifactMissingError as exc:
            raise HTTPException(status_code=404, detail=str(exc))

    @app.post("/sessions/{session_id}/pipeline")
    def run_pipeline(session_id: str, req: PipelineRequest):
        try:
            palette = SeedPalette(
                tuple(e.label for e in req.palette),
                np.array([e.rgb for e in req.palette], dtype=np.float64),
            )
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        options = pl.PipelineOptions(
            refine_means=req.refine_means,
            bins_per_axis=req.bins_per_axis,
            iso_level_fraction=req.iso_level_fraction,
            sample_n=req.sample_n,
            rng_seed=req.rng_seed,
            surface_mode=req.surface_mode,
        )
        try:
            return store.run_pipeline(session_id, palette, options)
        except ArtifactMissingError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except (DegenerateImageError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.get("/sessions/{session_id}/artifacts/{kind}")
    @app.get("/sessions/{session_id}/artifacts/{kind}/{k}")
    def get_artifact(session_id: str, kind: str, k: Optional[int] = None):
        try:
            path = store.artifact_path(session_id, kind, k)
        except StageNotRunError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except ArtifactMissingError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except ValueError as exc:
            # e.g. mesh requested for the background cluster
            raise HTTPException(status_code=400, detail=str(exc))
        media = _MEDIA_TYPES.get(path.suffix, "application/octet-stream")
        if media == "text/plain":
            return PlainTextResponse(path.read_text())
        return Response(content=path.read_bytes(), media_type=media)

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def serve(store: Optional[SessionStore] = None, port: Optional[int] = None, static_dir: Optional[str] = None):
    import uvicorn

    port = port or int(os.environ.get(PORT_ENV, "8000"))
    uvicorn.run(create_app(store, static_dir), host="127.0.0.1", port=port)
