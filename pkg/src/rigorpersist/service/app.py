"""HTTP service exposing the approximation and persistence pipelines."""

from __future__ import annotations

import math

from fastapi import FastAPI, HTTPException

from rigorpersist import __version__
from rigorpersist.errors import DomainViolation, RigorPersistError
from rigorpersist.metrics import bottleneck, wasserstein
from rigorpersist.service.jobs import (
    cell_records,
    diagram_from_records,
    diagram_records,
    run_job,
    summary_dict,
)
from rigorpersist.service.models import (
    DistanceRequest,
    DistanceResponse,
    Health,
    JobSpec,
    RunResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="rigorpersist", version=__version__)

    @app.get("/health", response_model=Health)
    def health():
        return Health(status="ok", version=__version__)

    def _run(spec: JobSpec, mode: str) -> RunResponse:
        if spec.mode != mode:
            raise HTTPException(
                status_code=422,
                detail=f"this endpoint runs mode {mode!r}, request says {spec.mode!r}",
            )
        try:
            out = run_job(spec)
        except (RigorPersistError, ValueError) as err:
            detail = str(err)
            if isinstance(err, DomainViolation) and err.cell_axes is not None:
                detail += f" (cell {err.cell_axes})"
            raise HTTPException(status_code=422, detail=detail)
        return RunResponse(
            summary=summary_dict(out),
            diagram=diagram_records(out.diagram) if out.diagram is not None else None,
            multifiltration=out.multifiltration,
            cells=cell_records(out.approx) if spec.include_cells else None,
        )

    @app.post("/approximate", response_model=RunResponse)
    def ep_approximate(spec: JobSpec):
        return _run(spec, "approximate")

    @app.post("/persist", response_model=RunResponse)
    def ep_persist(spec: JobSpec):
        return _run(spec, "persist")

    @app.post("/greedy", response_model=RunResponse)
    def ep_greedy(spec: JobSpec):
        return _run(spec, "greedy")

    @app.post("/distance", response_model=DistanceResponse)
    def ep_distance(req: DistanceRequest):
        A = diagram_from_records(req.a)
        B = diagram_from_records(req.b)
        if req.metric == "bottleneck":
            d = bottleneck(A, B)
        else:
            d = wasserstein(A, B, req.q)
        return DistanceResponse(
            metric=req.metric, distance="inf" if d == math.inf else d
        )

    return app


app = create_app()
