"""Request/response schemas for the HTTP service and the in-process runner."""

from __future__ import annotations

import math
import re
from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class JobSpec(BaseModel):
    """One approximation/persistence job.

    Exactly one of eps (approximate, persist) or budget (greedy) is set;
    distance is not a job mode, it compares two finished diagrams.
    """

    f: list[str] = Field(min_length=1)
    vars: list[str] = Field(min_length=1)
    domain: list[tuple[float, float]]
    mode: Literal["approximate", "persist", "greedy", "distance"]
    eps: Optional[float] = None
    budget: Optional[int] = None
    max_depth: int = 30
    periodic: Optional[list[bool]] = None
    keep_short: bool = False
    threads: int = 1
    include_cells: bool = False

    @model_validator(mode="after")
    def _check(self):
        if self.mode == "distance":
            raise ValueError(
                "mode 'distance' compares two diagram files; use the distance "
                "subcommand (or POST /distance) instead of a function job"
            )
        for name in self.vars:
            if not _IDENT.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable names")
        if len(self.domain) != len(self.vars):
            raise ValueError(
                f"domain has {len(self.domain)} intervals for {len(self.vars)} variables"
            )
        for lo, hi in self.domain:
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError(f"bad domain interval [{lo}, {hi}]")
        if self.periodic is not None and len(self.periodic) != len(self.domain):
            raise ValueError("periodic flags must match the domain dimension")
        if self.mode in ("approximate", "persist"):
            if self.eps is None:
                raise ValueError(f"mode {self.mode!r} requires eps")
            if self.budget is not None:
                raise ValueError(f"mode {self.mode!r} takes eps, not budget")
            if not (math.isfinite(self.eps) and self.eps > 0):
                raise ValueError(f"eps must be positive and finite, got {self.eps}")
        else:  # greedy
            if self.budget is None:
                raise ValueError("mode 'greedy' requires budget")
            if self.eps is not None:
                raise ValueError("mode 'greedy' takes budget, not eps")
            if self.budget < 0:
                raise ValueError(f"budget must be >= 0, got {self.budget}")
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        return self


class CellRecord(BaseModel):
    id: int
    dim: int
    axes: list[tuple[float, float]]
    value: Optional[list[float]]
    boundary: list[int]


class DiagramPoint(BaseModel):
    dim: int
    birth: float
    death: float | Literal["inf"]


class RunSummary(BaseModel):
    status: str
    mode: str
    epsilon: float
    m: int
    top_cells: int
    unresolved: int
    cells_by_dim: list[int]
    error_bound: Optional[float] = None


class RunResponse(BaseModel):
    summary: RunSummary
    diagram: Optional[list[DiagramPoint]] = None
    multifiltration: bool = False
    cells: Optional[list[CellRecord]] = None


class DistanceRequest(BaseModel):
    a: list[DiagramPoint]
    b: list[DiagramPoint]
    metric: Literal["bottleneck", "wasserstein"] = "bottleneck"
    q: float = 2.0

    @model_validator(mode="after")
    def _check(self):
        if self.metric == "wasserstein" and self.q < 1:
            raise ValueError(f"q must be >= 1, got {self.q}")
        return self


class DistanceResponse(BaseModel):
    metric: str
    distance: float | Literal["inf"]


class Health(BaseModel):
    status: str
    version: str
