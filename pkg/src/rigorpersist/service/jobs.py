"""Job execution shared by the HTTP endpoints and the in-process CLI path."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from rigorpersist.approximation import (
    COMPLETE,
    PCApprox,
    approximate,
    approximate_complex,
    greedy,
)
from rigorpersist.expressions import VectorFunction
from rigorpersist.formats import approximation_records
from rigorpersist.intervals import IntervalBox
from rigorpersist.persistence import (
    PersistenceDiagram,
    compute_persistence,
    filter_short,
    lower_star,
)
from rigorpersist.service.models import JobSpec


@dataclass
class JobOutcome:
    approx: PCApprox
    diagram: Optional[PersistenceDiagram]
    multifiltration: bool
    error_bound: Optional[float]

    @property
    def exit_code(self) -> int:
        return 0 if self.approx.status == COMPLETE else 2


def run_job(spec: JobSpec) -> JobOutcome:
    f = VectorFunction.from_strings(tuple(spec.f), tuple(spec.vars))
    B = IntervalBox.from_pairs(spec.domain)
    periodic = tuple(spec.periodic) if spec.periodic else (False,) * len(spec.domain)

    if spec.mode == "greedy":
        A, bound = greedy(f, B, spec.budget, periodic, threads=spec.threads)
        return JobOutcome(A, None, False, bound)

    if spec.mode == "approximate":
        if any(periodic):
            # periodic identification needs the face-carrying driver
            A = approximate_complex(
                f, B, spec.eps, spec.max_depth, periodic, spec.threads
            )
        else:
            A = approximate(f, B, spec.eps, spec.max_depth, spec.threads)
        return JobOutcome(A, None, False, None)

    # persist
    A = approximate_complex(f, B, spec.eps, spec.max_depth, periodic, spec.threads)
    if A.status != COMPLETE:
        return JobOutcome(A, None, False, None)
    if f.m >= 2:
        # vector-valued runs export the componentwise-min filtration instead
        return JobOutcome(A, None, True, None)
    D = compute_persistence(lower_star(A))
    D = filter_short(D, 0.0 if spec.keep_short else spec.eps)
    return JobOutcome(A, D, False, None)


def summary_dict(outcome: JobOutcome) -> dict:
    s = outcome.approx.summary()
    return {
        "status": s["status"],
        "mode": s["mode"],
        "epsilon": s["epsilon"],
        "m": outcome.approx.function.m,
        "top_cells": s["top_cells"],
        "unresolved": s["unresolved"],
        "cells_by_dim": s["cells_by_dim"],
        "error_bound": outcome.error_bound,
    }


def diagram_records(D: PersistenceDiagram) -> list:
    return [
        {"dim": dim, "birth": b, "death": ("inf" if d == math.inf else d)}
        for dim, b, d in D.points
    ]


def diagram_from_records(records) -> PersistenceDiagram:
    pts = []
    for r in records:
        d = r.death if hasattr(r, "death") else r["death"]
        dim = r.dim if hasattr(r, "dim") else r["dim"]
        b = r.birth if hasattr(r, "birth") else r["birth"]
        pts.append((dim, b, math.inf if d == "inf" else float(d)))
    return PersistenceDiagram(pts)


def cell_records(A: PCApprox) -> list:
    return list(approximation_records(A))
