"""File formats: JSONL dumps of approximations and diagram JSON/CSV files.

All serialization here is deterministic (sorted keys, stable cell order) so
identical runs produce byte-identical outputs.
"""

from __future__ import annotations

import json

from rigorpersist.cwcomplex import dump_records
from rigorpersist.persistence import PersistenceDiagram


def _open_sink(sink, mode="w"):
    if isinstance(sink, (str, bytes)) or hasattr(sink, "__fspath__"):
        return open(sink, mode), True
    return sink, False


def approximation_header(A) -> dict:
    return {
        "kind": "approximation",
        "mode": A.mode,
        "status": A.status,
        "epsilon": A.epsilon,
        "m": A.function.m,
        "domain": [[c.lo, c.hi] for c in A.domain],
        "periodic": list(A.periodic),
        "top_cells": A.top_cell_count(),
        "unresolved": len(A.unresolved),
        "cells_by_dim": A.summary()["cells_by_dim"],
    }


def approximation_records(A):
    if A.complex is not None:
        yield from dump_records(A.complex)
        return
    # partition mode has no face bookkeeping: synthesize stable ids
    rects = sorted(A.rectangles, key=lambda r: r.axes)
    for i, r in enumerate(rects):
        yield {
            "id": i,
            "dim": r.dim,
            "axes": [[b, e] for b, e in r.axes],
            "value": list(r.value) if r.value is not None else None,
            "boundary": [],
        }


def dump_approximation(A, sink) -> None:
    """Header line, then one JSON record per cell (value null when unvalued)."""
    fh, own = _open_sink(sink)
    try:
        fh.write(json.dumps(approximation_header(A), sort_keys=True) + "\n")
        for rec in approximation_records(A):
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    finally:
        if own:
            fh.close()


def write_diagram(D: PersistenceDiagram, sink, fmt: str = "json",
                  include_zero: bool = False) -> None:
    fh, own = _open_sink(sink)
    try:
        if fmt == "json":
            fh.write(D.to_json(include_zero=include_zero) + "\n")
        elif fmt == "csv":
            fh.write(D.to_csv(include_zero=include_zero))
        else:
            raise ValueError(f"unknown diagram format {fmt!r}")
    finally:
        if own:
            fh.close()


def read_diagram(source) -> PersistenceDiagram:
    """Diagram from a JSON file path or file object."""
    fh, own = _open_sink(source, "r")
    try:
        return PersistenceDiagram.from_json(fh.read())
    finally:
        if own:
            fh.close()
