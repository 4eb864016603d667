"""Lower-star filtration of a valued complex and persistent homology over Z2.

The approximation values only top-dimensional cells. The lower-star rule
extends them downward: every cell receives the minimum value over the top
cells containing it, so each sublevel set {val <= a} is a subcomplex and the
filtration realizes the sublevel filtration of the lower semi-continuous step
function.

Persistence is computed by the standard column reduction of the Z2 boundary
matrix in filtration order (value, then dimension, then cell id). A cell's Z2
boundary is the set of its primary faces; after any sequence of subdivisions
each codimension-2 cell of the closure is shared by exactly two of those
faces, so d(d(c)) = 0 holds combinatorially. Pairs with equal birth and death
value are kept internally but hidden from the default diagram.
"""

from __future__ import annotations

import json
import math

from rigorpersist.cwcomplex import RectComplex
from rigorpersist.errors import IncompleteApproximation, NonMonotoneFiltration

INF = math.inf


class Filtration:
    """Cells of a complex ordered by (value, dim, id), with per-cell values."""

    def __init__(self, complex_: RectComplex, values: dict):
        missing = [cid for cid in complex_.cells if cid not in values]
        if missing:
            raise ValueError(f"{len(missing)} cells lack filtration values")
        self.complex = complex_
        self.values = dict(values)
        self.order = sorted(
            complex_.cells,
            key=lambda cid: (self.values[cid], complex_.cells[cid].dim, cid),
        )
        self.position = {cid: i for i, cid in enumerate(self.order)}


def lower_star(A) -> Filtration:
    """Extend top-cell values to all cells by min over containing top cells."""
    if A.status != "Complete":
        raise IncompleteApproximation("lower_star requires a Complete approximation")
    if A.complex is None:
        raise ValueError("lower_star needs a complex-backed approximation")
    if A.function.m != 1:
        raise ValueError("vector-valued approximation: use export_multifiltration")
    cx = A.complex
    values = {}
    for cid in cx.top_cells():
        values[cid] = cx.cells[cid].value[0]
    # propagate downward one dimension at a time: a face's top cofaces are the
    # union of its cofaces' top cofaces
    for k in range(cx.ambient_dim, 0, -1):
        for cid in cx.cells_of_dim(k):
            v = values[cid]
            for f in cx.boundary[cid]:
                prev = values.get(f)
                if prev is None or v < prev:
                    values[f] = v
    return Filtration(cx, values)


def export_multifiltration(A, sink) -> None:
    """Dump the complex with vector values extended by componentwise min.

    The output is one JSON record per line: a header with the run metadata,
    then each cell with its id, dimension, axes, m-vector value, and boundary
    ids, for consumption by external multiparameter-persistence tools.
    """
    if A.status != "Complete":
        raise IncompleteApproximation(
            "export_multifiltration requires a Complete approximation"
        )
    if A.complex is None:
        raise ValueError("export_multifiltration needs a complex-backed approximation")
    m = A.function.m
    if m < 2:
        raise ValueError("scalar-valued approximation: use lower_star")
    cx = A.complex
    values = {cid: list(cx.cells[cid].value) for cid in cx.top_cells()}
    for k in range(cx.ambient_dim, 0, -1):
        for cid in cx.cells_of_dim(k):
            v = values[cid]
            for f in cx.boundary[cid]:
                prev = values.get(f)
                if prev is None:
                    values[f] = list(v)
                else:
                    for i in range(m):
                        if v[i] < prev[i]:
                            prev[i] = v[i]
    own = isinstance(sink, (str, bytes)) or hasattr(sink, "__fspath__")
    fh = open(sink, "w") if own else sink
    try:
        header = {
            "kind": "multifiltration",
            "m": m,
            "epsilon": A.epsilon,
            "status": A.status,
            "cells_by_dim": cx.counts(),
        }
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for cid in sorted(cx.cells):
            cell = cx.cells[cid]
            rec = {
                "id": cid,
                "dim": cell.dim,
                "axes": [[b, e] for b, e in cell.axes],
                "value": values[cid],
                "boundary": sorted(cx.boundary[cid]),
            }
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    finally:
        if own:
            fh.close()


class PersistenceDiagram:
    """Multiset of (dim, birth, death) triples, death possibly +inf.

    ``all_points`` keeps zero-persistence pairs; ``points`` hides them, which
    is the default everywhere a diagram is shown or serialized.
    """

    def __init__(self, points):
        pts = []
        for dim, b, d in points:
            b = float(b)
            d = float(d)
            if d < b:
                raise ValueError(f"death {d} precedes birth {b}")
            pts.append((int(dim), b, d))
        self.all_points = sorted(pts)

    @property
    def points(self):
        return [p for p in self.all_points if p[2] > p[1]]

    def in_dim(self, k: int, include_zero: bool = False):
        src = self.all_points if include_zero else self.points
        return [(b, d) for dim, b, d in src if dim == k]

    def essential(self):
        return [p for p in self.all_points if p[2] == INF]

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        return isinstance(other, PersistenceDiagram) and self.all_points == other.all_points

    def __repr__(self):
        return f"PersistenceDiagram({self.points!r})"

    def to_json(self, include_zero: bool = False) -> str:
        src = self.all_points if include_zero else self.points
        recs = [
            {"dim": dim, "birth": b, "death": ("inf" if d == INF else d)}
            for dim, b, d in src
        ]
        return json.dumps(recs, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "PersistenceDiagram":
        recs = json.loads(text)
        pts = []
        for r in recs:
            d = r["death"]
            pts.append((r["dim"], r["birth"], INF if d == "inf" else float(d)))
        return cls(pts)

    def to_csv(self, include_zero: bool = False) -> str:
        src = self.all_points if include_zero else self.points
        lines = ["dim,birth,death"]
        for dim, b, d in src:
            lines.append(f"{dim},{b!r},{'inf' if d == INF else repr(d)}")
        return "\n".join(lines) + "\n"


def _xor(a, b):
    """Symmetric difference of two ascending int lists, ascending."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            out.append(x)
            i += 1
        elif y < x:
            out.append(y)
            j += 1
        else:
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def compute_persistence(F: Filtration) -> PersistenceDiagram:
    """Standard Z2 column reduction in filtration order."""
    cx = F.complex
    val = F.values
    for cid in cx.cells:
        for f in cx.boundary[cid]:
            if val[f] > val[cid]:
                raise NonMonotoneFiltration(
                    f"face {f} (value {val[f]}) exceeds coface {cid} (value {val[cid]})"
                )
    order = F.order
    pos = F.position
    columns = [sorted(pos[f] for f in cx.boundary[cid]) for cid in order]
    low_owner = {}  # lowest-one row -> column index owning it
    paired_birth = set()
    points = []
    for j, col in enumerate(columns):
        while col:
            owner = low_owner.get(col[-1])
            if owner is None:
                break
            col = _xor(col, columns[owner])
        columns[j] = col
        if col:
            i = col[-1]
            low_owner[i] = j
            paired_birth.add(i)
            paired_birth.add(j)
            cell_i = cx.cells[order[i]]
            points.append((cell_i.dim, val[order[i]], val[order[j]]))
    # unpaired cells: neither a killed birth nor a killing column -> essential
    for i, cid in enumerate(order):
        if i not in paired_birth:
            points.append((cx.cells[cid].dim, val[cid], INF))
    return PersistenceDiagram(points)


def filter_short(D: PersistenceDiagram, eps: float) -> PersistenceDiagram:
    """Drop finite points with persistence <= eps; essential classes stay."""
    if eps < 0:
        raise ValueError(f"eps must be >= 0, got {eps}")
    return PersistenceDiagram(
        [p for p in D.all_points if p[2] == INF or p[2] - p[1] > eps]
    )
