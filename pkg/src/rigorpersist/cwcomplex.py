"""Rectangular CW-complexes with boundary/coboundary wiring and subdivision.

A rectangle is a product of d compact intervals, possibly degenerate; its
dimension is the number of nondegenerate factors. A primary face collapses one
nondegenerate axis to an endpoint. The complex stores, per cell, the set of
primary faces (boundary) and primary cofaces (coboundary); the two relations
are kept mutually inverse through every subdivision.

Subdivision in one direction replaces a cell R by halves R1, R2 and their
shared face R3, recursively splitting the boundary faces whose interval on the
split axis contains the cut in its interior; faces on one side are reattached
by geometric containment; cofaces of R receive R1 and R2 as new primary faces.
Subdividing in all directions iterates this over the axes, carrying the
growing list of top cells.

Periodic axes are realized by identification at construction time: the axis is
pre-split at its midpoint so each direction has at least two top cells, and
the upper boundary vertex is merged with the lower one. Later subdivisions
preserve the identification automatically because glued cells share one id.
Geometric containment on a periodic axis is meant modulo the period.

Cell ids are stable integers; subdividing a cell removes it for good (ids are
never reused), which keeps filtration bookkeeping deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from rigorpersist.errors import CellAbsent, CutOutsideInterior, DegenerateAxis
from rigorpersist.intervals import Interval, IntervalBox, midpt


@dataclass(slots=True)
class Rectangle:
    """Product of d closed intervals; value is set by the approximation."""

    axes: tuple  # tuple of (b_i, e_i) float pairs, b_i <= e_i
    value: tuple | None = None
    dim: int = field(init=False)

    def __post_init__(self):
        for b, e in self.axes:
            if b > e:
                raise ValueError(f"rectangle axis out of order: [{b}, {e}]")
        self.dim = sum(1 for b, e in self.axes if b < e)

    def box(self) -> IntervalBox:
        return IntervalBox(Interval(b, e) for b, e in self.axes)


class RectComplex:
    """Finite rectangular CW-complex, closed under primary faces."""

    def __init__(self, ambient_dim: int, periodic, root_axes):
        self.ambient_dim = ambient_dim
        self.periodic = tuple(periodic)
        self.root_axes = tuple(root_axes)
        self.cells: dict[int, Rectangle] = {}
        self.boundary: dict[int, set[int]] = {}
        self.coboundary: dict[int, set[int]] = {}
        self._next_id = 0

    # -- bookkeeping ---------------------------------------------------

    def _require(self, cell_id: int) -> Rectangle:
        cell = self.cells.get(cell_id)
        if cell is None:
            raise CellAbsent(f"cell {cell_id} is not in the complex")
        return cell

    def _add(self, axes: tuple) -> int:
        cid = self._next_id
        self._next_id += 1
        self.cells[cid] = Rectangle(axes)
        self.boundary[cid] = set()
        self.coboundary[cid] = set()
        return cid

    def _wire(self, face: int, coface: int):
        self.boundary[coface].add(face)
        self.coboundary[face].add(coface)

    def _detach(self, cell_id: int):
        for f in self.boundary[cell_id]:
            self.coboundary[f].discard(cell_id)
        for q in self.coboundary[cell_id]:
            self.boundary[q].discard(cell_id)
        del self.cells[cell_id]
        del self.boundary[cell_id]
        del self.coboundary[cell_id]

    # -- queries ---------------------------------------------------------

    def counts(self) -> list[int]:
        out = [0] * (self.ambient_dim + 1)
        for cell in self.cells.values():
            out[cell.dim] += 1
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.counts()))

    def cells_of_dim(self, k: int):
        return [cid for cid, cell in self.cells.items() if cell.dim == k]

    def top_cells(self):
        return self.cells_of_dim(self.ambient_dim)

    def axis_fits(self, inner, outer, axis: int) -> bool:
        """Containment of axis intervals, modulo the period on periodic axes."""
        il, ih = inner
        ol, oh = outer
        if ol <= il and ih <= oh:
            return True
        if self.periodic[axis]:
            period = self.root_axes[axis][1] - self.root_axes[axis][0]
            for shift in (period, -period):
                if ol <= il + shift and ih + shift <= oh:
                    return True
        return False

    def cell_fits(self, inner_id: int, outer_id: int) -> bool:
        inner = self._require(inner_id)
        outer = self._require(outer_id)
        return all(
            self.axis_fits(inner.axes[j], outer.axes[j], j)
            for j in range(self.ambient_dim)
        )

    def top_cofaces(self, cell_id: int) -> set[int]:
        """Top-dimensional cells containing the cell in their closure."""
        cell = self._require(cell_id)
        if cell.dim == self.ambient_dim:
            return {cell_id}
        out = set()
        seen = {cell_id}
        stack = [cell_id]
        while stack:
            cur = stack.pop()
            for q in self.coboundary[cur]:
                if q in seen:
                    continue
                seen.add(q)
                if self.cells[q].dim == self.ambient_dim:
                    out.add(q)
                else:
                    stack.append(q)
        return out

    # -- subdivision ------------------------------------------------------

    def subdivide_one(self, cell_id: int, axis: int, cut: float):
        """Split a cell at ``cut`` on ``axis``; returns (low id, high id, shared face id)."""
        cell = self._require(cell_id)
        b, e = cell.axes[axis]
        cut = float(cut)
        if not (b < cut < e):
            raise CutOutsideInterior(
                f"cut {cut} not strictly inside [{b}, {e}] of cell {cell_id} axis {axis}"
            )

        faces = list(self.boundary[cell_id])
        cofaces = list(self.coboundary[cell_id])
        # faces whose own interval on this axis strictly straddles the cut
        in_l = [f for f in faces if self.cells[f].axes[axis][0] < cut < self.cells[f].axes[axis][1]]
        rest = [f for f in faces if f not in set(in_l)]

        self._detach(cell_id)

        axes = cell.axes
        r1 = self._add(axes[:axis] + ((b, cut),) + axes[axis + 1 :])
        r2 = self._add(axes[:axis] + ((cut, e),) + axes[axis + 1 :])
        r3 = self._add(axes[:axis] + ((cut, cut),) + axes[axis + 1 :])
        self._wire(r3, r1)
        self._wire(r3, r2)

        for q in cofaces:  # R1, R2 replace the cell as primary faces
            self._wire(r1, q)
            self._wire(r2, q)

        for f in rest:  # untouched faces reattach to the side containing them
            faxis = self.cells[f].axes[axis]
            if self.axis_fits(faxis, (b, cut), axis):
                target = r1
            elif self.axis_fits(faxis, (cut, e), axis):
                target = r2
            else:
                raise AssertionError(
                    f"face {f} fits neither side of cell {cell_id} at {cut}"
                )
            self._wire(f, target)
            # a face already refined exactly at the cut contributes nothing to
            # subdivide, but its facet inside the cut hyperplane is a primary
            # face of R3 (happens on every second-axis pass of subdivide_all)
            if faxis[0] < faxis[1] and cut in faxis:
                for g in self.boundary[f]:
                    if self.cells[g].axes[axis] == (cut, cut):
                        self._wire(g, r3)

        for f in in_l:
            f1, f2, f3 = self.subdivide_one(f, axis, cut)
            self._wire(f1, r1)
            self._wire(f2, r2)
            self._wire(f3, r3)

        return r1, r2, r3

    def subdivide_all(self, cell_id: int, cuts):
        """Split a full-dimensional cell on every axis; returns the 2^d top ids."""
        cell = self._require(cell_id)
        cuts = tuple(float(c) for c in cuts)
        if len(cuts) != self.ambient_dim:
            raise ValueError(
                f"need {self.ambient_dim} cuts, got {len(cuts)}"
            )
        for j, c in enumerate(cuts):
            b, e = cell.axes[j]
            if not (b < c < e):
                raise CutOutsideInterior(
                    f"cut {c} not strictly inside [{b}, {e}] of cell {cell_id} axis {j}"
                )
        tops = [cell_id]
        for j in range(self.ambient_dim):
            next_tops = []
            for t in tops:
                lo_id, hi_id, _ = self.subdivide_one(t, j, cuts[j])
                next_tops.append(lo_id)
                next_tops.append(hi_id)
            tops = next_tops
        return tops


def from_box(B: IntervalBox, periodic=None) -> RectComplex:
    """Complex of one closed box (all 3^n faces), or 2^n boxes under periodic flags.

    If any axis is periodic, every axis is pre-split at its midpoint so each
    coordinate direction carries at least two top cells, and on periodic axes
    the two boundary hyperfaces are identified.
    """
    n = len(B)
    periodic = tuple(bool(p) for p in (periodic or (False,) * n))
    if len(periodic) != n:
        raise ValueError(f"need {n} periodic flags, got {len(periodic)}")
    for c in B:
        if c.lo >= c.hi:
            raise DegenerateAxis(f"axis [{c.lo}, {c.hi}] has no interior")

    pre_split = any(periodic)
    axis_cells = []  # per axis: list of (b, e) one-dimensional cells
    axis_bounds = []
    for j, c in enumerate(B):
        lo, hi = c.lo, c.hi
        axis_bounds.append((lo, hi))
        nodes = [lo, midpt(c), hi] if pre_split else [lo, hi]
        cells_1d = []
        for node in nodes:
            if node == hi and periodic[j]:
                continue  # identified with the lower vertex
            cells_1d.append((node, node))
        for a, b in zip(nodes, nodes[1:]):
            cells_1d.append((a, b))
        axis_cells.append(cells_1d)

    cx = RectComplex(n, periodic, axis_bounds)
    by_axes: dict[tuple, int] = {}

    def canonical_vertex(j: int, t: float) -> float:
        if periodic[j] and t == axis_bounds[j][1]:
            return axis_bounds[j][0]
        return t

    from itertools import product

    for combo in product(*axis_cells):
        cid = cx._add(tuple(combo))
        by_axes[tuple(combo)] = cid

    for axes, cid in by_axes.items():
        for j in range(n):
            b, e = axes[j]
            if b == e:
                continue
            for t in (b, e):
                v = canonical_vertex(j, t)
                face_axes = axes[:j] + ((v, v),) + axes[j + 1 :]
                cx._wire(by_axes[face_axes], cid)
    return cx


def subdivide_one(cx: RectComplex, cell_id: int, axis: int, cut: float):
    return cx.subdivide_one(cell_id, axis, cut)


def subdivide_all(cx: RectComplex, cell_id: int, cuts):
    return cx.subdivide_all(cell_id, cuts)


def top_cofaces(cx: RectComplex, cell_id: int) -> set[int]:
    return cx.top_cofaces(cell_id)


def dump_records(cx: RectComplex):
    """Stable per-cell records for the JSONL dump, ordered by id."""
    for cid in sorted(cx.cells):
        cell = cx.cells[cid]
        yield {
            "id": cid,
            "dim": cell.dim,
            "axes": [[b, e] for b, e in cell.axes],
            "value": list(cell.value) if cell.value is not None else None,
            "boundary": sorted(cx.boundary[cid]),
        }
