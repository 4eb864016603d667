"""Adaptive refinement until rigorous range enclosures meet the tolerance.

Three drivers produce a piecewise-constant approximation with a certified
sup-norm error bound:

* ``approximate``: FIFO refinement over a plain partition (no face
  bookkeeping); cheapest when only box_eval is needed.
* ``approximate_complex``: the same acceptance rule, refining through the
  rectangular CW-complex so every face exists and stays wired, ready for the
  lower-star filtration.
* ``greedy``: a subdivision budget instead of a tolerance; repeatedly splits
  the cell with the largest enclosure radius (FIFO tie-break) and reports the
  max leaf radius as the certified bound.

A cell Q is accepted when rad(f_hat(Q)) <= eps componentwise, where the value
is the enclosure midpoint; rad is outward-rounded, so acceptance certifies
both one-sided deviations rigorously. Every driver records the subdivision
tree, giving box_eval O(depth) point location.

Refinement is breadth-first in waves: all enclosures of a wave may be
evaluated by a thread pool (``threads``), then committed in FIFO order, so
results are identical to a sequential run.
"""

from __future__ import annotations

import heapq
import math
from concurrent.futures import ThreadPoolExecutor

from rigorpersist import cwcomplex as cw
from rigorpersist.errors import (
    DomainViolation,
    IncompleteApproximation,
    InvalidEpsilon,
    PointOutsideDomain,
)
from rigorpersist.expressions import VectorFunction
from rigorpersist.intervals import Interval, IntervalBox, midpt, rad

COMPLETE = "Complete"
CANNOT_DECIDE = "CannotDecide"

DEFAULT_MAX_DEPTH = 30


class _Node:
    """Subdivision-tree node; a leaf holds the cell, an inner node its cuts."""

    __slots__ = ("axes", "cuts", "children", "rect", "cell_id")

    def __init__(self, axes, rect=None, cell_id=None):
        self.axes = axes
        self.cuts = None
        self.children = None
        self.rect = rect
        self.cell_id = cell_id


class PCApprox:
    """A valued partition (optionally a full complex) with a certified bound."""

    def __init__(self, function, domain, epsilon, status, mode, complex_, root,
                 leaves, unresolved, periodic):
        self.function = function
        self.domain = domain
        self.epsilon = epsilon
        self.status = status
        self.mode = mode  # "partition" or "complex"
        self.complex = complex_
        self.periodic = periodic
        self._root = root
        self._leaves = leaves
        self.unresolved = unresolved

    @property
    def rectangles(self):
        """All leaf rectangles (valued, plus unvalued ones when CannotDecide)."""
        return [n.rect for n in self._leaves]

    @property
    def valued_rectangles(self):
        return [n.rect for n in self._leaves if n.rect.value is not None]

    def top_cell_count(self) -> int:
        return len(self._leaves)

    def summary(self) -> dict:
        counts = (
            self.complex.counts()
            if self.complex is not None
            else [0] * len(self.domain) + [len(self._leaves)]
        )
        return {
            "status": self.status,
            "epsilon": self.epsilon,
            "mode": self.mode,
            "top_cells": self.top_cell_count(),
            "unresolved": len(self.unresolved),
            "cells_by_dim": counts,
        }


def _check_inputs(f: VectorFunction, box: IntervalBox, eps=None):
    if f.arity != len(box):
        raise ValueError(
            f"function arity {f.arity} does not match box dimension {len(box)}"
        )
    if eps is not None and not (isinstance(eps, (int, float)) and math.isfinite(eps) and eps > 0):
        raise InvalidEpsilon(f"epsilon must be positive and finite, got {eps!r}")


def _eval_cell(f: VectorFunction, axes):
    box = IntervalBox(Interval(b, e) for b, e in axes)
    try:
        return f.eval_interval(box)
    except DomainViolation as err:
        err.cell_axes = axes
        raise


def _batch_eval(f: VectorFunction, axes_list, threads: int):
    if threads <= 1 or len(axes_list) <= 1:
        return [_eval_cell(f, a) for a in axes_list]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda a: _eval_cell(f, a), axes_list))


def _midcuts(axes):
    return tuple(midpt(Interval(b, e)) for b, e in axes)


def _child_slot(axes, cuts) -> int:
    # child index by side per axis: bit j set when the child is the high half
    slot = 0
    for j, (b, _) in enumerate(axes):
        if b >= cuts[j]:
            slot |= 1 << j
    return slot


def _accept(encs, eps: float) -> bool:
    return all(rad(enc) <= eps for enc in encs)


def _values(encs):
    return tuple(midpt(enc) for enc in encs)


# ---------------------------------------------------------------------------
# Algorithm drivers


def approximate(f: VectorFunction, B: IntervalBox, eps: float,
                max_depth: int = DEFAULT_MAX_DEPTH, threads: int = 1) -> PCApprox:
    """FIFO tolerance-driven refinement over a plain partition."""
    _check_inputs(f, B, eps)
    n = len(B)
    root = _Node(tuple((c.lo, c.hi) for c in B))
    wave = [(root, 0)]
    leaves = []
    unresolved = []
    while wave:
        encs_list = _batch_eval(f, [node.axes for node, _ in wave], threads)
        next_wave = []
        for (node, depth), encs in zip(wave, encs_list):
            if _accept(encs, eps):
                node.rect = cw.Rectangle(node.axes, _values(encs))
                leaves.append(node)
            elif depth >= max_depth:
                node.rect = cw.Rectangle(node.axes)  # unvalued: rigor failed here
                leaves.append(node)
                unresolved.append(node.rect)
            else:
                cuts = _midcuts(node.axes)
                node.cuts = cuts
                node.children = [None] * (1 << n)
                for child_axes in _split_axes(node.axes, cuts):
                    child = _Node(child_axes)
                    node.children[_child_slot(child_axes, cuts)] = child
                    next_wave.append((child, depth + 1))
        wave = next_wave
    status = COMPLETE if not unresolved else CANNOT_DECIDE
    return PCApprox(f, B, float(eps), status, "partition", None, root, leaves,
                    unresolved, (False,) * n)


def _split_axes(axes, cuts):
    """All 2^n child boxes of a midpoint-style split."""
    out = [()]
    for (b, e), c in zip(axes, cuts):
        out = [prefix + (half,) for prefix in out for half in ((b, c), (c, e))]
    return out


def approximate_complex(f: VectorFunction, B: IntervalBox, eps: float,
                        max_depth: int = DEFAULT_MAX_DEPTH, periodic=None,
                        threads: int = 1) -> PCApprox:
    """Tolerance-driven refinement carrying the full face-wired complex."""
    _check_inputs(f, B, eps)
    n = len(B)
    periodic = tuple(bool(p) for p in (periodic or (False,) * n))
    cx = cw.from_box(B, periodic)
    root = _Node(tuple((c.lo, c.hi) for c in B))
    tops = sorted(cx.top_cells())
    wave = []
    if len(tops) == 1:
        root.cell_id = tops[0]
        root.rect = cx.cells[tops[0]]
        wave.append((root, 0))
    else:
        # periodic pre-split: the tree root branches at the box midpoint
        cuts = _midcuts(root.axes)
        root.cuts = cuts
        root.children = [None] * (1 << n)
        for cid in tops:
            node = _Node(cx.cells[cid].axes, rect=cx.cells[cid], cell_id=cid)
            root.children[_child_slot(node.axes, cuts)] = node
            wave.append((node, 0))
    leaves = []
    unresolved = []
    while wave:
        encs_list = _batch_eval(f, [node.axes for node, _ in wave], threads)
        next_wave = []
        for (node, depth), encs in zip(wave, encs_list):
            if _accept(encs, eps):
                node.rect.value = _values(encs)
                leaves.append(node)
            elif depth >= max_depth:
                leaves.append(node)
                unresolved.append(node.rect)
            else:
                cuts = _midcuts(node.axes)
                node.cuts = cuts
                node.children = [None] * (1 << n)
                for cid in cx.subdivide_all(node.cell_id, cuts):
                    child = _Node(cx.cells[cid].axes, rect=cx.cells[cid], cell_id=cid)
                    node.children[_child_slot(child.axes, cuts)] = child
                    next_wave.append((child, depth + 1))
        wave = next_wave
    status = COMPLETE if not unresolved else CANNOT_DECIDE
    return PCApprox(f, B, float(eps), status, "complex", cx, root, leaves,
                    unresolved, periodic)


def greedy(f: VectorFunction, B: IntervalBox, budget: int, periodic=None,
           threads: int = 1):
    """Budgeted refinement, largest enclosure radius first (FIFO tie-break).

    Returns (PCApprox, error_bound) where error_bound is the max leaf radius,
    certifying sup |f - approximation| <= error_bound.
    """
    _check_inputs(f, B)
    if budget < 0:
        raise ValueError(f"budget must be >= 0, got {budget}")
    n = len(B)
    periodic = tuple(bool(p) for p in (periodic or (False,) * n))
    cx = cw.from_box(B, periodic)
    root = _Node(tuple((c.lo, c.hi) for c in B))
    tops = sorted(cx.top_cells())
    heap = []
    counter = 0

    def push(node, encs):
        nonlocal counter
        key = max(rad(enc) for enc in encs)
        heapq.heappush(heap, (-key, counter, node, encs))
        counter += 1

    if len(tops) == 1:
        root.cell_id = tops[0]
        root.rect = cx.cells[tops[0]]
        initial = [root]
    else:
        cuts = _midcuts(root.axes)
        root.cuts = cuts
        root.children = [None] * (1 << n)
        initial = []
        for cid in tops:
            node = _Node(cx.cells[cid].axes, rect=cx.cells[cid], cell_id=cid)
            root.children[_child_slot(node.axes, cuts)] = node
            initial.append(node)
    for node, encs in zip(initial, _batch_eval(f, [n_.axes for n_ in initial], threads)):
        push(node, encs)

    for _ in range(budget):
        if not heap:
            break
        _, _, node, _ = heapq.heappop(heap)
        cuts = _midcuts(node.axes)
        node.cuts = cuts
        node.children = [None] * (1 << n)
        kids = []
        for cid in cx.subdivide_all(node.cell_id, cuts):
            child = _Node(cx.cells[cid].axes, rect=cx.cells[cid], cell_id=cid)
            node.children[_child_slot(child.axes, cuts)] = child
            kids.append(child)
        for child, encs in zip(kids, _batch_eval(f, [k.axes for k in kids], threads)):
            push(child, encs)

    error_bound = 0.0
    leaves = []
    for neg_key, _, node, encs in sorted(heap, key=lambda t: t[1]):
        node.rect.value = _values(encs)
        leaves.append(node)
        error_bound = max(error_bound, -neg_key)
    approx = PCApprox(f, B, error_bound, COMPLETE, "complex", cx, root, leaves,
                      [], periodic)
    return approx, error_bound


# ---------------------------------------------------------------------------
# evaluation of the step function


def _locate(node: _Node, x):
    """All leaves whose closed cell contains x (several on shared boundaries)."""
    if node.cuts is None:
        yield node
        return
    slots = [()]
    for j, c in enumerate(node.cuts):
        if x[j] < c:
            sides = (0,)
        elif x[j] > c:
            sides = (1,)
        else:
            sides = (0, 1)
        slots = [s + (side,) for s in slots for side in sides]
    for s in slots:
        idx = sum(bit << j for j, bit in enumerate(s))
        child = node.children[idx]
        if child is not None:
            yield from _locate(child, x)


def box_eval(A: PCApprox, x):
    """The lower semi-continuous step function: min over cells containing x.

    On periodic axes a point on the seam is evaluated at both of its
    representatives (the identified boundary).
    """
    if A.status != COMPLETE:
        raise IncompleteApproximation(
            "box_eval requires a Complete approximation"
        )
    x = tuple(float(t) for t in x)
    n = len(A.domain)
    if len(x) != n:
        raise PointOutsideDomain(f"point has {len(x)} coordinates, domain has {n}")
    for j, c in enumerate(A.domain):
        if not (c.lo <= x[j] <= c.hi):
            raise PointOutsideDomain(f"coordinate {j}: {x[j]} outside [{c.lo}, {c.hi}]")

    # seam images on periodic axes
    images = [x]
    for j, c in enumerate(A.domain):
        if A.periodic[j] and (x[j] == c.lo or x[j] == c.hi):
            other = c.hi if x[j] == c.lo else c.lo
            images = [p for p in images] + [p[:j] + (other,) + p[j + 1 :] for p in images]

    m = A.function.m
    best = None
    for p in images:
        for leaf in _locate(A._root, p):
            v = leaf.rect.value
            if v is None:
                continue
            if best is None:
                best = list(v)
            else:
                for k in range(m):
                    if v[k] < best[k]:
                        best[k] = v[k]
    return tuple(best)
