"""Bottleneck and degree-q Wasserstein distances between persistence diagrams.

Diagrams are compared per homological dimension; bottleneck takes the max
over dimensions and Wasserstein aggregates everything in the q-norm. Every
finite point may match a point of the other diagram (cost = sup-norm
displacement) or its own diagonal projection (cost = half its persistence).
Essential classes (infinite death) match essential classes only, by birth;
unequal essential counts in any dimension force an infinite distance.

The bottleneck optimum is always one of finitely many candidate costs (a
pairwise displacement or a half-persistence), so it is found by binary search
over that set with a bipartite perfect-matching feasibility test at each
probe. Wasserstein is an exact min-cost assignment on the diagonal-augmented
cost matrix.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import linear_sum_assignment

INF = math.inf
_BLOCKED = 1e30  # assignment-matrix entry for forbidden pairings


def _per_dim(D):
    """dim -> (finite (b,d) points, sorted essential births)."""
    out = {}
    for dim, b, d in D.points:
        finite, ess = out.setdefault(dim, ([], []))
        if d == INF:
            ess.append(b)
        else:
            finite.append((b, d))
    for finite, ess in out.values():
        ess.sort()
    return out


def _cost(p, q) -> float:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _diag_cost(p) -> float:
    return (p[1] - p[0]) / 2.0


def _has_perfect_matching(adj, n_right: int) -> bool:
    """Kuhn's augmenting paths; adj[u] lists right neighbours of left u."""
    match_r = [-1] * n_right

    def augment(u, seen):
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                if match_r[v] < 0 or augment(match_r[v], seen):
                    match_r[v] = u
                    return True
        return False

    for u in range(len(adj)):
        if not augment(u, [False] * n_right):
            return False
    return True


def _bottleneck_finite(P, Q) -> float:
    """Optimal max displacement matching P to Q with diagonal augmentation."""
    n, m = len(P), len(Q)
    if n == 0 and m == 0:
        return 0.0
    candidates = {0.0}
    candidates.update(_diag_cost(p) for p in P)
    candidates.update(_diag_cost(q) for q in Q)
    candidates.update(_cost(p, q) for p in P for q in Q)
    candidates = sorted(candidates)

    def feasible(c):
        # left = P + diagonal proxies of Q, right = Q + diagonal proxies of P;
        # proxy-proxy edges are free, a point reaches only its own proxy
        adj = []
        for i, p in enumerate(P):
            row = [j for j, q in enumerate(Q) if _cost(p, q) <= c]
            if _diag_cost(p) <= c:
                row.append(m + i)
            adj.append(row)
        for j, q in enumerate(Q):
            row = list(range(m, m + n))
            if _diag_cost(q) <= c:
                row.append(j)
            adj.append(row)
        return _has_perfect_matching(adj, m + n)

    lo, hi = 0, len(candidates) - 1
    if not feasible(candidates[hi]):  # cannot happen: all-diagonal always fits
        raise AssertionError("no feasible matching at the largest candidate cost")
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return candidates[lo]


def bottleneck(A, B) -> float:
    """Max over dimensions of the optimal sup displacement between diagrams."""
    da, db = _per_dim(A), _per_dim(B)
    best = 0.0
    for dim in sorted(set(da) | set(db)):
        fa, ea = da.get(dim, ([], []))
        fb, eb = db.get(dim, ([], []))
        if len(ea) != len(eb):
            return INF
        for x, y in zip(ea, eb):  # sorted matching is optimal on the line
            best = max(best, abs(x - y))
        best = max(best, _bottleneck_finite(fa, fb))
    return best


def _wasserstein_finite(P, Q, q: float):
    """q-th powers of the displacements under the optimal matching."""
    n, m = len(P), len(Q)
    if n == 0 and m == 0:
        return []
    size = n + m
    C = np.full((size, size), _BLOCKED)
    for i, p in enumerate(P):
        for j, qq in enumerate(Q):
            C[i, j] = _cost(p, qq) ** q
        C[i, m + i] = _diag_cost(p) ** q
    for j, qq in enumerate(Q):
        C[n + j, j] = _diag_cost(qq) ** q
    C[n:, m:] = 0.0
    rows, cols = linear_sum_assignment(C)
    return [float(c) for c in C[rows, cols]]


def wasserstein(A, B, q: float = 2.0) -> float:
    """Degree-q Wasserstein distance with diagonal augmentation."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    da, db = _per_dim(A), _per_dim(B)
    parts = []
    for dim in sorted(set(da) | set(db)):
        fa, ea = da.get(dim, ([], []))
        fb, eb = db.get(dim, ([], []))
        if len(ea) != len(eb):
            return INF
        for x, y in zip(ea, eb):
            parts.append(abs(x - y) ** q)
        parts.extend(_wasserstein_finite(fa, fb, q))
    # fsum makes the result independent of argument order
    return math.fsum(parts) ** (1.0 / q)
