"""Minimum-weight perfect matching with an open boundary.

The decoding graphs are matched exactly: the graph is split into connected
components (the pruning radius keeps them small below threshold), and each
component is solved by exact subset dynamic programming (<= DP_LIMIT nodes)
or by the blossom algorithm (networkx's exact implementation) up to
NX_LIMIT nodes.  Components larger than that fall back to a deterministic
greedy pairing; every result records whether any component took the
fallback, and the sweep harness reports it.

Nodes may match each other or the boundary (present or not per Prop-1's
open/closed time ends); the boundary absorbs any number of nodes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except Exception:            # pragma: no cover
    HAVE_NUMBA = False

    def njit(*a, **k):
        def deco(f):
            return f
        return deco if not (len(a) == 1 and callable(a[0])) else a[0]

DP_LIMIT = 18
NX_LIMIT = 64
INF = np.inf


class InfeasibleMatchingError(ValueError):
    pass


@dataclass
class MatchResult:
    pairs: list                  # (i, j) node-index pairs, j = -1 for boundary
    weight: float
    exact: bool = True


@njit(cache=True)
def _dp_match(w, bw, use_boundary):
    """Exact min-weight matching by subset DP.

    w: (n, n) pair weights, bw: (n,) boundary weights (inf if closed).
    Returns (best, choice) where choice[S] encodes the partner of the
    lowest set bit of S (n for boundary).
    """
    n = w.shape[0]
    size = 1 << n
    best = np.full(size, np.inf)
    choice = np.full(size, -2, dtype=np.int64)
    best[0] = 0.0
    for S in range(1, size):
        i = 0
        while not (S >> i) & 1:
            i += 1
        rest = S & ~(1 << i)
        if use_boundary and bw[i] < np.inf:
            cand = bw[i] + best[rest]
            if cand < best[S]:
                best[S] = cand
                choice[S] = n
        T = rest
        j = 0
        while T:
            if T & 1:
                if w[i, j] < np.inf:
                    cand = w[i, j] + best[rest & ~(1 << j)]
                    if cand < best[S]:
                        best[S] = cand
                        choice[S] = j
            T >>= 1
            j += 1
    return best, choice


def _dp_solve(w, bw, use_boundary):
    n = w.shape[0]
    best, choice = _dp_match(np.asarray(w, dtype=np.float64),
                             np.asarray(bw, dtype=np.float64), use_boundary)
    full = (1 << n) - 1
    if not np.isfinite(best[full]):
        raise InfeasibleMatchingError("no perfect matching exists")
    pairs = []
    S = full
    while S:
        i = 0
        while not (S >> i) & 1:
            i += 1
        j = int(choice[S])
        if j == n:
            pairs.append((i, -1))
            S &= ~(1 << i)
        else:
            pairs.append((i, j))
            S &= ~((1 << i) | (1 << j))
    return MatchResult(pairs, float(best[full]), exact=True)


def _nx_solve(w, bw, use_boundary):
    import networkx as nx
    n = w.shape[0]
    G = nx.Graph()
    scale = 1.0
    finite = [w[i, j] for i in range(n) for j in range(i + 1, n)
              if np.isfinite(w[i, j])]
    finite += [b for b in bw if np.isfinite(b)] if use_boundary else []
    big = 4.0 * (sum(finite) + 1.0)
    # deterministic tiny tie-break keeps the pairing reproducible
    eps = 1e-9 / (n * n + 1)
    for i in range(n):
        for j in range(i + 1, n):
            if np.isfinite(w[i, j]):
                G.add_edge(i, j, weight=big - w[i, j] * scale
                           - eps * (i * n + j))
        if use_boundary and np.isfinite(bw[i]):
            G.add_edge(i, n + i, weight=big - bw[i] * scale - eps * i)
    if use_boundary:
        for i in range(n):
            for j in range(i + 1, n):
                G.add_edge(n + i, n + j, weight=big)
    mate = nx.algorithms.matching.max_weight_matching(G, maxcardinality=True)
    pairs = []
    seen = set()
    total = 0.0
    for a, b in mate:
        a, b = min(a, b), max(a, b)
        if a >= n:
            continue
        if b >= n:
            if b - n == a:
                pairs.append((a, -1))
                total += bw[a]
                seen.add(a)
            else:
                raise InfeasibleMatchingError("boundary pairing corrupted")
        else:
            pairs.append((a, b))
            total += w[a, b]
            seen.update((a, b))
    if len(seen) != n:
        raise InfeasibleMatchingError("no perfect matching exists")
    return MatchResult(pairs, float(total), exact=True)


def _greedy_solve(w, bw, use_boundary):
    n = w.shape[0]
    cands = []
    for i in range(n):
        for j in range(i + 1, n):
            if np.isfinite(w[i, j]):
                cands.append((w[i, j], i, j))
        if use_boundary and np.isfinite(bw[i]):
            cands.append((bw[i], i, -1))
    cands.sort()
    used = np.zeros(n, dtype=bool)
    pairs = []
    total = 0.0
    for wt, i, j in cands:
        if used[i] or (j >= 0 and used[j]):
            continue
        used[i] = True
        if j >= 0:
            used[j] = True
        pairs.append((i, j))
        total += wt
    if not used.all():
        raise InfeasibleMatchingError("greedy pairing left unmatched nodes")
    return MatchResult(pairs, float(total), exact=False)


def _components(n, w, bw, use_boundary):
    """Connected components of the finite-weight pair graph (the boundary
    does not merge components: it absorbs each independently)."""
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if np.isfinite(w[i, j]):
                ra, rb = find(i), find(j)
                if ra != rb:
                    parent[ra] = rb
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def min_weight_perfect_matching(w, boundary_weights=None, allow_fallback=True):
    """Exact minimum-weight matching of nodes 0..n-1 (+ optional boundary).

    w is a dense (n, n) array of pair weights (inf = no edge);
    boundary_weights is a length-n array (None = closed boundary).
    Components are solved independently and exactly up to NX_LIMIT nodes;
    larger ones use a deterministic greedy pairing if allowed.
    """
    w = np.asarray(w, dtype=float)
    n = w.shape[0]
    if n == 0:
        return MatchResult([], 0.0)
    use_boundary = boundary_weights is not None
    bw = np.asarray(boundary_weights, dtype=float) if use_boundary else \
        np.full(n, np.inf)
    pairs = []
    total = 0.0
    exact = True
    for comp in _components(n, w, bw, use_boundary):
        k = len(comp)
        sub = w[np.ix_(comp, comp)]
        subb = bw[comp]
        if not use_boundary and k % 2:
            raise InfeasibleMatchingError(
                "odd component with closed boundary")
        if k <= DP_LIMIT:
            res = _dp_solve(sub, subb, use_boundary)
        elif k <= NX_LIMIT:
            res = _nx_solve(sub, subb, use_boundary)
        elif allow_fallback:
            res = _greedy_solve(sub, subb, use_boundary)
        else:
            res = _nx_solve(sub, subb, use_boundary)
        exact = exact and res.exact
        total += res.weight
        for i, j in res.pairs:
            pairs.append((comp[i], comp[j] if j >= 0 else -1))
    return MatchResult(pairs, total, exact)


def brute_force_matching(w, boundary_weights=None):
    """Oracle: enumerate every perfect matching (boundary allowed)."""
    w = np.asarray(w, dtype=float)
    n = w.shape[0]
    use_boundary = boundary_weights is not None
    bw = np.asarray(boundary_weights, dtype=float) if use_boundary else \
        np.full(n, np.inf)
    best = [np.inf, None]

    def rec(avail, acc, pairs):
        if acc >= best[0]:
            return
        if not avail:
            best[0] = acc
            best[1] = list(pairs)
            return
        i = avail[0]
        rest = avail[1:]
        if np.isfinite(bw[i]):
            rec(rest, acc + bw[i], pairs + [(i, -1)])
        for jdx, j in enumerate(rest):
            if np.isfinite(w[i, j]):
                rec(rest[:jdx] + rest[jdx + 1:], acc + w[i, j],
                    pairs + [(i, j)])

    rec(list(range(n)), 0.0, [])
    if best[1] is None:
        raise InfeasibleMatchingError("no perfect matching exists")
    return MatchResult(best[1], best[0])


def greedy_matching_weight(w, boundary_weights=None):
    """Total weight of the deterministic greedy pairing (upper bound)."""
    bw = boundary_weights if boundary_weights is not None else \
        np.full(np.asarray(w).shape[0], np.inf)
    return _greedy_solve(np.asarray(w, float), np.asarray(bw, float),
                         boundary_weights is not None).weight
