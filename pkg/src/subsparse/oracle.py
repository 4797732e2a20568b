"""Directed min-cut values of splitting functions.

For an edge e with splitting function g and an ordered vertex pair (u, v),
the directed min-cut is the cheapest subset of e separating u from v:

    mincut(u -> v) = 0                                  if u not in e
                   = min over T with u in T, v not in T of g(T)   otherwise
                     (the constraint on v applies only when v is in e)

When v is outside e the value collapses to min over T containing u, the
same number for every such v.  These quantities sandwich g(S & e) between
their max and sum over the pairs crossing S, which is what importance
sampling exploits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ThresholdExceeded
from .hypergraph import Hyperedge, SubmodularHypergraph, all_cut_values, subset_index
from .splitting import SplittingFn, fn_table

TABLE_LIMIT = 16


def _edge_mins(vertices, vals):
    """Per-edge directed min-cuts, local view.

    Returns (inside, escape): inside[a, b] = min over masks with bit a set,
    bit b clear (diagonal 0); escape[a] = min over masks with bit a set.
    """
    k = len(vertices)
    masks = np.arange(1 << k, dtype=np.int64)
    inside = np.zeros((k, k), dtype=np.float64)
    escape = np.zeros(k, dtype=np.float64)
    for a in range(k):
        has_a = (masks >> a) & 1 == 1
        va = vals[has_a]
        ma = masks[has_a]
        escape[a] = float(np.min(va))
        for b in range(k):
            if b == a:
                continue
            sel = (ma >> b) & 1 == 0
            inside[a, b] = float(np.min(va[sel]))
    return inside, escape


def directed_min_cut(fn: SplittingFn, e, u: int, v: int, limit: int = TABLE_LIMIT) -> float:
    """Directed min-cut of one pair; see module docstring for the definition."""
    if u == v:
        raise ValueError("directed min-cut requires two distinct vertices")
    vertices = tuple(sorted(set(e)))
    if u not in vertices:
        return 0.0
    k = len(vertices)
    if k > limit:
        raise ThresholdExceeded(f"|e| = {k} exceeds the enumeration limit {limit}")
    vals = fn_table(fn, vertices)
    masks = np.arange(1 << k, dtype=np.int64)
    a = vertices.index(u)
    sel = (masks >> a) & 1 == 1
    if v in vertices:
        b = vertices.index(v)
        sel &= (masks >> b) & 1 == 0
    return float(np.min(vals[sel]))


@dataclass
class DirectedCutTable:
    """All-pairs directed min-cuts of one edge, on the full vertex set [n].

    table[u, v] = mincut(u -> v); rows of vertices outside the edge are 0,
    and the diagonal is stored as 0 (unused by every consumer).
    """

    vertices: tuple[int, ...]
    table: np.ndarray


def directed_cut_table(fn: SplittingFn, e, n: int, limit: int = TABLE_LIMIT) -> DirectedCutTable:
    """Build the n x n directed min-cut table of one edge.

    One pass over the 2**|e| subset values fills every pair; vertices off
    the edge share the single 'escape' minimum of their row's source.
    """
    vertices = tuple(sorted(set(e)))
    k = len(vertices)
    if k > limit:
        raise ThresholdExceeded(f"|e| = {k} exceeds the enumeration limit {limit}")
    if vertices[-1] >= n:
        raise ValueError("edge vertex outside 0..n-1")
    vals = fn_table(fn, vertices)
    inside, escape = _edge_mins(vertices, vals)
    out = np.zeros((n, n), dtype=np.float64)
    for a, u in enumerate(vertices):
        out[u, :] = escape[a]  # v outside e
        for b, v in enumerate(vertices):
            out[u, v] = inside[a, b] if a != b else 0.0
    return DirectedCutTable(vertices=vertices, table=out)


def sigma_brute(H: SubmodularHypergraph, edge_index: int, max_n: int = 24) -> float:
    """Exact importance of one edge: max over cut sets S of g_e(S)/cut(S).

    Enumerates all 2**n subsets; sets with cut(S) = 0 contribute 0 (the
    edge's own value is then 0 too).  Intended for small n.
    """
    cuts = all_cut_values(H, max_n=max_n)
    e = H.edges[edge_index]
    masks = np.arange(1 << H.n, dtype=np.int64)
    contrib = e.table()[subset_index(masks, e.vertices)]
    ok = cuts > 0
    if not ok.any():
        return 0.0
    return float(np.max(contrib[ok] / cuts[ok]))


def edge_pair_tables(H: SubmodularHypergraph, limit: int = TABLE_LIMIT) -> list[DirectedCutTable]:
    """Directed cut tables for every edge of H."""
    return [directed_cut_table(e.fn, e.vertices, H.n, limit=limit) for e in H.edges]
