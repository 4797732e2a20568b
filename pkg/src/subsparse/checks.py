"""Exhaustive structural checks and per-edge statistics.

All routines here enumerate subsets of a single edge, so they are meant
for |e| up to the enumeration threshold (default 16).  spread_stats knows
closed forms for the purely cardinality-driven kinds and skips enumeration
for those at any size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._util import mask_positions
from .errors import ThresholdExceeded
from .splitting import Additive, AllOrNothing, CardinalityBased, SplittingFn, fn_table

ENUM_LIMIT = 16


@dataclass(frozen=True)
class SubmodularityWitness:
    """Sets S subset T and vertex v not in T with a larger marginal at T."""

    S: tuple[int, ...]
    T: tuple[int, ...]
    v: int
    marginal_S: float
    marginal_T: float


@dataclass(frozen=True)
class MonotonicityWitness:
    S: tuple[int, ...]
    v: int
    before: float
    after: float


@dataclass(frozen=True)
class SpreadStats:
    max_value: float
    min_nontrivial: float
    spread: float
    full_set_trivial: bool  # True iff g(e) = 0, i.e. the excluded family is {empty, e}
    method: str  # "closed-form" or "enumeration"


def _edge_table(fn: SplittingFn, e, limit: int) -> tuple[tuple[int, ...], np.ndarray]:
    vertices = tuple(sorted(set(e)))
    if len(vertices) > limit:
        raise ThresholdExceeded(
            f"|e| = {len(vertices)} exceeds the enumeration limit {limit}"
        )
    return vertices, fn_table(fn, vertices)


def check_submodular(fn: SplittingFn, e, tol: float = 1e-9, limit: int = ENUM_LIMIT):
    """Exhaustive diminishing-returns check on one edge.

    Checks g(T + {u,v}) - g(T + {u}) <= g(T + {v}) - g(T) for every T and
    u, v outside T; a violation is returned as a SubmodularityWitness with
    S = T and T = T + {u} (so S subset T, v outside T, and the marginal of
    v at the larger set exceeds the marginal at the smaller one).  Returns
    None when the function is submodular on this edge.
    """
    vertices, vals = _edge_table(fn, e, limit)
    k = len(vertices)
    masks = np.arange(1 << k, dtype=np.int64)
    eps = tol * max(1.0, float(np.max(np.abs(vals))))
    for u in range(k):
        bu = 1 << u
        for v in range(u + 1, k):
            bv = 1 << v
            T = masks[(masks & bu) == 0]
            T = T[(T & bv) == 0]
            bad = (vals[T | bu | bv] - vals[T | bu]) > (vals[T | bv] - vals[T]) + eps
            if bad.any():
                t = int(T[np.argmax(bad)])
                S_set = tuple(vertices[i] for i in sorted(mask_positions(t)))
                T_set = tuple(sorted(S_set + (vertices[u],)))
                return SubmodularityWitness(
                    S=S_set,
                    T=T_set,
                    v=vertices[v],
                    marginal_S=float(vals[t | bv] - vals[t]),
                    marginal_T=float(vals[t | bu | bv] - vals[t | bu]),
                )
    return None


def check_monotone(fn: SplittingFn, e, tol: float = 1e-9, limit: int = ENUM_LIMIT):
    """Exhaustive monotonicity check: returns a MonotonicityWitness (S, v)
    with g(S + {v}) < g(S), or None."""
    vertices, vals = _edge_table(fn, e, limit)
    k = len(vertices)
    masks = np.arange(1 << k, dtype=np.int64)
    eps = tol * max(1.0, float(np.max(np.abs(vals))))
    for v in range(k):
        bv = 1 << v
        S = masks[(masks & bv) == 0]
        bad = vals[S | bv] < vals[S] - eps
        if bad.any():
            s = int(S[np.argmax(bad)])
            return MonotonicityWitness(
                S=tuple(vertices[i] for i in sorted(mask_positions(s))),
                v=vertices[v],
                before=float(vals[s]),
                after=float(vals[s | bv]),
            )
    return None


def spread_stats(fn: SplittingFn, e, limit: int = ENUM_LIMIT) -> SpreadStats:
    """Max value, min value outside the always-zero sets, and their ratio.

    The empty set never counts; the full edge is also excluded when
    g(e) = 0 (symmetric functions).  Spread is +inf when the minimum is 0,
    which is exactly the case strength-based sampling refuses.
    """
    vertices = tuple(sorted(set(e)))
    k = len(vertices)
    fn.check_arity(k)

    closed = _closed_form_spread(fn, k)
    if closed is not None:
        return closed

    if k > limit:
        raise ThresholdExceeded(
            f"|e| = {k} exceeds the enumeration limit {limit} and kind "
            f"{fn.kind} has no closed form (AllOrNothing/Additive/CardinalityBased do)"
        )
    vals = fn_table(fn, vertices)
    mx = float(np.max(vals[1:]))
    full_trivial = vals[-1] == 0.0
    allowed = vals[1:-1] if full_trivial else vals[1:]
    mn = float(np.min(allowed)) if allowed.size else 0.0
    return SpreadStats(mx, mn, (mx / mn if mn > 0 else math.inf), full_trivial, "enumeration")


def _closed_form_spread(fn: SplittingFn, k: int):
    s = fn.scale
    if isinstance(fn, AllOrNothing):
        if k == 1:
            return SpreadStats(0.0, 0.0, math.inf, True, "closed-form")
        return SpreadStats(s, s, 1.0, True, "closed-form")
    if isinstance(fn, Additive):
        if fn.symmetric:
            if k == 1:
                return SpreadStats(0.0, 0.0, math.inf, True, "closed-form")
            mx = min(k // 2, fn.K)
            mn = min(1, fn.K)
            return SpreadStats(s * mx, s * mn, mx / mn, True, "closed-form")
        mx = min(k, fn.K)
        mn = min(1, fn.K)
        return SpreadStats(s * mx, s * mn, mx / mn, False, "closed-form")
    if isinstance(fn, CardinalityBased):
        vals = fn.values
        mx = max(vals[1:])
        full_trivial = vals[-1] == 0.0
        pool = list(vals[1:-1]) if full_trivial else list(vals[1:])
        mn = min(pool) if pool else 0.0
        return SpreadStats(
            s * mx, s * mn, (mx / mn if mn > 0 else math.inf), full_trivial, "closed-form"
        )
    return None


def imbalance(fn: SplittingFn, e, limit: int = ENUM_LIMIT) -> float:
    """max over proper nonempty S of g(S) / g(e without S).

    Pairs with a zero denominator give +inf when the numerator is positive
    and are skipped when both sides vanish; +inf is also returned when no
    comparable pair exists (|e| = 1).
    """
    vertices = tuple(sorted(set(e)))
    k = len(vertices)
    if k > limit:
        raise ThresholdExceeded(f"|e| = {k} exceeds the enumeration limit {limit}")
    vals = fn_table(fn, vertices)
    full = (1 << k) - 1
    if k == 1:
        return math.inf
    masks = np.arange(1, full, dtype=np.int64)
    num = vals[masks]
    den = vals[full - masks]  # complement within the edge
    if np.any((den == 0) & (num > 0)):
        return math.inf
    ok = den > 0
    if not ok.any():
        return math.inf
    return float(np.max(num[ok] / den[ok]))
