"""Auxiliary multigraphs and edge strengths for finite-spread instances.

Each hyperedge e contributes a clique F_e on its vertices to an auxiliary
multigraph; the clique's weights are nonnegative and sum to 1.  The
strength of a pair (u, v) is the largest c such that some vertex-induced
subgraph containing both u and v has global min cut >= c; parallel edges
between the same endpoints share the strength of their pair, so strengths
are computed once per pair on the collapsed weight matrix.

A clique assignment is balanced when, within every clique, the largest
strength among positive-weight pairs is at most gamma times the smallest
strength over all pairs.  `build_auxiliary` starts from uniform weights
and, when the contract fails, iteratively moves half of the weight of
every pair whose strength exceeds gamma times the clique minimum onto the
weakest pair, recomputing strengths each round.  Weights that have been
halved down to noise are snapped to exact zero so a fully drained pair
stops counting toward the positive-weight maximum.  The result is always
re-verified post hoc and a typed error carries the best assignment found
when the loop does not converge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .checks import spread_stats
from .errors import BalancerError, InfiniteSpreadError
from .hypergraph import SubmodularHypergraph

BALANCE_TOL = 1e-9


def min_cut(W: np.ndarray) -> tuple[float, np.ndarray]:
    """Global min cut of a connected weighted graph (symmetric matrix).

    Returns (value, side) where side is a boolean mask of one shore.
    Maximum-adjacency sweep with vertex contraction; deterministic
    (argmax takes the first maximum).
    """
    n = W.shape[0]
    if n < 2:
        raise ValueError("min cut needs at least two vertices")
    A = W.astype(np.float64).copy()
    np.fill_diagonal(A, 0.0)
    groups = [[i] for i in range(n)]
    alive = np.ones(n, dtype=bool)
    best = math.inf
    best_side: list[int] = []
    for _ in range(n - 1):
        idx = np.nonzero(alive)[0]
        # one maximum-adjacency phase over the alive vertices
        start = int(idx[0])
        conn = A[start].copy()
        conn[~alive] = -np.inf
        conn[start] = -np.inf
        s = t = start
        for _ in range(len(idx) - 1):
            nxt = int(np.argmax(conn))  # first max: deterministic tie-break
            s, t = t, nxt
            conn += A[nxt]
            conn[nxt] = -np.inf
        phase_cut = float(np.sum(A[t, alive]))
        if phase_cut < best:
            best = phase_cut
            best_side = list(groups[t])
        # contract t into s
        A[s, :] += A[t, :]
        A[:, s] += A[:, t]
        A[s, s] = 0.0
        A[t, :] = 0.0
        A[:, t] = 0.0
        groups[s] += groups[t]
        alive[t] = False
        if len(idx) == 2:
            break
    side = np.zeros(n, dtype=bool)
    side[best_side] = True
    return best, side


def _components(W: np.ndarray) -> list[np.ndarray]:
    n = W.shape[0]
    seen = np.zeros(n, dtype=bool)
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = [s]
        while stack:
            u = stack.pop()
            for v in np.nonzero(W[u] > 0)[0]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(int(v))
                    stack.append(int(v))
        comps.append(np.array(sorted(comp), dtype=np.int64))
    return comps


def pair_strengths(W: np.ndarray) -> np.ndarray:
    """All-pairs strengths of a weighted graph given as a symmetric matrix.

    Recursive min-cut decomposition: within a connected piece with min cut
    c, pairs crossing the cut get strength max(level, c) and each side is
    processed recursively; pairs in different connected pieces get the
    level at which they fell apart.  Produces at most n - 1 distinct
    positive values (each recursion step separates at least one vertex).
    """
    n = W.shape[0]
    K = np.zeros((n, n), dtype=np.float64)
    stack: list[tuple[np.ndarray, float]] = [(np.arange(n, dtype=np.int64), 0.0)]
    while stack:
        nodes, level = stack.pop()
        if len(nodes) <= 1:
            continue
        sub = W[np.ix_(nodes, nodes)]
        comps = _components(sub)
        if len(comps) > 1:
            for i in range(len(comps)):
                for j in range(i + 1, len(comps)):
                    a, b = nodes[comps[i]], nodes[comps[j]]
                    K[np.ix_(a, b)] = level
                    K[np.ix_(b, a)] = level
            for comp in comps:
                stack.append((nodes[comp], level))
            continue
        c, side = min_cut(sub)
        lvl = max(level, c)
        a, b = nodes[side], nodes[~side]
        K[np.ix_(a, b)] = lvl
        K[np.ix_(b, a)] = lvl
        stack.append((a, lvl))
        stack.append((b, lvl))
    return K


@dataclass(frozen=True)
class AuxEdge:
    """One clique edge of the auxiliary multigraph."""

    source: int  # index of the hyperedge whose clique this belongs to
    pair: tuple[int, int]
    weight: float
    strength: float


@dataclass
class StrengthMap:
    """Balanced auxiliary multigraph with per-pair strengths.

    kappa[i] is the min strength over ALL pairs of hyperedge i's clique
    (0.0 for single-vertex edges, which have no clique); kappa_max[i] is
    the max over its positive-weight pairs.  norm_factor[i] is the edge's
    min nontrivial splitting value (the rescale that would normalize it
    to 1); sampling itself is scale-free, so the factor is informational.
    """

    n: int
    aux_edges: list[AuxEdge]
    kappa: np.ndarray
    kappa_max: np.ndarray
    norm_factor: np.ndarray
    gamma: float
    iterations: int
    strengths: np.ndarray  # n x n pair strengths of the final assignment


def _clique_pairs(H: SubmodularHypergraph) -> list[list[tuple[int, int]]]:
    return [list(combinations(e.vertices, 2)) for e in H.edges]


def _collapse(n: int, cliques, weights) -> np.ndarray:
    W = np.zeros((n, n), dtype=np.float64)
    for pairs, w in zip(cliques, weights):
        for (u, v), wt in zip(pairs, w):
            W[u, v] += wt
            W[v, u] += wt
    return W


def build_auxiliary(
    H: SubmodularHypergraph,
    gamma: float = 2.0,
    max_rounds: int | None = None,
    spread_limit: int = 16,
) -> StrengthMap:
    """Construct the balanced auxiliary multigraph of a finite-spread instance.

    Parameters
    ----------
    H : hypergraph whose edges all have finite spread (else InfiniteSpreadError)
    gamma : balance factor; the certified contract is
        max strength over positive-weight pairs <= gamma * min strength over all pairs
        within every clique
    max_rounds : balancer round cap, default 100 * max(m, 1)

    Returns
    -------
    StrengthMap

    Raises
    ------
    InfiniteSpreadError : some edge has min nontrivial value 0
    BalancerError : the contract could not be certified within the cap
    """
    m = H.m
    norm = np.zeros(m, dtype=np.float64)
    for i, e in enumerate(H.edges):
        st = spread_stats(e.fn, e.vertices, limit=spread_limit)
        if not math.isfinite(st.spread):
            raise InfiniteSpreadError(
                f"edge {i} has infinite spread; use the importance sampler instead"
            )
        norm[i] = st.min_nontrivial
    cliques = _clique_pairs(H)
    weights = [
        np.full(len(pairs), 1.0 / len(pairs)) if pairs else np.zeros(0) for pairs in cliques
    ]
    cap = 100 * max(m, 1) if max_rounds is None else max_rounds

    def strengths_of(ws):
        K = pair_strengths(_collapse(H.n, cliques, ws))
        kap = np.zeros(m)
        kmx = np.zeros(m)
        for i, pairs in enumerate(cliques):
            if not pairs:
                continue
            vals = np.array([K[u, v] for u, v in pairs])
            kap[i] = float(np.min(vals))
            pos = ws[i] > 0
            kmx[i] = float(np.max(vals[pos])) if pos.any() else 0.0
        return K, kap, kmx

    rounds = 0
    K, kappa, kappa_max = strengths_of(weights)
    while rounds < cap:
        bad = [
            i
            for i in range(m)
            if cliques[i] and kappa_max[i] > gamma * kappa[i] * (1.0 + BALANCE_TOL)
        ]
        if not bad:
            break
        for i in bad:
            pairs = cliques[i]
            vals = np.array([K[u, v] for u, v in pairs])
            weak = int(np.argmin(vals))
            movers = np.nonzero(
                (weights[i] > 0) & (vals > gamma * kappa[i] * (1.0 + BALANCE_TOL))
            )[0]
            movers = movers[movers != weak]
            if movers.size == 0:
                continue
            shift = weights[i][movers] / 2.0
            weights[i][movers] -= shift
            weights[i][weak] += float(shift.sum())
            weights[i][weights[i] < 1e-12 * weights[i].max()] = 0.0
            weights[i] /= weights[i].sum()
        rounds += 1
        K, kappa, kappa_max = strengths_of(weights)

    # post-hoc certification, regardless of how we got here
    problems = []
    for i, pairs in enumerate(cliques):
        if not pairs:
            continue
        if abs(weights[i].sum() - 1.0) > 1e-9 or np.any(weights[i] < 0):
            problems.append(f"clique {i} weights not a distribution")
        if kappa_max[i] > gamma * kappa[i] * (1.0 + BALANCE_TOL):
            problems.append(
                f"clique {i} unbalanced: {kappa_max[i]:.6g} > {gamma} * {kappa[i]:.6g}"
            )
    if problems:
        worst = max(
            (kappa_max[i] / kappa[i]) for i in range(m) if cliques[i] and kappa[i] > 0
        )
        raise BalancerError(
            f"balance contract not certified after {rounds} rounds: " + "; ".join(problems[:3]),
            assignment=weights,
            worst_ratio=worst,
        )

    aux = [
        AuxEdge(source=i, pair=(u, v), weight=float(wt), strength=float(K[u, v]))
        for i, pairs in enumerate(cliques)
        for (u, v), wt in zip(pairs, weights[i])
    ]
    return StrengthMap(
        n=H.n,
        aux_edges=aux,
        kappa=kappa,
        kappa_max=kappa_max,
        norm_factor=norm,
        gamma=gamma,
        iterations=rounds,
        strengths=K,
    )
