"""Importance sampling for arbitrary (possibly infinite-spread) instances.

Each edge's importance rho_e aggregates its share of the directed min-cut
mass over all ordered vertex pairs; rho'_e is its share of the total edge
mass sum_f g_f(f).  Sampling keeps edge e with probability
p_e = min(1, M (rho_e + rho'_e)) for M = c n / eps^2 and rescales kept
edges by 1/p_e, which preserves every cut in expectation.  Sum of rho_e is
at most n(n-1) and of rho'_e at most 1, so the expected output size is
O(c n^3 / eps^2) in general and O(c n^2 / eps^2) for monotone instances,
where rho_e uses singleton values instead of pair tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._util import stream
from .errors import PreconditionError
from .checks import check_monotone
from .hypergraph import Hyperedge, SubmodularHypergraph
from .oracle import edge_pair_tables


@dataclass
class ImportanceReport:
    """Everything the sampler decided, per edge and globally."""

    method: str  # "general" or "monotone"
    epsilon: float
    oversample: float  # the constant c in M = c * n / eps^2
    M: float
    seed: int
    m_in: int
    m_out: int
    rho: np.ndarray
    rho_prime: np.ndarray
    p: np.ndarray
    sampled: np.ndarray  # bool per input edge
    applied_scale: np.ndarray  # 1/p for kept edges, 0 for dropped
    sigma: np.ndarray | None = None  # exact importances, filled on request only
    notes: list[str] = field(default_factory=list)


def rho_general(H: SubmodularHypergraph, limit: int = 16) -> np.ndarray:
    """Pair-based importances rho_e of every edge.

    rho_e = sum over ordered pairs u != v of mincut_e(u->v) / D(u, v),
    where D is the sum of that quantity over all edges; pairs with
    D(u, v) = 0 contribute nothing (every edge's term is 0 there too).
    """
    tables = edge_pair_tables(H, limit=limit)
    denom = np.zeros((H.n, H.n), dtype=np.float64)
    for t in tables:
        denom += t.table
    np.fill_diagonal(denom, 0.0)
    ok = denom > 0
    rho = np.zeros(H.m, dtype=np.float64)
    for i, t in enumerate(tables):
        rho[i] = float(np.sum(t.table[ok] / denom[ok]))
    return rho


def rho_prime(H: SubmodularHypergraph) -> np.ndarray:
    """Mass-based importances: g_e(e) / sum_f g_f(f), or all zeros."""
    w = np.array([e.value(e.vertices) for e in H.edges], dtype=np.float64)
    total = float(w.sum())
    return w / total if total > 0 else np.zeros(H.m)


def rho_monotone(H: SubmodularHypergraph) -> np.ndarray:
    """Singleton-based importances for monotone instances.

    rho_e = sum over vertices v of g_e({v} & e) / sum_f g_f({v} & f);
    vertices where every edge vanishes contribute nothing.
    """
    singles = np.zeros((H.m, H.n), dtype=np.float64)
    for i, e in enumerate(H.edges):
        for v in e.vertices:
            singles[i, v] = e.value((v,))
    denom = singles.sum(axis=0)
    ok = denom > 0
    return (singles[:, ok] / denom[ok]).sum(axis=1)


def _sample(H, p, seed):
    keep = np.zeros(H.m, dtype=bool)
    out = []
    scale = np.zeros(H.m, dtype=np.float64)
    for i, e in enumerate(H.edges):
        if stream(seed, i).uniform() < p[i]:
            keep[i] = True
            scale[i] = 1.0 / p[i]
            out.append(Hyperedge(vertices=e.vertices, fn=e.fn.scaled_by(scale[i])))
    return keep, scale, out


def sparsify_general(
    H: SubmodularHypergraph,
    epsilon: float,
    seed: int,
    oversample: float = 1.0,
    limit: int = 16,
) -> tuple[SubmodularHypergraph, ImportanceReport]:
    """Cut sparsifier via pair-importance sampling.

    Parameters
    ----------
    H : input hypergraph (any splitting functions)
    epsilon : target relative cut error, in (0, 1)
    seed : RNG seed; edge i's keep decision uses the (seed, i) stream only
    oversample : multiplier c in M = c * n / eps^2
    limit : refuse edges beyond this size (pair tables enumerate 2^|e|)

    Returns
    -------
    (sparsifier, ImportanceReport)
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must be in (0, 1)")
    rho = rho_general(H, limit=limit)
    rp = rho_prime(H)
    M = oversample * H.n / epsilon**2
    p = np.minimum(1.0, M * (rho + rp))
    keep, scale, out = _sample(H, p, seed)
    report = ImportanceReport(
        method="general",
        epsilon=epsilon,
        oversample=oversample,
        M=M,
        seed=seed,
        m_in=H.m,
        m_out=len(out),
        rho=rho,
        rho_prime=rp,
        p=p,
        sampled=keep,
        applied_scale=scale,
    )
    return SubmodularHypergraph(n=H.n, edges=out, labels=H.labels), report


def require_monotone(H: SubmodularHypergraph, check_limit: int = 16) -> None:
    """Raise PreconditionError unless every splitting function is monotone.

    Kinds monotone by construction pass immediately; the rest are checked
    exhaustively up to check_limit vertices per edge.
    """
    for i, e in enumerate(H.edges):
        if e.fn.monotone_kind:
            continue
        witness = check_monotone(e.fn, e.vertices, limit=check_limit)
        if witness is not None:
            raise PreconditionError(
                f"edge {i} is not monotone: g({set(witness.S) | {witness.v}}) = "
                f"{witness.after} < g({set(witness.S)}) = {witness.before}"
            )


def sparsify_monotone(
    H: SubmodularHypergraph,
    epsilon: float,
    seed: int,
    oversample: float = 1.0,
    check_limit: int = 16,
) -> tuple[SubmodularHypergraph, ImportanceReport]:
    """Cut sparsifier for monotone instances via singleton importances.

    Every splitting function must be monotone nondecreasing; kinds not
    monotone by construction are checked exhaustively (up to check_limit)
    and a violation is a PreconditionError.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must be in (0, 1)")
    require_monotone(H, check_limit=check_limit)
    rho = rho_monotone(H)
    M = oversample * H.n / epsilon**2
    p = np.minimum(1.0, M * rho)
    keep, scale, out = _sample(H, p, seed)
    report = ImportanceReport(
        method="monotone",
        epsilon=epsilon,
        oversample=oversample,
        M=M,
        seed=seed,
        m_in=H.m,
        m_out=len(out),
        rho=rho,
        rho_prime=np.zeros(H.m),
        p=p,
        sampled=keep,
        applied_scale=scale,
    )
    return SubmodularHypergraph(n=H.n, edges=out, labels=H.labels), report
