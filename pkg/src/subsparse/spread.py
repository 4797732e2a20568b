"""Strength-based sampling for finite-spread instances, and the coverage
compression built on top of it.

The sampler partitions edges by whether g_e(e) vanishes (symmetric-style
functions) or not, balances an auxiliary clique graph per part, and keeps
edge e with probability p_e = min(1, rho / kappa_e), where kappa_e is the
edge's clique strength and

    rho = t * mu * gamma^2 * ln(max(n, 2)) / eps^2

with mu the largest spread in the part.  Kept edges are rescaled by 1/p_e.
Single-vertex edges have no clique (kappa = 0) and are always kept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._util import stream
from .checks import spread_stats
from .errors import PreconditionError
from .hypergraph import Hyperedge, SubmodularHypergraph
from .splitting import Additive, Coverage
from .strength import StrengthMap, build_auxiliary


@dataclass
class SpreadReport:
    epsilon: float
    t: float
    gamma: float
    seed: int
    m_in: int
    m_out: int
    # per part: (edge indices, mu, rho)
    parts: list[dict] = field(default_factory=list)
    kappa: np.ndarray | None = None
    p: np.ndarray | None = None
    sampled: np.ndarray | None = None
    norm_factor: np.ndarray | None = None
    balancer_rounds: int = 0


def sparsify_spread(
    H: SubmodularHypergraph,
    epsilon: float,
    seed: int,
    t: float = 25.0,
    gamma: float = 2.0,
    spread_limit: int = 16,
) -> tuple[SubmodularHypergraph, SpreadReport]:
    """Cut sparsifier via edge strengths; needs every spread finite.

    Parameters
    ----------
    H : input hypergraph; every edge must have finite spread
    epsilon : target relative cut error, in (0, 1)
    seed : RNG seed; edge i's decision depends only on the (seed, i) stream
    t : oversampling multiplier (theory wants > 24; smaller values are for
        experiments and are recorded in the report)
    gamma : clique balance factor passed to build_auxiliary

    Returns
    -------
    (sparsifier, SpreadReport)

    Raises
    ------
    InfiniteSpreadError, BalancerError (via build_auxiliary)
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must be in (0, 1)")
    spreads = np.array(
        [spread_stats(e.fn, e.vertices, limit=spread_limit).spread for e in H.edges]
    )
    vanishing = np.array([e.value(e.vertices) == 0.0 for e in H.edges])
    kappa = np.zeros(H.m)
    p = np.ones(H.m)
    report = SpreadReport(
        epsilon=epsilon, t=t, gamma=gamma, seed=seed, m_in=H.m, m_out=0
    )
    norm = np.ones(H.m)
    rounds = 0
    logn = math.log(max(H.n, 2))
    for zero_part in (False, True):
        idx = np.nonzero(vanishing == zero_part)[0]
        if len(idx) == 0:
            continue
        part = SubmodularHypergraph(n=H.n, edges=[H.edges[i] for i in idx])
        smap: StrengthMap = build_auxiliary(part, gamma=gamma, spread_limit=spread_limit)
        mu = float(np.max(spreads[idx]))
        rho = t * mu * gamma**2 * logn / epsilon**2
        kappa[idx] = smap.kappa
        norm[idx] = smap.norm_factor
        with np.errstate(divide="ignore"):
            p_part = np.where(smap.kappa > 0, np.minimum(1.0, rho / smap.kappa), 1.0)
        p[idx] = p_part
        rounds += smap.iterations
        report.parts.append(
            {
                "zero_mass": bool(zero_part),
                "edges": [int(i) for i in idx],
                "mu": mu,
                "rho": rho,
                "balancer_rounds": smap.iterations,
            }
        )
    sampled = np.zeros(H.m, dtype=bool)
    out = []
    for i, e in enumerate(H.edges):
        if stream(seed, i).uniform() < p[i]:
            sampled[i] = True
            out.append(Hyperedge(vertices=e.vertices, fn=e.fn.scaled_by(1.0 / p[i])))
    report.m_out = len(out)
    report.kappa = kappa
    report.p = p
    report.sampled = sampled
    report.norm_factor = norm
    report.balancer_rounds = rounds
    return SubmodularHypergraph(n=H.n, edges=out, labels=H.labels), report


@dataclass
class CoverageCompressReport:
    epsilon: float
    seed: int
    ground_in: int
    ground_out: int
    dropped_inert: int  # zero-weight or nowhere-covered elements
    spread_report: SpreadReport | None = None


def coverage_compress(
    fn: Coverage,
    e,
    epsilon: float,
    seed: int,
    t: float = 25.0,
    n: int | None = None,
) -> tuple[Coverage, CoverageCompressReport]:
    """Shrink a coverage function's ground set while preserving cuts.

    Every ground element w becomes a one-element coverage hyperedge on the
    vertices containing it (spread exactly 1); strength-based sampling
    keeps a subset and reweights by 1/p_w, and the survivors reassemble
    into a coverage function over the kept elements.

    Parameters
    ----------
    fn : Coverage splitting function
    e : vertex tuple the function sits on
    epsilon, seed, t : passed to sparsify_spread
    n : ambient vertex count (default max(e) + 1)

    Returns
    -------
    (compressed Coverage, CoverageCompressReport); the compressed function
    sits on the same vertex tuple e.
    """
    if not isinstance(fn, Coverage):
        raise PreconditionError("coverage_compress needs a Coverage splitting function")
    vertices = tuple(sorted(set(e)))
    fn.check_arity(len(vertices))
    if n is None:
        n = vertices[-1] + 1

    holders = [[] for _ in fn.ground]  # local positions covering each element
    for i, ms in enumerate(fn.member_sets):
        for w in ms:
            holders[w].append(i)
    live = [
        j for j in range(len(fn.ground)) if fn.weights[j] > 0 and holders[j]
    ]
    dropped = len(fn.ground) - len(live)
    pieces = [
        Hyperedge(
            vertices=tuple(vertices[i] for i in holders[j]),
            fn=Additive(K=1.0, symmetric=False, scale=fn.scale * fn.weights[j]),
        )
        for j in live
    ]
    Hc = SubmodularHypergraph(n=n, edges=pieces)
    Hs, sreport = sparsify_spread(Hc, epsilon, seed, t=t)

    kept = [j for j, flag in zip(live, sreport.sampled) if flag]
    new_weights = tuple(
        fn.weights[j] / sreport.p[pos]
        for pos, j in enumerate(live)
        if sreport.sampled[pos]
    )
    remap = {j: idx for idx, j in enumerate(kept)}
    new_member_sets = tuple(
        tuple(remap[w] for w in ms if w in remap) for ms in fn.member_sets
    )
    out = Coverage(
        ground=tuple(fn.ground[j] for j in kept),
        weights=new_weights,
        member_sets=new_member_sets,
        scale=fn.scale,
    )
    report = CoverageCompressReport(
        epsilon=epsilon,
        seed=seed,
        ground_in=len(fn.ground),
        ground_out=len(kept),
        dropped_inert=dropped,
        spread_report=sreport,
    )
    return out, report
