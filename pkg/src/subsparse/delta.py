"""Distance-from-additivity statistics and support-size lower bounds.

For a splitting function g on a hyperedge e and size-t subsets S, T,

    delta_t(S, T) = 1 - g(S u T) / (g(S) + g(T)),

which measures how far g is from additive at scale t.  When a
noticeable fraction of size-t pairs has delta_t bounded away from zero,
no reweighting of small-support hyperedges can approximate g well; the
implied bound is rho * delta_hat**2 * |e| / t up to an unstated
constant.  This module computes delta statistics (closed form for
cardinality-driven kinds, enumeration or seeded sampling otherwise) and
the best lower bound over the applicable argument routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from ._util import stream
from .errors import InfiniteSpreadError, PreconditionError
from .hypergraph import Hyperedge, edge_values_of_subsets
from .splitting import (
    Additive,
    AllOrNothing,
    CardinalityBased,
    MatroidRank,
    Product,
    SmallSide,
    SplittingFn,
    eval_fn,
    fn_table,
)

PAIR_BUDGET = 10_000_000
SAMPLE_CAP = 100_000


def cardinality_profile(fn: SplittingFn, k: int) -> "np.ndarray | None":
    """f(0..k) for kinds whose value depends only on |S|, else None."""
    u = np.arange(k + 1, dtype=np.float64)
    if isinstance(fn, AllOrNothing):
        prof = ((u > 0) & (u < k)).astype(np.float64)
    elif isinstance(fn, SmallSide):
        prof = np.minimum(u, k - u)
    elif isinstance(fn, Product):
        prof = u * (k - u)
    elif isinstance(fn, Additive):
        prof = np.minimum(u, fn.K)
        if fn.symmetric:
            prof = np.minimum(prof, k - u)
    elif isinstance(fn, CardinalityBased):
        fn.check_arity(k)
        prof = np.asarray(fn.values, dtype=np.float64)
    elif isinstance(fn, MatroidRank) and fn.mtype == "uniform":
        prof = np.minimum(u, fn.rank)
    else:
        return None
    return fn.scale * prof


@dataclass(frozen=True)
class GradientSeries:
    """Forward differences of a cardinality profile and its first drop."""

    deltas: tuple[float, ...]  # f(i+1) - f(i), i = 0..k-1
    first_drop: "int | None"  # smallest i with deltas[i] < deltas[0]


def gradient_series(fn: SplittingFn, k: int) -> GradientSeries:
    prof = cardinality_profile(fn, k)
    if prof is None:
        raise PreconditionError(
            "gradient series requires a cardinality-driven splitting function"
        )
    d = np.diff(prof)
    drops = np.flatnonzero(d < d[0] - 1e-12)
    return GradientSeries(
        deltas=tuple(float(x) for x in d),
        first_drop=int(drops[0]) if drops.size else None,
    )


def disjoint_pair_fraction(k: int, t: int) -> float:
    """Fraction of distinct unordered size-t pairs that are disjoint."""
    if 2 * t > k:
        return 0.0
    return float(Fraction(math.comb(k - t, t), math.comb(k, t) - 1))


@dataclass(frozen=True)
class DeltaStats:
    t: int
    delta_hat: float
    delta_bar: "float | None"  # uniform all-pairs bound, cardinality kinds
    pair_fraction: float  # fraction of disjoint pairs with delta > delta_hat
    pair_fraction_ci: "tuple[float, float] | None"  # Wilson 95% when sampled
    disjoint_pair_fraction: float
    implied_support_bound: float  # rho * disjoint_frac * delta_hat^2 * |e| / t
    method: str  # "closed-form" | "exact" | "sampled"
    pairs_checked: int
    undefined_pairs: int = 0  # pairs with g(S)+g(T)=0, excluded


def _wilson(hits: int, n: int, z: float = 1.959963984540054) -> tuple[float, float]:
    if n == 0:
        return (0.0, 1.0)
    phat = hits / n
    denom = 1.0 + z * z / n
    center = (phat + z * z / (2 * n)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / n + z * z / (4 * n * n)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


def _finish_stats(
    t: int,
    k: int,
    delta_hat: float,
    delta_bar: "float | None",
    rho: float,
    ci: "tuple[float, float] | None",
    method: str,
    pairs: int,
    undefined: int,
) -> DeltaStats:
    djf = disjoint_pair_fraction(k, t)
    bound = rho * djf * delta_hat * delta_hat * k / t
    return DeltaStats(
        t=t,
        delta_hat=float(delta_hat),
        delta_bar=delta_bar,
        pair_fraction=float(rho),
        pair_fraction_ci=ci,
        disjoint_pair_fraction=djf,
        implied_support_bound=float(bound),
        method=method,
        pairs_checked=pairs,
        undefined_pairs=undefined,
    )


def delta_bar_closed_form(fn: SplittingFn, k: int, t: int) -> "float | None":
    """1 - max_{t <= u <= min(2t,k)} f(u)/(2 f(t)) for cardinality kinds."""
    prof = cardinality_profile(fn, k)
    if prof is None:
        return None
    if prof[t] <= 0.0:
        raise PreconditionError(f"splitting value vanishes on size-{t} subsets")
    hi = min(2 * t, k)
    return float(1.0 - prof[t : hi + 1].max() / (2.0 * prof[t]))


def delta_stats(
    fn: SplittingFn,
    e: tuple[int, ...],
    t: int,
    delta_hat: float = 0.0,
    budget: int = PAIR_BUDGET,
    seed: int = 0,
) -> DeltaStats:
    """Delta statistics over disjoint size-t pairs of subsets of e."""
    verts = tuple(sorted(e))
    k = len(verts)
    if not 1 <= t or 2 * t > k:
        raise ValueError(f"t={t} out of range for an edge of size {k} (need 2t <= |e|)")

    prof = cardinality_profile(fn, k)
    if prof is not None:
        if prof[t] <= 0.0:
            raise PreconditionError(f"splitting value vanishes on size-{t} subsets")
        dbar = delta_bar_closed_form(fn, k, t)
        delta_disjoint = 1.0 - prof[2 * t] / (2.0 * prof[t])
        rho = 1.0 if delta_disjoint > delta_hat else 0.0
        pairs = math.comb(k, t) * math.comb(k - t, t) // 2
        return _finish_stats(t, k, delta_hat, dbar, rho, None, "closed-form", pairs, 0)

    n_disjoint = math.comb(k, t) * math.comb(k - t, t) // 2
    if n_disjoint <= budget and k <= 20:
        tab = fn_table(fn, verts)
        masks = np.array(
            [sum(1 << i for i in c) for c in combinations(range(k), t)], dtype=np.int64
        )
        vals = tab[masks]
        hits = valid = undefined = 0
        for i in range(len(masks) - 1):
            rest = masks[i + 1 :]
            dj = (rest & masks[i]) == 0
            if not dj.any():
                continue
            den = vals[i] + vals[i + 1 :][dj]
            uni = tab[masks[i] | rest[dj]]
            ok = den > 0.0
            undefined += int((~ok).sum())
            d = 1.0 - uni[ok] / den[ok]
            valid += int(ok.sum())
            hits += int((d > delta_hat).sum())
        rho = hits / valid if valid else 0.0
        return _finish_stats(t, k, delta_hat, None, rho, None, "exact", valid, undefined)

    samples = min(budget, SAMPLE_CAP)
    rng = stream(seed, 0)
    edge = Hyperedge(verts, fn)
    n_cols = verts[-1] + 1
    hits = valid = undefined = 0
    done = 0
    chunk = max(1, min(samples, (1 << 22) // max(k, 1)))
    base = np.arange(k, dtype=np.int64)
    while done < samples:
        b = min(chunk, samples - done)
        perm = rng.permuted(np.tile(base, (b, 1)), axis=1)
        mem_s = np.zeros((b, n_cols), dtype=bool)
        mem_t = np.zeros((b, n_cols), dtype=bool)
        rows = np.arange(b)[:, None]
        vcols = np.asarray(verts, dtype=np.int64)
        mem_s[rows, vcols[perm[:, :t]]] = True
        mem_t[rows, vcols[perm[:, t : 2 * t]]] = True
        den = edge_values_of_subsets(edge, mem_s) + edge_values_of_subsets(edge, mem_t)
        uni = edge_values_of_subsets(edge, mem_s | mem_t)
        ok = den > 0.0
        undefined += int((~ok).sum())
        d = 1.0 - uni[ok] / den[ok]
        valid += int(ok.sum())
        hits += int((d > delta_hat).sum())
        done += b
    rho = hits / valid if valid else 0.0
    ci = _wilson(hits, valid)
    return _finish_stats(t, k, delta_hat, None, rho, ci, "sampled", valid, undefined)


@dataclass(frozen=True)
class LowerBoundReport:
    value: float
    route: str
    rho: float
    delta_hat: float
    t: float
    note: str = "up to an unpinned universal constant"
    routes: list = field(default_factory=list)


def _route_additive(fn: SplittingFn, k: int) -> "dict | None":
    if not isinstance(fn, Additive):
        return None
    entry = {
        "route": "additive",
        "value": k / fn.K,
        "rho": 1.0,
        "delta_hat": 0.5,
        "t": float(fn.K),
    }
    if fn.K > k / 2:
        entry["trivial_regime"] = True
    return entry


def _route_cardinality_uniform(fn: SplittingFn, k: int) -> "dict | None":
    prof = cardinality_profile(fn, k)
    if prof is None:
        return None
    best = None
    for t in range(1, k // 2 + 1):
        if prof[t] <= 0.0:
            continue
        dbar = 1.0 - prof[t : 2 * t + 1].max() / (2.0 * prof[t])
        if dbar <= 0.0:
            continue
        value = dbar * dbar * k / t
        if best is None or value > best["value"]:
            best = {
                "route": "cardinality-uniform",
                "value": value,
                "rho": 1.0,
                "delta_hat": dbar,
                "t": float(t),
            }
    return best


def _route_cardinality_spread(
    fn: SplittingFn, k: int, epsilon: float
) -> "dict | None":
    prof = cardinality_profile(fn, k)
    if prof is None or not 0.0 < epsilon < 0.25:
        return None
    if prof[1] <= 0.0:
        raise InfiniteSpreadError(
            "cardinality spread route needs a positive singleton value"
        )
    norm = prof / prof[1]
    mu = float(norm[1:].max())
    gamma = 1.0 / math.log2(2.0 - 4.0 * epsilon)
    t_cap = mu**gamma + 1.0
    found = None
    for t in range(1, k // 2 + 1):
        if norm[t] <= 0.0:
            continue
        dbar = 1.0 - norm[t : 2 * t + 1].max() / (2.0 * norm[t])
        if dbar > 2.0 * epsilon:
            found = t
            break
    if found is None or found >= t_cap:
        return None
    return {
        "route": "cardinality-spread",
        "value": epsilon * epsilon * k / mu**gamma,
        "rho": 1.0,
        "delta_hat": 2.0 * epsilon,
        "t": float(found),
        "mu": mu,
    }


def _route_unweighted(
    fn: SplittingFn, e: tuple[int, ...], k: int, epsilon: float
) -> "dict | None":
    if not 0.0 < epsilon < 0.25:
        return None
    singles = [eval_fn(fn, e, (v,)) for v in e]
    if any(abs(s - 1.0) > 1e-9 for s in singles):
        return None
    from .checks import spread_stats

    st = spread_stats(fn, e)
    mu = st.spread
    if not math.isfinite(mu):
        raise InfiniteSpreadError("unweighted route needs finite spread")
    gamma = 1.0 / math.log2(2.0 - 4.0 * epsilon)
    if mu ** (2.0 * gamma) >= k:
        return None
    return {
        "route": "unweighted",
        "value": epsilon * epsilon * k / mu ** (2.0 * gamma),
        "rho": mu ** (-gamma) / 160.0,
        "delta_hat": 2.0 * epsilon,
        "t": (2.0 * mu) ** gamma,
        "mu": mu,
    }


def _route_generic(
    fn: SplittingFn,
    e: tuple[int, ...],
    k: int,
    epsilon: float,
    t: int,
    budget: int,
    seed: int,
) -> dict:
    stats = delta_stats(fn, e, t, delta_hat=2.0 * epsilon, budget=budget, seed=seed)
    return {
        "route": "generic",
        "value": stats.implied_support_bound,
        "rho": stats.pair_fraction * stats.disjoint_pair_fraction,
        "delta_hat": stats.delta_hat,
        "t": float(t),
        "method": stats.method,
    }


def support_lower_bound(
    fn: SplittingFn,
    e: tuple[int, ...],
    epsilon: float,
    route: str = "best",
    t: "int | None" = None,
    budget: int = PAIR_BUDGET,
    seed: int = 0,
) -> LowerBoundReport:
    """Best support-size lower bound over the applicable argument routes.

    Values are the raw expressions with the asymptotic constant set to
    one.  `route` may pin a single route by name; pinned spread-based
    routes raise when the spread is infinite, while `best` skips routes
    that do not apply.
    """
    verts = tuple(sorted(e))
    k = len(verts)
    entries: list[dict] = []

    def consider(name: str, build) -> None:
        if route not in ("best", name):
            return
        if route == name:
            got = build()
            if got is None:
                raise PreconditionError(f"route {name!r} does not apply here")
            entries.append(got)
            return
        try:
            got = build()
        except InfiniteSpreadError:
            got = None
        if got is not None:
            entries.append(got)

    consider("additive", lambda: _route_additive(fn, k))
    consider("cardinality-uniform", lambda: _route_cardinality_uniform(fn, k))
    consider(
        "cardinality-spread", lambda: _route_cardinality_spread(fn, k, epsilon)
    )
    consider("unweighted", lambda: _route_unweighted(fn, verts, k, epsilon))
    if route == "generic" or (route == "best" and not entries):
        tt = t if t is not None else 1
        entries.append(_route_generic(fn, verts, k, epsilon, tt, budget, seed))
    if not entries:
        raise PreconditionError(f"route {route!r} does not apply here")

    best = max(entries, key=lambda r: r["value"])
    return LowerBoundReport(
        value=float(best["value"]),
        route=best["route"],
        rho=float(best["rho"]),
        delta_hat=float(best["delta_hat"]),
        t=float(best["t"]),
        routes=entries,
    )
