"""Seeded random instance generators, certified submodular on creation.

Explicit tables are built as mixtures of provably submodular pieces
(concave-of-cardinality profiles plus weighted coverage) and then still
run through check_submodular; a failing draw is regenerated up to a
retry cap.  All generators are deterministic functions of their seed.
"""

from __future__ import annotations

import numpy as np

from ._util import stream
from .checks import check_submodular
from .errors import RefusalError
from .hypergraph import Hyperedge, SubmodularHypergraph
from .splitting import (
    Additive,
    AllOrNothing,
    CardinalityBased,
    Coverage,
    DirectedAllOrNothing,
    Explicit,
    MatroidRank,
    Product,
    SmallSide,
    SplittingFn,
)

RETRY_CAP = 20

MIXED_KINDS = (
    "all-or-nothing",
    "directed",
    "small-side",
    "additive",
    "product",
    "cardinality",
    "coverage",
    "matroid",
    "explicit",
)
MONOTONE_KINDS = ("coverage", "additive-monotone", "matroid-uniform", "cardinality-monotone")


def concave_values(rng: np.random.Generator, k: int) -> tuple[float, ...]:
    """f(0..k) with f(0)=0 and non-increasing positive gradient."""
    grads = np.sort(rng.uniform(0.05, 1.0, size=k))[::-1]
    return (0.0, *np.cumsum(grads))


def random_cardinality_fn(rng: np.random.Generator, k: int) -> CardinalityBased:
    vals = np.asarray(concave_values(rng, k))
    if rng.random() < 0.3:
        vals = np.minimum(vals, vals[::-1])  # symmetrized: still submodular
    return CardinalityBased(values=tuple(vals), scale=_scale(rng))


def random_coverage_fn(rng: np.random.Generator, k: int) -> Coverage:
    h = int(rng.integers(max(2, k // 2), 2 * k + 1))
    weights = tuple(rng.uniform(0.1, 1.0, size=h))
    member_sets = tuple(
        tuple(int(w) for w in np.flatnonzero(rng.random(h) < 0.5)) for _ in range(k)
    )
    return Coverage(
        ground=tuple(range(h)), weights=weights, member_sets=member_sets, scale=_scale(rng)
    )


def random_explicit_fn(rng: np.random.Generator, k: int) -> Explicit:
    for _ in range(RETRY_CAP):
        card = CardinalityBased(values=concave_values(rng, k))
        cov = random_coverage_fn(rng, k)
        table = card.table(k) + cov.with_scale(1.0).table(k)
        fn = Explicit(values=tuple(table), scale=_scale(rng))
        if check_submodular(fn, tuple(range(k))) is None:
            return fn
    raise RefusalError(f"could not certify a random explicit table in {RETRY_CAP} tries")


def _scale(rng: np.random.Generator) -> float:
    return float(rng.uniform(0.5, 2.0))


def random_fn(rng: np.random.Generator, verts: tuple[int, ...], kind: str) -> SplittingFn:
    k = len(verts)
    if kind == "all-or-nothing":
        return AllOrNothing(scale=_scale(rng))
    if kind == "small-side":
        return SmallSide(scale=_scale(rng))
    if kind == "product":
        return Product(scale=_scale(rng))
    if kind == "additive":
        return Additive(
            K=float(rng.uniform(0.5, k)), symmetric=bool(rng.random() < 0.5), scale=_scale(rng)
        )
    if kind == "additive-monotone":
        return Additive(K=float(rng.uniform(0.5, k)), symmetric=False, scale=_scale(rng))
    if kind == "cardinality":
        return random_cardinality_fn(rng, k)
    if kind == "cardinality-monotone":
        # concave values only; the symmetrized variant decreases past k/2
        return CardinalityBased(values=concave_values(rng, k), scale=_scale(rng))
    if kind == "coverage":
        return random_coverage_fn(rng, k)
    if kind == "explicit":
        return random_explicit_fn(rng, k)
    if kind == "directed":
        cut = int(rng.integers(1, k))
        order = rng.permutation(k)
        head = tuple(verts[i] for i in order[:cut])
        tail = tuple(verts[i] for i in order[cut:])
        return DirectedAllOrNothing(head=head, tail=tail, scale=_scale(rng))
    if kind == "matroid-uniform":
        return MatroidRank(mtype="uniform", rank=int(rng.integers(1, k + 1)), scale=_scale(rng))
    if kind == "matroid":
        if rng.random() < 0.5:
            return MatroidRank(
                mtype="uniform", rank=int(rng.integers(1, k + 1)), scale=_scale(rng)
            )
        order = rng.permutation(k)
        nblocks = int(rng.integers(1, min(3, k) + 1))
        splits = sorted(rng.choice(range(1, k), size=nblocks - 1, replace=False)) if nblocks > 1 else []
        bounds = [0, *splits, k]
        blocks = tuple(
            tuple(verts[i] for i in order[a:b]) for a, b in zip(bounds, bounds[1:])
        )
        caps = tuple(int(rng.integers(1, len(b) + 1)) for b in blocks)
        return MatroidRank(mtype="partition", blocks=blocks, caps=caps, scale=_scale(rng))
    raise ValueError(f"unknown generator kind {kind!r}")


def random_instance(
    n: int,
    m: int,
    seed: int = 0,
    kmax: int = 8,
    kinds: tuple[str, ...] = MIXED_KINDS,
) -> SubmodularHypergraph:
    """m random hyperedges over n vertices with mixed splitting kinds."""
    rng = stream(seed, 0)
    edges = []
    for _ in range(m):
        k = int(rng.integers(2, min(kmax, n) + 1))
        verts = tuple(int(v) for v in sorted(rng.choice(n, size=k, replace=False)))
        kind = kinds[int(rng.integers(len(kinds)))]
        edges.append(Hyperedge(verts, random_fn(rng, verts, kind)))
    return SubmodularHypergraph(n, tuple(edges))


def random_monotone_instance(
    n: int, m: int, seed: int = 0, kmax: int = 8
) -> SubmodularHypergraph:
    return random_instance(n, m, seed=seed, kmax=kmax, kinds=MONOTONE_KINDS)


def generate(kind: str, seed: int = 0, **params):
    """Build a named instance; returns (hypergraph, meta).

    meta records the resolved parameters (and for the bit-hiding
    families, everything needed to regenerate them for decoding).
    """
    from . import families

    if kind == "random-submodular":
        n = int(params.pop("n", 10))
        m = int(params.pop("m", 20))
        kmax = int(params.pop("kmax", 8))
        H = random_instance(n, m, seed=seed, kmax=kmax)
        return H, {"kind": kind, "n": n, "m": m, "kmax": kmax, "seed": seed}
    if kind == "cardinality":
        n = int(params.pop("n", 10))
        m = int(params.pop("m", 20))
        kmax = int(params.pop("kmax", 8))
        H = random_instance(n, m, seed=seed, kmax=kmax, kinds=("cardinality",))
        return H, {"kind": kind, "n": n, "m": m, "kmax": kmax, "seed": seed}
    if kind == "coverage":
        n = int(params.pop("n", 10))
        m = int(params.pop("m", 20))
        kmax = int(params.pop("kmax", 8))
        H = random_instance(n, m, seed=seed, kmax=kmax, kinds=("coverage",))
        return H, {"kind": kind, "n": n, "m": m, "kmax": kmax, "seed": seed}
    if kind == "hadamard-family":
        n = int(params.pop("n", 48))
        K = int(params.pop("K", 2))
        fam = families.gen_hadamard_family(n, Additive(K=float(K)), seed=seed)
        meta = {"kind": kind, "n": n, "K": K, "seed": seed, "d": fam.d, "t": fam.t}
        return fam.H, meta
    if kind == "directed-family":
        n = int(params.pop("n", 24))
        epsilon = float(params.pop("epsilon", 1.0 / 16.0))
        fam = families.gen_directed_family(n, epsilon, seed=seed)
        meta = {"kind": kind, "n": n, "epsilon": epsilon, "seed": seed, "rmax": fam.rmax}
        return fam.H, meta
    raise ValueError(f"unknown instance kind {kind!r}")
