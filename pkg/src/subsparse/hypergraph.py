"""Submodular hypergraphs and cut evaluation.

cut(S) = sum over edges of g_e(S & e).  For exhaustive work (verification,
brute-force importance) `all_cut_values` materializes the full 2**n cut
vector with one numpy gather per edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._util import parallel_chunks
from .errors import ThresholdExceeded
from .splitting import SplittingFn, eval_fn, fn_table


@dataclass(frozen=True)
class Hyperedge:
    vertices: tuple[int, ...]
    fn: SplittingFn

    def __post_init__(self):
        vs = tuple(sorted(set(int(v) for v in self.vertices)))
        if not vs:
            raise ValueError("hyperedge must have at least one vertex")
        object.__setattr__(self, "vertices", vs)
        self.fn.check_arity(len(vs))

    @property
    def k(self) -> int:
        return len(self.vertices)

    def value(self, S) -> float:
        return eval_fn(self.fn, self.vertices, S)

    def table(self) -> np.ndarray:
        """Scaled values for all 2**k local subsets of this edge."""
        return fn_table(self.fn, self.vertices)


@dataclass
class SubmodularHypergraph:
    n: int
    edges: list[Hyperedge] = field(default_factory=list)
    labels: list[str] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        for i, e in enumerate(self.edges):
            if e.vertices[0] < 0 or e.vertices[-1] >= self.n:
                raise ValueError(f"edge {i} has vertices outside 0..{self.n - 1}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must have length n")

    @property
    def m(self) -> int:
        return len(self.edges)

    def cut(self, S) -> float:
        return cut_value(self, S)


def cut_value(H: SubmodularHypergraph, S) -> float:
    """Cut weight of vertex set S: sum of per-edge splitting values."""
    Sset = set(S)
    return float(sum(e.value(Sset) for e in H.edges))


def subset_index(masks: np.ndarray, vertices: tuple[int, ...]) -> np.ndarray:
    """Map global subset bitmasks to local bitmasks of an edge."""
    out = np.zeros(masks.shape, dtype=np.int64)
    for j, v in enumerate(vertices):
        out |= ((masks >> v) & 1) << j
    return out


def all_cut_values(H: SubmodularHypergraph, max_n: int = 26) -> np.ndarray:
    """Cut weights of every subset of [n], indexed by global bitmask.

    Memory is O(2**n); refuse beyond max_n.  Work is chunked (and threaded
    when SUBSPARSE_THREADS > 1) with a deterministic merge.
    """
    if H.n > max_n:
        raise ThresholdExceeded(f"2**{H.n} cut values exceed the n <= {max_n} limit")
    total = 1 << H.n
    tables = [e.table() for e in H.edges]
    cuts = np.zeros(total, dtype=np.float64)

    def work(lo, hi):
        masks = np.arange(lo, hi, dtype=np.int64)
        acc = np.zeros(hi - lo, dtype=np.float64)
        for e, tab in zip(H.edges, tables):
            acc += tab[subset_index(masks, e.vertices)]
        return lo, acc

    for lo, acc in parallel_chunks(total, 1 << 20, work):
        cuts[lo : lo + len(acc)] = acc
    return cuts


def total_weight(H: SubmodularHypergraph) -> float:
    """sum_e g_e(e), the cut-irrelevant 'mass' used by importance sampling."""
    return float(sum(e.value(e.vertices) for e in H.edges))


def edge_values_of_subsets(edge: Hyperedge, member: np.ndarray) -> np.ndarray:
    """Scaled splitting values of one edge on a batch of subsets.

    member is a boolean matrix (batch, n); returns (batch,) floats.
    Cardinality-driven kinds avoid the 2**k table, so this works for
    arbitrarily large additive edges (the deformation sizes).
    """
    from .splitting import (  # local import to avoid a cycle at module load
        Additive,
        AllOrNothing,
        CardinalityBased,
        Coverage,
        DirectedAllOrNothing,
        MatroidRank,
        Product,
        SmallSide,
    )

    verts = list(edge.vertices)
    k = len(verts)
    fn = edge.fn
    hit = member[:, verts]
    cnt = hit.sum(axis=1)
    if isinstance(fn, AllOrNothing):
        return fn.scale * ((cnt > 0) & (cnt < k)).astype(np.float64)
    if isinstance(fn, SmallSide):
        return fn.scale * np.minimum(cnt, k - cnt).astype(np.float64)
    if isinstance(fn, Product):
        return fn.scale * (cnt * (k - cnt)).astype(np.float64)
    if isinstance(fn, Additive):
        if fn.symmetric:
            return fn.scale * np.minimum(np.minimum(cnt, k - cnt), fn.K)
        return fn.scale * np.minimum(cnt, fn.K)
    if isinstance(fn, CardinalityBased):
        return fn.scale * np.asarray(fn.values, dtype=np.float64)[cnt]
    if isinstance(fn, MatroidRank) and fn.mtype == "uniform":
        return fn.scale * np.minimum(cnt, fn.rank).astype(np.float64)
    if isinstance(fn, DirectedAllOrNothing):
        index = {v: i for i, v in enumerate(verts)}
        tcols = [index[v] for v in fn.tail]
        hcols = [index[v] for v in fn.head]
        return fn.scale * (hit[:, tcols].any(axis=1) & ~hit[:, hcols].all(axis=1)).astype(
            np.float64
        )
    if isinstance(fn, Coverage):
        out = np.zeros(member.shape[0], dtype=np.float64)
        for w, wt in enumerate(fn.weights):
            holders = [i for i, ms in enumerate(fn.member_sets) if w in ms]
            if holders and wt:
                out += wt * hit[:, holders].any(axis=1)
        return fn.scale * out
    # partition/explicit matroids and Explicit tables: go through the table
    tab = edge.table()
    idx = hit @ (1 << np.arange(k, dtype=np.int64))
    return tab[idx]


def cut_of_subsets(H: SubmodularHypergraph, member: np.ndarray) -> np.ndarray:
    """cut values for a batch of subsets given as a boolean (batch, n) matrix."""
    out = np.zeros(member.shape[0], dtype=np.float64)
    for e in H.edges:
        out += edge_values_of_subsets(e, member)
    return out
