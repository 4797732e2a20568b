"""Splitting functions for submodular hypergraphs.

A hyperedge e carries a splitting function g assigning a nonnegative value
to every subset of e with g(empty) = 0; the edge's contribution to the cut
weight of a vertex set S is g(S & e).  Nine parametric kinds are provided;
all of them are submodular for valid parameters, which `checks.check_submodular`
can certify exhaustively on small edges.

Conventions
-----------
* vertices are integers; an edge is a sorted tuple of distinct vertices
* "local position i" means the i-th smallest vertex of the edge
* subset tables enumerate all 2**k subsets of a k-vertex edge as bitmask
  indices, bit i <-> local position i
* each function stores a nonnegative `scale`; kind formulas below are the
  unscaled values
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._util import mask_positions, popcounts


@dataclass(frozen=True)
class SplittingFn:
    """Base class; concrete kinds subclass this and set `kind`."""

    scale: float = 1.0

    kind = "abstract"

    def __post_init__(self):
        if not (self.scale >= 0.0) or not np.isfinite(self.scale):
            raise ValueError("scale must be a finite nonnegative number")

    # -- kind-specific hooks -------------------------------------------------

    def unscaled(self, positions: frozenset[int], k: int) -> float:
        """Value on the subset given by local positions, before scaling."""
        raise NotImplementedError

    def unscaled_table(self, k: int) -> np.ndarray:
        """Values for all 2**k local subsets; overridden where a vector
        form exists, otherwise a plain loop."""
        out = np.empty(1 << k, dtype=np.float64)
        for mask in range(1 << k):
            out[mask] = self.unscaled(mask_positions(mask), k)
        return out

    # -- shared --------------------------------------------------------------

    def table(self, k: int) -> np.ndarray:
        """Scaled values for all 2**k local subsets."""
        self.check_arity(k)
        return self.unscaled_table(k) * self.scale

    def check_arity(self, k: int) -> None:
        """Raise ValueError if this function cannot sit on a k-vertex edge."""
        if k < 1:
            raise ValueError("edges must have at least one vertex")

    def with_scale(self, scale: float) -> "SplittingFn":
        return dataclasses.replace(self, scale=scale)

    def scaled_by(self, factor: float) -> "SplittingFn":
        return dataclasses.replace(self, scale=self.scale * factor)

    @property
    def monotone_kind(self) -> bool:
        """True when the kind is monotone nondecreasing for any valid
        parameters (a sufficient, not necessary, condition)."""
        return False


def _count_table(k: int, of_count) -> np.ndarray:
    """Table for functions that depend only on |subset| (and k)."""
    counts = popcounts(k)
    per_count = np.array([of_count(c) for c in range(k + 1)], dtype=np.float64)
    return per_count[counts]


@dataclass(frozen=True)
class AllOrNothing(SplittingFn):
    """1 on proper nonempty subsets of e, else 0 (the hypergraph cut function)."""

    kind = "AllOrNothing"

    def unscaled(self, positions, k):
        return 1.0 if 0 < len(positions) < k else 0.0

    def unscaled_table(self, k):
        return _count_table(k, lambda c: 1.0 if 0 < c < k else 0.0)


@dataclass(frozen=True)
class DirectedAllOrNothing(SplittingFn):
    """1 iff S touches the tail and does not contain the whole head.

    head and tail are given as (global) vertex ids, each a subset of the
    edge's vertices.
    """

    head: tuple[int, ...] = ()
    tail: tuple[int, ...] = ()

    kind = "DirectedAllOrNothing"

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "head", tuple(sorted(set(self.head))))
        object.__setattr__(self, "tail", tuple(sorted(set(self.tail))))
        if not self.head or not self.tail:
            raise ValueError("head and tail must be nonempty")

    def bound(self, vertices: Sequence[int]) -> tuple[int, int]:
        """Local bitmasks (head_mask, tail_mask) relative to a vertex tuple."""
        index = {v: i for i, v in enumerate(vertices)}
        try:
            hm = sum(1 << index[v] for v in self.head)
            tm = sum(1 << index[v] for v in self.tail)
        except KeyError as bad:
            raise ValueError(f"head/tail vertex {bad.args[0]} not in edge") from None
        return hm, tm

    def unscaled(self, positions, k):
        # positions are local; head/tail are global, so evaluation must go
        # through eval_fn / table, which know the edge. Guard against misuse.
        raise ValueError("DirectedAllOrNothing is evaluated relative to an edge")

    def table_for_edge(self, vertices: Sequence[int]) -> np.ndarray:
        hm, tm = self.bound(vertices)
        masks = np.arange(1 << len(vertices), dtype=np.int64)
        hit_tail = (masks & tm) != 0
        head_out = (masks & hm) != hm
        return (hit_tail & head_out).astype(np.float64) * self.scale


@dataclass(frozen=True)
class SmallSide(SplittingFn):
    """min(|S|, |e without S|)."""

    kind = "SmallSide"

    def unscaled(self, positions, k):
        return float(min(len(positions), k - len(positions)))

    def unscaled_table(self, k):
        return _count_table(k, lambda c: float(min(c, k - c)))


@dataclass(frozen=True)
class Additive(SplittingFn):
    """min(|S|, K), or min(|S|, |e without S|, K) when symmetric.

    K may be any positive real (deformation produces fractional caps).
    """

    K: float = 1.0
    symmetric: bool = False

    kind = "Additive"

    def __post_init__(self):
        super().__post_init__()
        if not (self.K > 0) or not np.isfinite(self.K):
            raise ValueError("K must be a finite positive number")

    def unscaled(self, positions, k):
        c = len(positions)
        if self.symmetric:
            return float(min(c, k - c, self.K))
        return float(min(c, self.K))

    def unscaled_table(self, k):
        if self.symmetric:
            return _count_table(k, lambda c: float(min(c, k - c, self.K)))
        return _count_table(k, lambda c: float(min(c, self.K)))

    @property
    def monotone_kind(self):
        return not self.symmetric


@dataclass(frozen=True)
class Product(SplittingFn):
    """|S| * |e without S|."""

    kind = "Product"

    def unscaled(self, positions, k):
        c = len(positions)
        return float(c * (k - c))

    def unscaled_table(self, k):
        return _count_table(k, lambda c: float(c * (k - c)))


@dataclass(frozen=True)
class CardinalityBased(SplittingFn):
    """f(|S|) for a supplied table f(0..k); f(0) must be 0.

    Submodular iff the increments f(i+1)-f(i) are non-increasing, which is
    the caller's responsibility (checkable via check_submodular).
    """

    values: tuple[float, ...] = (0.0,)

    kind = "CardinalityBased"

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "values", tuple(float(x) for x in self.values))
        if len(self.values) < 2:
            raise ValueError("table must cover sizes 0..|e| with |e| >= 1")
        if self.values[0] != 0.0:
            raise ValueError("f(0) must be 0")

    def check_arity(self, k):
        super().check_arity(k)
        if len(self.values) != k + 1:
            raise ValueError(
                f"cardinality table has {len(self.values) - 1} + 1 entries, edge has {k} vertices"
            )

    def unscaled(self, positions, k):
        return self.values[len(positions)]

    def unscaled_table(self, k):
        return _count_table(k, lambda c: self.values[c])

    @property
    def monotone_kind(self):
        return all(b >= a for a, b in zip(self.values, self.values[1:]))


@dataclass(frozen=True)
class Coverage(SplittingFn):
    """Weighted coverage: sum of rho(w) over ground elements w covered by S.

    member_sets[i] lists indices into `ground` covered by local position i.
    Monotone submodular for nonnegative weights.
    """

    ground: tuple = ()
    weights: tuple[float, ...] = ()
    member_sets: tuple[tuple[int, ...], ...] = ()

    kind = "Coverage"

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "ground", tuple(self.ground))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(
            self, "member_sets", tuple(tuple(sorted(set(ms))) for ms in self.member_sets)
        )
        if len(self.weights) != len(self.ground):
            raise ValueError("weights and ground must have equal length")
        if any(w < 0 for w in self.weights):
            raise ValueError("coverage weights must be nonnegative")
        for ms in self.member_sets:
            for idx in ms:
                if not 0 <= idx < len(self.ground):
                    raise ValueError(f"member set index {idx} out of range")

    def check_arity(self, k):
        super().check_arity(k)
        if len(self.member_sets) != k:
            raise ValueError(
                f"coverage lists {len(self.member_sets)} member sets, edge has {k} vertices"
            )

    def unscaled(self, positions, k):
        covered = set()
        for i in positions:
            covered.update(self.member_sets[i])
        return sum(self.weights[w] for w in covered)

    def unscaled_table(self, k):
        masks = np.arange(1 << k, dtype=np.int64)
        out = np.zeros(1 << k, dtype=np.float64)
        # who covers element w, as a bitmask over local positions
        coverers = [0] * len(self.ground)
        for i, ms in enumerate(self.member_sets):
            for w in ms:
                coverers[w] |= 1 << i
        for w, cm in enumerate(coverers):
            if cm and self.weights[w]:
                out += self.weights[w] * ((masks & cm) != 0)
        return out

    @property
    def monotone_kind(self):
        return True


@dataclass(frozen=True)
class MatroidRank(SplittingFn):
    """Rank function of a matroid on the edge's vertices.

    mtype 'uniform' uses `rank`; 'partition' uses `blocks` (global vertex
    ids partitioning a subset of e) with per-block `caps`; 'explicit' uses
    `independent`, a family of independent sets (global ids) whose downward
    closure defines independence, so rank(X) = max_I |I & X|.
    """

    mtype: str = "uniform"
    rank: int = 1
    blocks: tuple[tuple[int, ...], ...] = ()
    caps: tuple[int, ...] = ()
    independent: tuple[tuple[int, ...], ...] = ()

    kind = "MatroidRank"

    def __post_init__(self):
        super().__post_init__()
        if self.mtype not in ("uniform", "partition", "explicit"):
            raise ValueError(f"unknown matroid type {self.mtype!r}")
        object.__setattr__(self, "blocks", tuple(tuple(sorted(set(b))) for b in self.blocks))
        object.__setattr__(self, "caps", tuple(int(c) for c in self.caps))
        object.__setattr__(
            self, "independent", tuple(tuple(sorted(set(i))) for i in self.independent)
        )
        if self.mtype == "uniform" and self.rank < 1:
            raise ValueError("uniform matroid rank must be >= 1")
        if self.mtype == "partition":
            if len(self.blocks) != len(self.caps):
                raise ValueError("blocks and caps must have equal length")
            seen = set()
            for b in self.blocks:
                if seen & set(b):
                    raise ValueError("partition blocks must be disjoint")
                seen |= set(b)
            if any(c < 0 for c in self.caps):
                raise ValueError("partition caps must be nonnegative")

    def bound_masks(self, vertices: Sequence[int]) -> list[int]:
        index = {v: i for i, v in enumerate(vertices)}
        groups = self.blocks if self.mtype == "partition" else self.independent
        masks = []
        for grp in groups:
            m = 0
            for v in grp:
                if v not in index:
                    raise ValueError(f"matroid vertex {v} not in edge")
                m |= 1 << index[v]
            masks.append(m)
        return masks

    def unscaled(self, positions, k):
        if self.mtype == "uniform":
            return float(min(len(positions), self.rank))
        raise ValueError("partition/explicit matroids are evaluated relative to an edge")

    def unscaled_table(self, k):
        if self.mtype == "uniform":
            return _count_table(k, lambda c: float(min(c, self.rank)))
        raise ValueError("partition/explicit matroids are evaluated relative to an edge")

    def table_for_edge(self, vertices: Sequence[int]) -> np.ndarray:
        k = len(vertices)
        if self.mtype == "uniform":
            return self.table(k)
        masks = np.arange(1 << k, dtype=np.int64)
        counts = popcounts(k)
        out = np.zeros(1 << k, dtype=np.float64)
        group_masks = self.bound_masks(vertices)
        if self.mtype == "partition":
            for gm, cap in zip(group_masks, self.caps):
                out += np.minimum(counts[masks & gm], cap)
        else:
            for gm in group_masks:
                np.maximum(out, counts[masks & gm], out=out)
        return out * self.scale

    @property
    def monotone_kind(self):
        return True


@dataclass(frozen=True)
class Explicit(SplittingFn):
    """Arbitrary table over all 2**k subsets, bit i <-> i-th smallest vertex."""

    values: tuple[float, ...] = (0.0, 0.0)

    kind = "Explicit"

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "values", tuple(float(x) for x in self.values))
        m = len(self.values)
        if m < 2 or m & (m - 1):
            raise ValueError("explicit table length must be a power of two >= 2")
        if self.values[0] != 0.0:
            raise ValueError("g(empty) must be 0")

    def check_arity(self, k):
        super().check_arity(k)
        if len(self.values) != 1 << k:
            raise ValueError(
                f"explicit table has {len(self.values)} entries, edge needs {1 << k}"
            )

    def unscaled(self, positions, k):
        mask = 0
        for p in positions:
            mask |= 1 << p
        return self.values[mask]

    def unscaled_table(self, k):
        return np.asarray(self.values, dtype=np.float64)


# the kinds whose table depends on the identity of the edge's vertices,
# not just its size
_EDGE_BOUND = (DirectedAllOrNothing, MatroidRank)


def fn_table(fn: SplittingFn, vertices: Sequence[int]) -> np.ndarray:
    """Scaled subset table of fn on an edge, all 2**k local bitmasks."""
    vertices = tuple(vertices)
    fn.check_arity(len(vertices))
    if isinstance(fn, _EDGE_BOUND):
        return fn.table_for_edge(vertices)
    return fn.table(len(vertices))


def eval_fn(fn: SplittingFn, e: Sequence[int], S) -> float:
    """Evaluate fn at S, restricted to the edge.

    Parameters
    ----------
    fn : SplittingFn
    e : sequence of vertex ids (treated as sorted set)
    S : iterable of vertex ids; only S & e matters

    Returns
    -------
    float : scale * g(S & e)
    """
    vertices = tuple(sorted(set(e)))
    k = len(vertices)
    fn.check_arity(k)
    Sset = set(S)
    if isinstance(fn, _EDGE_BOUND) and not (isinstance(fn, MatroidRank) and fn.mtype == "uniform"):
        index = {v: i for i, v in enumerate(vertices)}
        mask = 0
        for v in Sset:
            if v in index:
                mask |= 1 << index[v]
        if isinstance(fn, DirectedAllOrNothing):
            hm, tm = fn.bound(vertices)
            val = 1.0 if (mask & tm) != 0 and (mask & hm) != hm else 0.0
            return fn.scale * val
        # partition / explicit matroid
        total = 0.0
        if fn.mtype == "partition":
            for gm, cap in zip(fn.bound_masks(vertices), fn.caps):
                total += min((mask & gm).bit_count(), cap)
        else:
            for gm in fn.bound_masks(vertices):
                total = max(total, float((mask & gm).bit_count()))
        return fn.scale * float(total)
    positions = frozenset(i for i, v in enumerate(vertices) if v in Sset)
    return fn.scale * fn.unscaled(positions, k)


KINDS = {
    cls.kind: cls
    for cls in (
        AllOrNothing,
        DirectedAllOrNothing,
        SmallSide,
        Additive,
        Product,
        CardinalityBased,
        Coverage,
        MatroidRank,
        Explicit,
    )
}
