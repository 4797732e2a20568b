"""Hard instance families whose sparsifiers carry recoverable bits.

Three generators, each paired with a decoder that reads hidden
randomness back out of *cut queries alone*, demonstrating that any
structure preserving those cuts must spend the corresponding bits:

- a cardinality-based family hiding an incidence matrix behind
  balanced binary code words (decoded through gradient gaps),
- a directed all-or-nothing family hiding a random tail augmentation
  behind an inclusion-exclusion of cut differences, and
- a directed family where removing a single hyperedge provably breaks
  every common sparsifier (the distinguishability argument).

Decoders accept any object exposing ``cut(S) -> float`` and never
guess: an ambiguous comparison raises instead of returning a bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._util import stream
from .delta import cardinality_profile, gradient_series
from .errors import DecodeFailure, PreconditionError
from .hypergraph import Hyperedge, SubmodularHypergraph
from .splitting import CardinalityBased, DirectedAllOrNothing, SplittingFn


class CutCache:
    """Memoizing wrapper around anything with a cut(S) method."""

    def __init__(self, target):
        self._target = target
        self._memo: dict[frozenset, float] = {}
        self.queries = 0

    def cut(self, S) -> float:
        key = frozenset(S)
        if key not in self._memo:
            self.queries += 1
            self._memo[key] = float(self._target.cut(key))
        return self._memo[key]


def as_cut_oracle(obj) -> CutCache:
    if isinstance(obj, CutCache):
        return obj
    if hasattr(obj, "cut"):
        return CutCache(obj)
    if isinstance(obj, (bytes, bytearray)):
        from .encoding import decode

        return CutCache(decode(bytes(obj)))
    raise TypeError("expected an object with a cut(S) method or encoded bytes")


# ---------------------------------------------------------------------------
# code-word family (cardinality-based splitting functions)
# ---------------------------------------------------------------------------


def _code_words(m: int, d: int, width: int) -> np.ndarray:
    """m balanced binary words of weight d in {0,1}^width.

    Within a block of 2d consecutive positions the words are the
    nonzero parity patterns x -> popcount(s & x) mod 2, which pairwise
    share exactly d/2 positions; words from different blocks are
    disjoint.  Hence w.w = d and w.w' in {d/2, 0}.
    """
    per_block = max(1, 2 * d - 1)
    blocks = -(-m // per_block)
    if blocks * 2 * d > width:
        raise PreconditionError(
            f"cannot place {m} weight-{d} code words in {width} positions"
        )
    words = np.zeros((m, width), dtype=np.uint8)
    for idx in range(m):
        b, s = divmod(idx, per_block)
        s += 1
        for x in range(2 * d):
            if bin(s & x).count("1") & 1:
                words[idx, 2 * d * b + x] = 1
    return words


@dataclass(frozen=True)
class HadamardFamily:
    n: int
    sizes: tuple[int, int, int]  # left / middle / right part sizes
    t: int  # first gradient drop of the template
    d: int  # code weight, smallest power of two >= t
    arity: int  # common hyperedge size
    fn: SplittingFn  # per-edge splitting function
    delta0: float  # gradient at 0
    deltad: float  # gradient at d
    codewords: np.ndarray  # (n/6, 2n/3) uint8
    B: np.ndarray  # (n/6, n/6) uint8; B[i, j] = 1 iff v_i in e_j
    H: SubmodularHypergraph
    seed: int


def gen_hadamard_family(
    n: int, template: SplittingFn, seed: int = 0
) -> HadamardFamily:
    """n/6 equal-arity hyperedges hiding a random left-part incidence matrix."""
    if n <= 0 or n % 12:
        raise PreconditionError(
            "vertex count must be a positive multiple of 12 "
            "(the construction samples size-n/12 subsets of an n/6 part)"
        )
    m = n // 6
    probe = len(template.values) - 1 if isinstance(template, CardinalityBased) else n
    gs = gradient_series(template, probe)
    t = gs.first_drop
    if t is None or t >= n // 3:
        raise PreconditionError(
            f"template gradient must drop before n/3 = {n // 3} (got {t})"
        )
    d = 1 << (t - 1).bit_length()
    if d > n // 3:
        raise PreconditionError(f"code weight {d} exceeds n/3 = {n // 3}")
    width = 2 * n // 3
    words = _code_words(m, d, width)
    arity = d + n // 12 + 1
    fn = template
    if isinstance(fn, CardinalityBased):
        if len(fn.values) < arity + 1:
            raise PreconditionError(
                f"template needs values up to arity {arity}, has {len(fn.values) - 1}"
            )
        fn = CardinalityBased(values=fn.values[: arity + 1], scale=fn.scale)
    prof = cardinality_profile(fn, arity)

    B = np.zeros((m, m), dtype=np.uint8)
    edges = []
    for j in range(m):
        left = stream(seed, j).choice(m, size=n // 12, replace=False)
        B[left, j] = 1
        verts = (
            [int(v) for v in left]
            + [m + int(pos) for pos in np.flatnonzero(words[j])]
            + [m + width + j]
        )
        edges.append(Hyperedge(tuple(verts), fn))
    return HadamardFamily(
        n=n,
        sizes=(m, width, m),
        t=t,
        d=d,
        arity=arity,
        fn=fn,
        delta0=float(prof[1] - prof[0]),
        deltad=float(prof[d + 1] - prof[d]),
        codewords=words,
        B=B,
        H=SubmodularHypergraph(n, tuple(edges)),
        seed=seed,
    )


def decode_hadamard(oracle, fam: HadamardFamily, epsilon: float = 0.0) -> np.ndarray:
    """Recover the hidden incidence matrix from cut queries.

    Works against any reweighting of the family member with per-edge
    weights in [1-epsilon, 1+epsilon]; a comparison that lands between
    the decision zones raises DecodeFailure rather than guessing.
    """
    orc = as_cut_oracle(oracle)
    target_n = getattr(getattr(orc, "_target", None), "n", fam.n)
    if target_n != fam.n:
        raise ValueError(f"oracle is over {target_n} vertices, family over {fam.n}")
    m = fam.n // 6
    margin = (1.0 - epsilon) * (fam.delta0 - fam.deltad)
    if margin <= 0.0:
        raise PreconditionError("decoder needs a positive gradient gap")
    out = np.zeros((m, m), dtype=np.uint8)
    pcols = [frozenset(m + int(p) for p in np.flatnonzero(fam.codewords[j])) for j in range(m)]
    for j in range(m):
        base = orc.cut(pcols[j])
        for i in range(m):
            single = orc.cut({i})
            diff = single - (orc.cut(pcols[j] | {i}) - base)
            if diff < margin / 3.0:
                out[i, j] = 0
            elif diff > 2.0 * margin / 3.0:
                out[i, j] = 1
            else:
                raise DecodeFailure(
                    f"ambiguous incidence bit ({i},{j}): difference {diff:.6g} "
                    f"inside the dead zone of margin {margin:.6g}"
                )
    return out


# ---------------------------------------------------------------------------
# directed family with random tail augmentation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirectedFamily:
    n: int
    m: int  # part size n/3
    epsilon: float
    rmax: int  # ring offsets 1..rmax
    index: tuple[tuple[int, int, int], ...]  # (i, x, j) per hyperedge
    tails_v: np.ndarray  # (edges, m) uint8 hidden augmentation bits
    H: SubmodularHypergraph
    seed: int


def _ring_offset(epsilon: float, denom: int) -> int:
    r = 1.0 / (denom * epsilon)
    rint = round(r)
    if rint < 1 or abs(r - rint) > 1e-9:
        raise PreconditionError(f"1/({denom}*epsilon) must be a positive integer, got {r}")
    return rint


def gen_directed_family(n: int, epsilon: float, seed: int = 0) -> DirectedFamily:
    """(n/3)^2/(8 epsilon) directed hyperedges with random tail bits."""
    if n <= 0 or n % 3:
        raise PreconditionError("vertex count must be a positive multiple of 3")
    m = n // 3
    rmax = _ring_offset(epsilon, 8)
    if 2 * rmax >= m:
        raise PreconditionError(
            f"need 1/(4*epsilon) < n/3 so ring offsets do not wrap (rmax={rmax}, m={m})"
        )
    index = []
    edges = []
    bits = np.zeros((m * m * rmax, m), dtype=np.uint8)
    count = 0
    for i in range(m):
        for x in range(1, rmax + 1):
            for j in range(m):
                hit = stream(seed, count).random(m) < 0.5
                bits[count] = hit
                tail = {m + i, m + (i + x) % m} | {int(v) for v in np.flatnonzero(hit)}
                head = (2 * m + j,)
                verts = tuple(sorted(tail | set(head)))
                edges.append(
                    Hyperedge(verts, DirectedAllOrNothing(head=head, tail=tuple(sorted(tail))))
                )
                index.append((i, x, j))
                count += 1
    return DirectedFamily(
        n=n,
        m=m,
        epsilon=epsilon,
        rmax=rmax,
        index=tuple(index),
        tails_v=bits,
        H=SubmodularHypergraph(n, tuple(edges)),
        seed=seed,
    )


def _touched_weight(orc: CutCache, S: frozenset, k: int, single: float) -> float:
    """Total weight of hyperedges containing vertex k in their tail that S
    already touches (tail hit or head swallowed), via three cut queries."""
    return single - (orc.cut(S | {k}) - orc.cut(S))


def decode_directed(oracle, fam: DirectedFamily, epsilon: float = 0.0) -> np.ndarray:
    """Recover every hidden tail bit from cut queries.

    For each hyperedge the weight of {that edge} intersected with the
    edges at vertex v_k comes out of an inclusion-exclusion over two
    overlapping cut sets, minus a baseline that cancels the edges whose
    heads both cuts swallow.
    """
    orc = as_cut_oracle(oracle)
    m = fam.m
    lo = (1.0 - epsilon) / 3.0
    hi = 2.0 * (1.0 - epsilon) / 3.0
    out = np.zeros_like(fam.tails_v)
    w_all = frozenset(range(2 * m, 3 * m))
    singles = [orc.cut({k}) for k in range(m)]
    for row, (i, x, j) in enumerate(fam.index):
        s1 = frozenset({m + i}) | w_all - {2 * m + j}
        s2 = frozenset({m + (i + x) % m}) | w_all - {2 * m + j}
        s12 = s1 | s2
        s0 = w_all - {2 * m + j}
        for k in range(m):
            val = (
                _touched_weight(orc, s1, k, singles[k])
                + _touched_weight(orc, s2, k, singles[k])
                - _touched_weight(orc, s12, k, singles[k])
                - _touched_weight(orc, s0, k, singles[k])
            )
            if val < lo:
                out[row, k] = 0
            elif val > hi:
                out[row, k] = 1
            else:
                raise DecodeFailure(
                    f"ambiguous tail bit (edge {row}, vertex {k}): weight {val:.6g} "
                    f"inside the dead zone [{lo:.6g}, {hi:.6g}]"
                )
    return out


# ---------------------------------------------------------------------------
# distinguishability family (sampled offsets, sibling argument)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DistinguishFamily:
    n: int
    m: int  # half size n/2
    epsilon: float
    q: int  # offsets per (i, j) pair = 1/(16 epsilon)
    rmax: int  # offset range = 1/(8 epsilon)
    offsets: tuple[tuple[tuple[int, ...], ...], ...]  # offsets[i][j]
    H: SubmodularHypergraph
    seed: int


def gen_distinguish_family(n: int, epsilon: float, seed: int = 0) -> DistinguishFamily:
    if n <= 0 or n % 2:
        raise PreconditionError("vertex count must be a positive even number")
    m = n // 2
    q = _ring_offset(epsilon, 16)
    rmax = 2 * q
    if 2 * rmax >= m:
        raise PreconditionError(
            f"need 1/(4*epsilon) < n/2 so ring offsets do not wrap (rmax={rmax}, m={m})"
        )
    offsets: list[tuple[tuple[int, ...], ...]] = []
    edges = []
    for i in range(m):
        row = []
        for j in range(m):
            xs = stream(seed, i * m + j).choice(rmax, size=q, replace=False) + 1
            xs = tuple(int(v) for v in sorted(xs))
            row.append(xs)
            for x in xs:
                tail = (i, (i + x) % m)
                head = (m + j,)
                verts = tuple(sorted(set(tail) | set(head)))
                edges.append(
                    Hyperedge(verts, DirectedAllOrNothing(head=head, tail=tuple(sorted(set(tail)))))
                )
        offsets.append(tuple(row))
    return DistinguishFamily(
        n=n,
        m=m,
        epsilon=epsilon,
        q=q,
        rmax=rmax,
        offsets=tuple(offsets),
        H=SubmodularHypergraph(n, tuple(edges)),
        seed=seed,
    )


@dataclass(frozen=True)
class DistinguishReport:
    cut_values: tuple[float, ...]  # cut(S_i) for every i, j fixed to 0
    range_ok: bool  # all in [q, 3q]
    removed: tuple[int, int, int]  # (i, x, j) of the dropped hyperedge
    a: float  # cut(S_i0) in the original
    b: float  # cut(S_i0+x0) in the original
    union_identity_ok: bool  # cut(S1 u S2) = a + b - 1
    sibling_cuts_ok: bool  # a-1 / b-1 / a+b-2, additive
    intervals_disjoint: bool  # (1+eps)(a+b-2) < (1-eps)(a+b-1)
    conditional_ok: bool  # implied form at a+b <= 1/(4 eps)
    min_relative_gap: float  # gap when a cut value differs by one
    gap_ok: bool  # min gap >= 16 eps / 3


def _drop_edge(H: SubmodularHypergraph, pos: int) -> SubmodularHypergraph:
    return SubmodularHypergraph(H.n, H.edges[:pos] + H.edges[pos + 1 :])


def distinguish_check(fam: DistinguishFamily) -> DistinguishReport:
    """Verify the cut facts that force a sibling to need its own sparsifier."""
    m, q, eps = fam.m, fam.q, fam.epsilon
    H = fam.H

    def S(i: int, j: int = 0) -> frozenset:
        return frozenset({i}) | frozenset(range(m, 2 * m)) - {m + j}

    cuts = tuple(H.cut(S(i)) for i in range(m))
    range_ok = all(q - 1e-9 <= c <= 3 * q + 1e-9 for c in cuts)

    i0, j0 = 0, 0
    x0 = fam.offsets[i0][j0][0]
    pos = next(
        r for r, key in enumerate(_edge_keys(fam)) if key == (i0, x0, j0)
    )
    sib = _drop_edge(H, pos)

    a = H.cut(S(i0, j0))
    b = H.cut(S((i0 + x0) % m, j0))
    union = H.cut(S(i0, j0) | S((i0 + x0) % m, j0))
    union_ok = abs(union - (a + b - 1.0)) < 1e-9

    sa = sib.cut(S(i0, j0))
    sb = sib.cut(S((i0 + x0) % m, j0))
    su = sib.cut(S(i0, j0) | S((i0 + x0) % m, j0))
    sib_ok = (
        abs(sa - (a - 1.0)) < 1e-9
        and abs(sb - (b - 1.0)) < 1e-9
        and abs(su - (a + b - 2.0)) < 1e-9
        and abs(su - (sa + sb)) < 1e-9
    )

    disjoint = (1.0 + eps) * (a + b - 2.0) < (1.0 - eps) * (a + b - 1.0)
    conditional = disjoint or a + b > 1.0 / (4.0 * eps)
    gap = min(abs(sa / a - 1.0), abs(sb / b - 1.0))
    return DistinguishReport(
        cut_values=cuts,
        range_ok=range_ok,
        removed=(i0, x0, j0),
        a=a,
        b=b,
        union_identity_ok=union_ok,
        sibling_cuts_ok=sib_ok,
        intervals_disjoint=disjoint,
        conditional_ok=conditional,
        min_relative_gap=float(gap),
        gap_ok=gap >= 16.0 * eps / 3.0 - 1e-12,
    )


def _edge_keys(fam: DistinguishFamily):
    for i in range(fam.m):
        for j in range(fam.m):
            for x in fam.offsets[i][j]:
                yield (i, x, j)


def active_edges(H: SubmodularHypergraph, S) -> frozenset:
    """Indices of hyperedges with positive value on S."""
    return frozenset(i for i, e in enumerate(H.edges) if e.value(S) > 0.0)
