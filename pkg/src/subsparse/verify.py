"""Certification that one hypergraph approximates the cuts of another.

Two modes: exhaustive enumeration of all 2**n subsets (refused above a
size limit), and seeded random sampling for larger ground sets.  The
zero-cut convention is: if both cuts vanish on S the subset is fine; if
exactly one vanishes the pair cannot satisfy any multiplicative bound
and S is reported as a violation with infinite error.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._util import parallel_chunks, stream
from .errors import RefusalError
from .hypergraph import SubmodularHypergraph, all_cut_values, cut_of_subsets

EXHAUSTIVE_LIMIT = 24


@dataclass(frozen=True)
class VerificationReport:
    epsilon: float
    method: str  # "exhaustive" | "sampled"
    subsets_checked: int
    ok: bool
    max_rel_error: float
    mean_rel_error: float
    violations: int
    worst_subset: tuple[int, ...]
    worst_original: float
    worst_approx: float
    notes: dict = field(default_factory=dict)


def _relerr(orig: np.ndarray, approx: np.ndarray) -> np.ndarray:
    """Per-subset relative error, inf where exactly one of the cuts is zero."""
    err = np.zeros(orig.shape, dtype=np.float64)
    both_zero = (orig == 0.0) & (approx == 0.0)
    pos = orig > 0.0
    err[pos] = np.abs(approx[pos] - orig[pos]) / orig[pos]
    mismatch = ~both_zero & ~pos
    err[mismatch] = np.inf
    return err


def _finish(
    epsilon: float,
    method: str,
    errs: np.ndarray,
    orig: np.ndarray,
    approx: np.ndarray,
    subsets: "np.ndarray | None",
    n: int,
    notes: dict,
) -> VerificationReport:
    worst = int(np.argmax(errs))
    if subsets is None:
        wset = tuple(v for v in range(n) if (worst >> v) & 1)
    else:
        wset = tuple(int(v) for v in np.flatnonzero(subsets[worst]))
    finite = errs[np.isfinite(errs)]
    violations = int(np.count_nonzero(errs > epsilon))
    return VerificationReport(
        epsilon=float(epsilon),
        method=method,
        subsets_checked=int(errs.size),
        ok=violations == 0,
        max_rel_error=float(errs[worst]) if errs.size else 0.0,
        mean_rel_error=float(finite.mean()) if finite.size else 0.0,
        violations=violations,
        worst_subset=wset,
        worst_original=float(orig[worst]) if errs.size else 0.0,
        worst_approx=float(approx[worst]) if errs.size else 0.0,
        notes=notes,
    )


def verify_exhaustive(
    H: SubmodularHypergraph,
    G: SubmodularHypergraph,
    epsilon: float,
    max_n: int = EXHAUSTIVE_LIMIT,
) -> VerificationReport:
    """Check |cut_G(S) - cut_H(S)| <= eps * cut_H(S) on every subset."""
    if H.n != G.n:
        raise ValueError("hypergraphs must share a vertex set")
    if H.n > max_n:
        raise RefusalError(
            f"exhaustive verification over 2**{H.n} subsets exceeds the "
            f"limit of 2**{max_n}; use verify_sampled or raise max_n"
        )
    orig = all_cut_values(H, max_n=max_n)
    approx = all_cut_values(G, max_n=max_n)
    errs = _relerr(orig, approx)
    return _finish(epsilon, "exhaustive", errs, orig, approx, None, H.n, {})


def verify_sampled(
    H: SubmodularHypergraph,
    G: SubmodularHypergraph,
    epsilon: float,
    count: int = 10000,
    seed: int = 0,
) -> VerificationReport:
    """Check the cut bound on `count` uniformly random subsets."""
    if H.n != G.n:
        raise ValueError("hypergraphs must share a vertex set")
    if count <= 0:
        raise ValueError("count must be positive")
    rng = stream(seed, 0)
    member = rng.random((count, H.n)) < 0.5

    chunk = 4096

    def work(lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
        return cut_of_subsets(H, member[lo:hi]), cut_of_subsets(G, member[lo:hi])

    parts = parallel_chunks(count, chunk, work)
    orig = np.concatenate([p[0] for p in parts])
    approx = np.concatenate([p[1] for p in parts])
    errs = _relerr(orig, approx)
    return _finish(
        epsilon, "sampled", errs, orig, approx, member, H.n, {"seed": int(seed)}
    )
