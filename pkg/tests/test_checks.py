"""Submodularity/monotonicity certification, spread, and imbalance."""

import math

import numpy as np
import pytest

import oracles
from subsparse import (
    Additive,
    AllOrNothing,
    CardinalityBased,
    Coverage,
    DirectedAllOrNothing,
    Explicit,
    MatroidRank,
    Product,
    SmallSide,
    ThresholdExceeded,
    check_monotone,
    check_submodular,
    eval_fn,
    fn_table,
    imbalance,
    spread_stats,
)


def oracle_value(fn, e):
    return lambda S: eval_fn(fn, e, S)


# ---------------------------------------------------------------------------
# check_submodular


def test_small_side_is_submodular():
    assert check_submodular(SmallSide(), (1, 2, 3, 4, 5)) is None


def test_uniform_matroid_rank_is_submodular():
    assert check_submodular(MatroidRank(mtype="uniform", rank=2), (1, 2, 3, 4)) is None


def test_subadditivity_violation_is_caught_with_genuine_witness():
    fn = Explicit(values=(0.0, 0.0, 0.0, 1.0))
    e = (1, 2)
    w = check_submodular(fn, e)
    assert w is not None
    # the witness must describe a real violation: S subset T, v outside T,
    # and the marginal of v at T strictly larger than at S
    assert set(w.S) <= set(w.T)
    assert w.v not in w.T
    mS = eval_fn(fn, e, set(w.S) | {w.v}) - eval_fn(fn, e, w.S)
    mT = eval_fn(fn, e, set(w.T) | {w.v}) - eval_fn(fn, e, w.T)
    assert mS == w.marginal_S
    assert mT == w.marginal_T
    assert mT > mS


def test_check_submodular_agrees_with_reference_on_random_tables():
    rng = np.random.default_rng(7)
    e = (0, 1, 2, 3)
    for _ in range(40):
        vals = np.round(rng.random(16), 3)
        vals[0] = 0.0
        fn = Explicit(values=tuple(vals))
        ours = check_submodular(fn, e) is None
        ref = oracles.is_submodular(e, oracle_value(fn, e))
        assert ours == ref


# ---------------------------------------------------------------------------
# check_monotone


def test_monotone_additive_passes():
    assert check_monotone(Additive(K=3.0), (1, 2, 3, 4)) is None


def test_coverage_is_monotone():
    fn = Coverage(ground=("a", "b"), weights=(1.0, 2.0), member_sets=((0,), (1,), (0, 1)))
    assert check_monotone(fn, (1, 2, 3)) is None


def test_small_side_monotonicity_witness():
    w = check_monotone(SmallSide(), (1, 2, 3, 4))
    assert w is not None
    assert w.after < w.before
    before = eval_fn(SmallSide(), (1, 2, 3, 4), w.S)
    after = eval_fn(SmallSide(), (1, 2, 3, 4), set(w.S) | {w.v})
    assert (before, after) == (w.before, w.after)


def test_check_monotone_agrees_with_reference_on_random_tables():
    rng = np.random.default_rng(11)
    e = (0, 1, 2, 3)
    for _ in range(40):
        vals = np.round(rng.random(16), 3)
        vals[0] = 0.0
        fn = Explicit(values=tuple(vals))
        ours = check_monotone(fn, e) is None
        ref = oracles.is_monotone(e, oracle_value(fn, e))
        assert ours == ref


# ---------------------------------------------------------------------------
# spread


def test_spread_product_edge_of_four():
    st = spread_stats(Product(), (1, 2, 3, 4))
    assert (st.max_value, st.min_nontrivial) == (4.0, 3.0)
    assert st.spread == pytest.approx(4.0 / 3.0)
    assert st.full_set_trivial  # g(e) = |e| * 0 = 0, so e is excluded


def test_spread_all_or_nothing():
    st = spread_stats(AllOrNothing(), (1, 2, 3))
    assert st.full_set_trivial
    assert st.spread == 1.0


def test_spread_additive_bounded_by_K():
    for k in (8, 12):
        st = spread_stats(Additive(K=5.0), tuple(range(k)))
        assert st.spread <= 5.0


def test_spread_matroid_rank_equals_rank():
    for r in (1, 2, 3):
        st = spread_stats(MatroidRank(mtype="uniform", rank=r), tuple(range(6)))
        assert st.spread == float(r)


def test_closed_form_spread_matches_enumeration():
    cases = [
        (AllOrNothing(scale=2.0), (1, 2, 3, 4)),
        (Additive(K=2.0), (1, 2, 3, 4, 5)),
        (Additive(K=3.0, symmetric=True), tuple(range(7))),
        (CardinalityBased(values=(0.0, 2.0, 3.0, 3.5)), (1, 2, 3)),
        (CardinalityBased(values=(0.0, 1.0, 1.0, 0.0)), (1, 2, 3)),
    ]
    for fn, e in cases:
        st = spread_stats(fn, e)
        assert st.method == "closed-form"
        verts = tuple(sorted(e))
        as_table = Explicit(values=tuple(fn_table(fn, verts) / max(fn.scale, 1e-300)))
        st2 = spread_stats(as_table.with_scale(fn.scale), e)
        assert st2.method == "enumeration"
        assert st.max_value == pytest.approx(st2.max_value)
        assert st.min_nontrivial == pytest.approx(st2.min_nontrivial)
        assert st.spread == pytest.approx(st2.spread)
        assert st.full_set_trivial == st2.full_set_trivial


def test_spread_matches_reference_for_each_kind():
    cases = [
        (AllOrNothing(), (1, 2, 3)),
        (SmallSide(), (1, 2, 3, 4)),
        (Additive(K=2.0, symmetric=True), (1, 2, 3, 4)),
        (Product(), (1, 2, 3, 4)),
        (MatroidRank(mtype="uniform", rank=2), (1, 2, 3, 4)),
        (
            Coverage(
                ground=("a", "b", "c"),
                weights=(1.0, 2.0, 4.0),
                member_sets=((0, 1), (1,), (2,), (0, 2)),
            ),
            (1, 2, 3, 4),
        ),
    ]
    for fn, e in cases:
        st = spread_stats(fn, e)
        mx, mn, ratio = oracles.spread(e, oracle_value(fn, e))
        assert st.max_value == pytest.approx(mx)
        assert st.min_nontrivial == pytest.approx(mn)
        if math.isinf(ratio):
            assert math.isinf(st.spread)
        else:
            assert st.spread == pytest.approx(ratio)


def test_spread_infinite_when_a_nontrivial_subset_vanishes():
    fn = Explicit(values=(0.0, 0.0, 1.0, 1.0))  # g({first vertex}) = 0
    st = spread_stats(fn, (1, 2))
    assert st.min_nontrivial == 0.0
    assert math.isinf(st.spread)


def test_spread_closed_form_works_beyond_enumeration_limit():
    st = spread_stats(Additive(K=16.0), tuple(range(1000)))
    assert st.spread == 16.0
    with pytest.raises(ThresholdExceeded):
        spread_stats(Product(), tuple(range(20)))


# ---------------------------------------------------------------------------
# imbalance


def test_imbalance_symmetric_function_is_one():
    assert imbalance(SmallSide(), (1, 2, 3, 4)) == 1.0


def test_imbalance_directed_edge_is_infinite():
    fn = DirectedAllOrNothing(tail=(1,), head=(2,))
    assert math.isinf(imbalance(fn, (1, 2)))


def test_imbalance_single_vertex_edge_is_infinite():
    assert math.isinf(imbalance(AllOrNothing(), (3,)))


def test_imbalance_matches_reference():
    cases = [
        (SmallSide(), (1, 2, 3)),
        (Additive(K=2.0), (1, 2, 3, 4)),
        (Product(), (1, 2, 3, 4)),
        (DirectedAllOrNothing(tail=(1, 2), head=(3,)), (1, 2, 3)),
        (Explicit(values=(0.0, 1.0, 2.0, 2.5)), (1, 2)),
    ]
    for fn, e in cases:
        ours = imbalance(fn, e)
        ref = oracles.imbalance(e, oracle_value(fn, e))
        if math.isinf(ref):
            assert math.isinf(ours)
        else:
            assert ours == pytest.approx(ref)


def test_imbalance_within_factor_two_of_spread_for_monotone_kinds():
    cases = [
        (Additive(K=2.0), tuple(range(4))),
        (MatroidRank(mtype="uniform", rank=2), tuple(range(4))),
        (
            Coverage(
                ground=("a", "b", "c"),
                weights=(1.0, 2.0, 4.0),
                member_sets=((0, 1), (1,), (2,), (0, 2)),
            ),
            tuple(range(4)),
        ),
    ]
    for fn, e in cases:
        beta = imbalance(fn, e)
        mu = spread_stats(fn, e).spread
        assert 0.5 <= beta / mu <= 2.0


# ---------------------------------------------------------------------------
# 100 random parameterizations of the built-in kinds are submodular


def concave_table(rng, k):
    incr = np.sort(rng.random(k))[::-1]
    return (0.0,) + tuple(np.cumsum(incr))


def random_kind_fn(rng, k, verts):
    which = rng.integers(0, 9)
    if which == 0:
        return AllOrNothing(scale=float(rng.random() + 0.1))
    if which == 1:
        cut = rng.integers(1, k) if k > 1 else 1
        perm = list(rng.permutation(list(verts)))
        tail, head = perm[:cut], perm[cut:] or [perm[0]]
        return DirectedAllOrNothing(tail=tuple(tail), head=tuple(head))
    if which == 2:
        return SmallSide(scale=float(rng.random() + 0.1))
    if which == 3:
        return Additive(K=float(rng.integers(1, k + 2)), symmetric=bool(rng.integers(2)))
    if which == 4:
        return Product()
    if which == 5:
        return CardinalityBased(values=concave_table(rng, k))
    if which == 6:
        g = rng.integers(1, 6)
        return Coverage(
            ground=tuple(range(g)),
            weights=tuple(float(x) for x in rng.random(g)),
            member_sets=tuple(
                tuple(int(w) for w in np.flatnonzero(rng.random(g) < 0.6))
                for _ in range(k)
            ),
        )
    if which == 7:
        if rng.integers(2):
            return MatroidRank(mtype="uniform", rank=int(rng.integers(1, k + 1)))
        labels = rng.integers(0, 3, size=k)
        blocks = tuple(
            tuple(v for v, l in zip(verts, labels) if l == b) for b in range(3)
        )
        blocks = tuple(b for b in blocks if b)
        caps = tuple(int(rng.integers(1, 3)) for _ in blocks)
        return MatroidRank(mtype="partition", blocks=blocks, caps=caps)
    # Explicit built from a certified-submodular mixture
    tab = np.zeros(1 << k)
    counts = np.array([bin(m).count("1") for m in range(1 << k)])
    con = np.array(concave_table(rng, k))
    tab += con[counts]
    tab += rng.random() * counts * (k - counts)
    return Explicit(values=tuple(tab))


def test_hundred_random_parameterizations_are_submodular():
    rng = np.random.default_rng(2024)
    for trial in range(100):
        k = int(rng.integers(1, 11))
        verts = tuple(sorted(rng.choice(50, size=k, replace=False)))
        fn = random_kind_fn(rng, k, verts)
        assert check_submodular(fn, verts) is None, (trial, fn)
        if k <= 5:
            assert oracles.is_submodular(verts, oracle_value(fn, verts))
