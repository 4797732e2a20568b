"""Tests for cut-approximation certification (exhaustive and sampled)."""

import math

import pytest

from subsparse.errors import RefusalError
from subsparse.hypergraph import Hyperedge, SubmodularHypergraph
from subsparse.splitting import Additive, AllOrNothing, SmallSide
from subsparse.verify import verify_exhaustive, verify_sampled


def pair_graph(n: int, pairs, scale: float = 1.0) -> SubmodularHypergraph:
    edges = tuple(Hyperedge(tuple(sorted(p)), AllOrNothing(scale=scale)) for p in pairs)
    return SubmodularHypergraph(n, edges)


def mixed_graph(scale: float = 1.0) -> SubmodularHypergraph:
    edges = (
        Hyperedge((0, 1, 2), Additive(K=2.0, scale=scale)),
        Hyperedge((2, 3, 4), SmallSide(scale=scale)),
        Hyperedge((1, 4), AllOrNothing(scale=scale)),
    )
    return SubmodularHypergraph(5, edges)


# ---------------------------------------------------------------------------
# exhaustive


def test_exhaustive_identity_has_zero_error():
    H = mixed_graph()
    rep = verify_exhaustive(H, H, 0.0)
    assert rep.ok
    assert rep.method == "exhaustive"
    assert rep.subsets_checked == 2**5
    assert rep.max_rel_error == 0.0
    assert rep.mean_rel_error == 0.0
    assert rep.violations == 0


def test_exhaustive_uniform_scaling_gives_exact_relative_error():
    H = pair_graph(2, [(0, 1)])
    G = pair_graph(2, [(0, 1)], scale=1.1)
    rep = verify_exhaustive(H, G, 0.2)
    # cuts are 0, 1, 1, 0 so the errors are 0, .1, .1, 0
    assert rep.ok
    assert rep.max_rel_error == pytest.approx(0.1)
    assert rep.mean_rel_error == pytest.approx(0.05)
    tight = verify_exhaustive(H, G, 0.05)
    assert not tight.ok
    assert tight.violations == 2


def test_exhaustive_counts_all_positive_cuts_as_violations():
    H = mixed_graph()
    G = mixed_graph(scale=1.5)
    rep = verify_exhaustive(H, G, 0.2)
    positive = sum(1 for s in range(2**5) if H.cut({v for v in range(5) if s >> v & 1}) > 0)
    assert not rep.ok
    assert rep.violations == positive
    assert rep.max_rel_error == pytest.approx(0.5)


def test_exhaustive_dropped_edge_is_a_unit_error_witness():
    H = pair_graph(4, [(0, 1), (2, 3)])
    G = pair_graph(4, [(0, 1)])
    rep = verify_exhaustive(H, G, 0.99)
    assert not rep.ok
    assert rep.max_rel_error == 1.0
    assert rep.worst_approx == 0.0
    assert rep.worst_original > 0.0
    S = set(rep.worst_subset)
    assert len(S & {2, 3}) == 1  # the witness separates the dropped pair


def test_exhaustive_added_edge_is_an_infinite_error_witness():
    H = pair_graph(4, [(0, 1)])
    G = pair_graph(4, [(0, 1), (2, 3)])
    rep = verify_exhaustive(H, G, 1e9)
    assert not rep.ok
    assert rep.max_rel_error == math.inf
    assert rep.worst_original == 0.0
    assert rep.worst_approx == 1.0
    assert len(set(rep.worst_subset) & {2, 3}) == 1


def test_exhaustive_worst_subset_reproduces_reported_cuts():
    H = mixed_graph()
    G = mixed_graph(scale=1.3)
    rep = verify_exhaustive(H, G, 0.1)
    S = set(rep.worst_subset)
    assert H.cut(S) == pytest.approx(rep.worst_original)
    assert G.cut(S) == pytest.approx(rep.worst_approx)


def test_exhaustive_refuses_large_vertex_sets():
    H = pair_graph(10, [(0, 1)])
    with pytest.raises(RefusalError, match="exhaustive"):
        verify_exhaustive(H, H, 0.1, max_n=8)
    assert verify_exhaustive(H, H, 0.1, max_n=10).ok


def test_vertex_count_mismatch_is_rejected():
    H = pair_graph(3, [(0, 1)])
    G = pair_graph(4, [(0, 1)])
    with pytest.raises(ValueError):
        verify_exhaustive(H, G, 0.1)
    with pytest.raises(ValueError):
        verify_sampled(H, G, 0.1)


# ---------------------------------------------------------------------------
# sampled


def test_sampled_identity_has_zero_error():
    H = mixed_graph()
    rep = verify_sampled(H, H, 0.0, count=10000, seed=1)
    assert rep.ok
    assert rep.method == "sampled"
    assert rep.subsets_checked == 10000
    assert rep.max_rel_error == 0.0
    assert rep.notes == {"seed": 1}


def test_sampled_finds_uniform_scaling_violations():
    H = mixed_graph()
    G = mixed_graph(scale=1.2)
    rep = verify_sampled(H, G, 0.1, count=500, seed=2)
    assert not rep.ok
    assert rep.violations > 0
    assert rep.max_rel_error == pytest.approx(0.2)
    S = set(rep.worst_subset)
    assert H.cut(S) == pytest.approx(rep.worst_original)
    assert G.cut(S) == pytest.approx(rep.worst_approx)


def test_sampled_is_deterministic_per_seed():
    H = mixed_graph()
    G = mixed_graph(scale=1.05)
    a = verify_sampled(H, G, 0.02, count=300, seed=7)
    b = verify_sampled(H, G, 0.02, count=300, seed=7)
    assert a == b
    c = verify_sampled(H, G, 0.02, count=300, seed=8)
    assert c.notes == {"seed": 8}


def test_sampled_rejects_nonpositive_count():
    H = mixed_graph()
    with pytest.raises(ValueError):
        verify_sampled(H, H, 0.1, count=0)
