from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from pathpack import generators as gen
from pathpack.errors import InvalidInstance, PartialColoringError
from pathpack.model import (
    Coloring, CoverViolation, Job, MultisetSelection, PathNetwork, Request, Resource,
    TreeNetwork, UfpInstance, check_nba, classify_demand, congestion, edge_class, verify_coloring,
    verify_cover,
)
from pathpack.oracle import exact_round_ufp


def unit_edge(*demands):
    return UfpInstance(PathNetwork([1]), [Request(1, 2, d) for d in demands])


def test_congestion_single_request():
    assert congestion(unit_edge(1)) == 1


def test_congestion_single_edge_large_k2():
    assert congestion(gen.single_edge_large(2)) == 3


def test_congestion_geometric_n4():
    inst = gen.geometric_no_nba(4)
    assert [inst.capacity(e) for e in inst.network.edges] == [4, 2, 1]
    assert congestion(inst) == 2


def test_congestion_empty_is_zero():
    assert congestion(UfpInstance(PathNetwork([3, 1]))) == 0


def test_classify_boundaries():
    assert classify_demand(unit_edge(F(1, 4)), 0, F(1, 4)) == "small"
    assert classify_demand(unit_edge(F(26, 100)), 0, F(1, 4)) == "large"
    with pytest.raises(InvalidInstance):
        classify_demand(unit_edge(F(1, 4)), 3, F(1, 4))


def test_bottleneck_ties_lowest_edge():
    inst = UfpInstance(PathNetwork([2, 1, 1, 3]), [Request(1, 5, F(1, 2))])
    assert inst.bottleneck(0) == 2


def test_verify_coloring_ok_and_violation():
    inst = UfpInstance(PathNetwork([1, 1]), [Request(1, 2, 1), Request(2, 3, 1)])
    assert verify_coloring(inst, Coloring([1, 1])) is None
    bad = verify_coloring(unit_edge(F(3, 5), F(3, 5)), Coloring([1, 1]))
    assert (bad.color, bad.edge, bad.excess) == (1, 1, F(1, 5))


def test_verify_coloring_partial_is_an_error():
    with pytest.raises(PartialColoringError):
        verify_coloring(unit_edge(1, 1), [1, None])


def test_verify_cover_examples():
    assert verify_cover([], [], MultisetSelection()) is None
    assert verify_cover([Job(1, 2)], [Resource(1, 2, 1, 1)], MultisetSelection({0: 1})) is None
    jobs = [Job(1, 2), Job(1, 2)]
    assert verify_cover(jobs, [Resource(1, 2, 1, 1)], MultisetSelection({0: 1})) == CoverViolation(1, 1)


def test_check_nba():
    assert check_nba(unit_edge(1))
    assert not check_nba(gen.geometric_no_nba(4))
    assert check_nba(gen.random_path(0, kind="unit"))


def test_edge_class():
    assert [edge_class(c) for c in (1, F(3, 2), 2, 7, 8)] == [0, 0, 1, 2, 3]


def test_invalid_inputs():
    with pytest.raises(InvalidInstance):
        PathNetwork([])
    with pytest.raises(InvalidInstance):
        Request(2, 2, 1)
    with pytest.raises(InvalidInstance):
        Job(3, 1)
    with pytest.raises(InvalidInstance):
        TreeNetwork(3, {2: 3, 3: 2}, {2: 1, 3: 1})


def test_path_requests_normalized():
    inst = UfpInstance(PathNetwork([1, 1]), [Request(3, 1, 1)])
    assert (inst.requests[0].s, inst.requests[0].t) == (1, 3)


def test_tree_routes():
    tree = TreeNetwork(5, {2: 1, 3: 1, 4: 2, 5: 2}, {2: 4, 3: 2, 4: 1, 5: 1})
    assert tree.lca(4, 5) == 2
    assert sorted(tree.route(4, 3)) == [2, 3, 4]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_double_counting(seed):
    inst = gen.random_path(seed)
    loads = inst.loads
    assert sum(loads.values()) == sum(r.d * len(route) for r, route in zip(inst.requests, inst.routes))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_bottleneck_is_smallest_on_span(seed):
    inst = gen.random_tree(seed) if seed % 2 else gen.random_path(seed)
    for i, route in enumerate(inst.routes):
        b = inst.bottleneck_capacity(i)
        assert all(b <= inst.capacity(e) for e in route)
        assert 2 ** inst.request_class(i) <= b < 2 ** (inst.request_class(i) + 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_congestion_lower_bounds_oracle(seed):
    inst = gen.random_path(seed, requests=(1, 8))
    k, col = exact_round_ufp(inst)
    assert verify_coloring(inst, col) is None
    assert k >= congestion(inst)
    for e in inst.network.edges:
        if inst.crossing(e):
            assert inst.edge_congestion(e) >= 1
