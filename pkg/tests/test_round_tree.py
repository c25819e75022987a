from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from pathpack import generators as gen
from pathpack.errors import NBAViolation, PreconditionError
from pathpack.model import PathNetwork, Request, TreeNetwork, UfpInstance, verify_coloring
from pathpack.oracle import exact_round_ufp
from pathpack.round_path import color_unit_path, is_large
from pathpack.round_tree import (
    bottom_up_order, color_large_tree, color_small_tree, color_unit_tree, critical_edges, lca_of,
    round_ufp_tree,
)


def star(caps):
    n = len(caps) + 1
    return TreeNetwork(n, {v: 1 for v in range(2, n + 1)}, {v: c for v, c in zip(range(2, n + 1), caps)})


def path_tree(caps):
    n = len(caps) + 1
    return TreeNetwork(n, {v: v - 1 for v in range(2, n + 1)}, {v: caps[v - 2] for v in range(2, n + 1)})


def test_unit_star_roomy():
    inst = UfpInstance(star([3, 3, 3]), [Request(2, 3, 1), Request(3, 4, 1), Request(2, 4, 1)])
    assert color_unit_tree(inst).num_colors == 1


def test_unit_path_shaped_tree_against_path():
    spans = [(1, 3), (1, 3), (2, 4), (1, 2)]
    caps = [2, 1, 1]
    tree = UfpInstance(path_tree(caps), [Request(s, t, 1) for s, t in spans])
    line = UfpInstance(PathNetwork(caps), [Request(s, t, 1) for s, t in spans])
    r = color_unit_path(line).num_colors
    assert r == line.congestion == tree.congestion
    assert color_unit_tree(tree).num_colors <= 4 * r


def test_single_requests():
    one = UfpInstance(star([1, 1]), [Request(2, 3, F(1, 8))])
    assert color_small_tree(one).colors == (1,)
    big = UfpInstance(star([1, 1]), [Request(2, 3, F(3, 4))])
    assert color_large_tree(big).colors == (1,)
    assert round_ufp_tree(big).num_colors == 1


def test_preconditions():
    with pytest.raises(PreconditionError):
        color_small_tree(UfpInstance(star([1, 1]), [Request(2, 3, F(3, 4))]))
    with pytest.raises(NBAViolation):
        round_ufp_tree(UfpInstance(star([1, 4]), [Request(1, 3, 2)]))
    with pytest.raises(PreconditionError):
        round_ufp_tree(gen.single_edge_large(1))


def test_critical_edges_next_to_lca():
    tree = TreeNetwork(5, {2: 1, 3: 2, 4: 1, 5: 4}, {2: 2, 3: 2, 4: 4, 5: 8})
    inst = UfpInstance(tree, [Request(3, 5, F(1, 8))])
    assert lca_of(inst, 0) == 1
    # class-1 edges 2 and 3 on the left: the one nearer the root is 2
    assert critical_edges(inst, 0) == (2, 4)


def test_bottom_up_order():
    tree = TreeNetwork(4, {2: 1, 3: 2, 4: 2}, {2: 1, 3: 1, 4: 1})
    inst = UfpInstance(tree, [Request(3, 4, F(1, 8)), Request(2, 3, F(1, 8)), Request(1, 4, F(1, 8))])
    assert bottom_up_order(inst) == [0, 1, 2]


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 100_000))
def test_tree_pipeline_bounds(seed):
    inst = gen.random_tree(seed, requests=(1, 8))
    col = round_ufp_tree(inst)
    assert verify_coloring(inst, col) is None
    opt = exact_round_ufp(inst)[0]
    assert col.num_colors <= 64 * opt
    large = [i for i in range(len(inst)) if is_large(inst, i)]
    small = [i for i in range(len(inst)) if not is_large(inst, i)]
    if large:
        sub = inst.subset(large)
        c = color_large_tree(sub)
        assert verify_coloring(sub, c) is None and c.num_colors <= 32 * sub.congestion
    if small:
        sub = inst.subset(small)
        c = color_small_tree(sub)
        assert verify_coloring(sub, c) is None and c.num_colors <= 16 * sub.congestion


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 100_000))
def test_unit_tree_within_4r(seed):
    inst = gen.random_tree(seed, kind="unit", requests=(1, 8))
    col = color_unit_tree(inst)
    assert verify_coloring(inst, col) is None
    assert col.num_colors <= 4 * inst.congestion
    assert col.num_colors <= 4 * exact_round_ufp(inst)[0]
