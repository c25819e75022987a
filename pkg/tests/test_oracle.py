from fractions import Fraction as F
import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from pathpack import generators as gen
from pathpack.errors import BudgetExceeded
from pathpack.lp import solve_ufp_lp
from pathpack.model import (
    BagInstance, Job, LspcInstance, PathNetwork, Request, ResallInstance, Resource, UfpInstance,
    verify_bag_choice, verify_coloring, verify_cover, verify_lspc,
)
from pathpack.oracle import (
    OracleBudget, exact_bag_ufp, exact_cover, exact_max_ufp, exact_presall, exact_round_ufp,
)


def test_round_single_edge_large():
    k, col = exact_round_ufp(gen.single_edge_large(2))
    assert k == 4
    assert verify_coloring(gen.single_edge_large(2), col) is None


def test_round_disjoint_requests():
    inst = UfpInstance(PathNetwork([1, 1, 1]), [Request(1, 2, 1), Request(2, 3, 1), Request(3, 4, 1)])
    assert exact_round_ufp(inst)[0] == 1


def test_round_geometric_n4():
    assert exact_round_ufp(gen.geometric_no_nba(4))[0] == 3


def test_round_empty():
    assert exact_round_ufp(UfpInstance(PathNetwork([1])))[0] == 0


def test_max_gap_families():
    for n in (2, 4, 6):
        assert exact_max_ufp(gen.lp_gap(n))[0] == 1
    assert exact_max_ufp(gen.nba_gap())[0] == 1


def test_max_all_feasible():
    inst = UfpInstance(PathNetwork([3, 3]), [Request(1, 3, 1, 2), Request(1, 2, 1, 5), Request(2, 3, 1, 7)])
    assert exact_max_ufp(inst)[0] == 14


def test_bag_examples():
    net = PathNetwork([1])
    assert exact_bag_ufp(BagInstance(net, [[Request(1, 2, 1)]], [7]))[0] == 7
    two = BagInstance(net, [[Request(1, 2, 1)], [Request(1, 2, 1)]], [3, 5])
    assert exact_bag_ufp(two)[0] == 5


def brute_bag(inst):
    best = 0
    for pick in itertools.product(*[[None] + list(range(len(b))) for b in inst.bags]):
        choice = [(j, r) for j, r in enumerate(pick) if r is not None]
        if verify_bag_choice(inst, choice) is None:
            best = max(best, inst.profit(choice))
    return best


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_bag_matches_enumeration(seed):
    inst = gen.random_bags(seed, bags=(1, 4))
    v, choice = exact_bag_ufp(inst)
    assert verify_bag_choice(inst, choice) is None
    assert v == inst.profit(choice) == brute_bag(inst)


def test_cover_examples():
    assert exact_cover("presall", ResallInstance([Job(1, 2)], [Resource(1, 2, 1, 5)], 0))[0] == 0
    assert exact_cover("presall", ResallInstance([Job(1, 2)], [Resource(1, 2, 1, 5)], 1))[0] == 5
    lspc = LspcInstance([2], [Resource(1, 2, 1, 1)], [Resource(1, 2, 1, 1)], 2)
    cost, sol = exact_cover("lspc", lspc)
    assert cost == 2
    assert verify_lspc(lspc, sol) is None


def test_budget_is_explicit():
    tight = OracleBudget(max_nodes=5)
    with pytest.raises(BudgetExceeded):
        exact_round_ufp(gen.random_path(3, requests=(10, 10)), tight)
    with pytest.raises(BudgetExceeded):
        exact_round_ufp(gen.random_path(3, requests=(13, 13)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_permutation_invariance(seed):
    inst = gen.random_path(seed, requests=(1, 8))
    perm = list(range(len(inst)))
    random.Random(seed).shuffle(perm)
    other = inst.subset(perm)
    assert exact_round_ufp(inst)[0] == exact_round_ufp(other)[0]
    assert exact_max_ufp(inst)[0] == exact_max_ufp(other)[0]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_max_below_lp_and_witness_feasible(seed):
    inst = gen.random_path(seed, requests=(1, 9))
    v, idx = exact_max_ufp(inst)
    assert inst.is_feasible_set(idx)
    assert v == inst.total_profit(idx)
    assert v <= solve_ufp_lp(inst).value


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_presall_witness_and_job_permutation(seed):
    inst = gen.random_resall(seed, jobs=(1, 5), resources=(1, 5), k="random")
    cost, sel, covered = exact_presall(inst.jobs, inst.resources, inst.k)
    assert len(covered) >= inst.k
    assert verify_cover([inst.jobs[i] for i in covered], inst.resources, sel) is None
    assert sel.cost(inst.resources) == cost
    rev = list(reversed(inst.jobs))
    assert exact_presall(rev, inst.resources, inst.k)[0] == cost
