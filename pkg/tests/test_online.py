from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from pathpack import generators as gen
from pathpack.errors import NBAViolation
from pathpack.model import PathNetwork, Request, TreeNetwork
from pathpack.online import (
    KiersteadTrotter, LevelAssigner, OnlineColorer, assign_small_uniform, classify_online,
    online_color, run_stream,
)
from pathpack.oracle import exact_round_ufp

# colors per band as multiples of that class's congestion
BAND_BUDGET = {
    (0, "quarter-half"): 3, (0, "half-one"): 3,
    (1, "eighth-quarter"): 4, (1, "quarter-half"): 3,
    (2, "quarter-half"): 3,
}


def test_classify_table_rows():
    net = PathNetwork([1, 4, 8])
    state = OnlineColorer(net)
    assert classify_online(state, Request(2, 3, F(3, 10))) == (2, "small")
    assert classify_online(state, Request(1, 2, F(3, 10))) == (0, "large")
    assert classify_online(state, Request(3, 4, 1)) == (3, "small")
    assert classify_online(state, Request(2, 3, F(6, 10))) == (2, "large")


def test_classify_rejects_nba_violation():
    state = OnlineColorer(PathNetwork([1, 4]))
    with pytest.raises(NBAViolation):
        classify_online(state, Request(2, 3, 2))


def test_trees_rejected():
    with pytest.raises(ValueError):
        OnlineColorer(TreeNetwork(2, {2: 1}, {2: 1}))


def test_level_trace_four_quarters():
    alg = LevelAssigner()
    inst = gen.small_level_trace()
    levels = [assign_small_uniform(alg, [1], r.d) for r in inst.requests]
    assert levels == [1, 2, 3, 4]
    assert alg.num_levels == 4 * inst.congestion


def test_level_witnesses():
    alg = LevelAssigner()
    for _ in range(3):
        alg.assign([1, 2], F(1, 4))
    level, wit = alg.assign([2, 3], F(1, 4))
    assert level == 4
    assert wit == [(1, 2), (2, 2), (3, 2)]


def test_level_disjoint():
    alg = LevelAssigner()
    assert [assign_small_uniform(alg, [e], F(1, 4)) for e in (1, 2, 3)] == [1, 1, 1]
    with pytest.raises(ValueError):
        assign_small_uniform(alg, [1], F(1, 3))


def test_kierstead_trotter_depth():
    kt = KiersteadTrotter()
    colors = [kt.assign([1, 2]) for _ in range(3)]
    assert len(set(colors)) == 3
    assert max(colors) <= 3 * 3 - 2


def test_first_request_gets_color_one():
    state = OnlineColorer(PathNetwork([1, 1]))
    assert online_color(state, Request(1, 3, F(1, 8))) == 1
    big = OnlineColorer(PathNetwork([1, 1]))
    assert online_color(big, Request(1, 2, F(3, 4))) == 1
    assert big.num_colors == 1


def test_transcript_is_append_only():
    inst = gen.adversarial_stream(4)
    state = OnlineColorer(inst.network)
    seen = []
    for r in inst.requests:
        state.push(r)
        assert state.transcript[:len(seen)] == seen
        seen = list(state.transcript)
    assert [c for _, _, c in state.transcript] == state.colors


def check_stream(inst):
    state = OnlineColorer(inst.network)
    for r in inst.requests:
        before = list(state.colors)
        state.push(r)
        assert state.colors[:-1] == before
        assert state.verify() is None
        r_ = state.instance().congestion
        small, large = state.pool_sizes()
        assert small <= 32 * r_ and large <= 26 * r_
        assert state.num_colors <= 58 * r_
    for info in state.info:
        if info["kind"] == "small":
            assert [k for k, _ in info["witnesses"]] == list(range(1, info["level"]))
    for (cl, band), k in state.band_colors().items():
        assert k <= BAND_BUDGET[cl, band] * state.class_congestion(cl)
    return state


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_random_streams(seed):
    check_stream(gen.random_stream(seed))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_adversarial_streams(seed):
    check_stream(gen.adversarial_stream(seed))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 100_000))
def test_against_oracle(seed):
    inst = gen.random_stream(seed, requests=(1, 10))
    state = run_stream(inst.network, inst.requests)
    assert state.num_colors <= 58 * exact_round_ufp(inst)[0]
