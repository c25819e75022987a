from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from pathpack import generators as gen
from pathpack.errors import UncoverableError
from pathpack.model import Job, Resource, job_profile, verify_cover
from pathpack.oracle import exact_full_cover, exact_pcresall, exact_smfc
from pathpack.resall import (
    INF, full_cover_resall, local_ratio_cover, pcresall_cost, pcresall_solve, smfc_solve,
)


def test_one_job_one_resource():
    res = [Resource(1, 2, 1, 5)]
    sel = full_cover_resall([Job(1, 2)], res)
    assert sel.cost(res) == 5


def test_two_copies_for_demand_two():
    res = [Resource(1, 2, 1, 1)]
    sel = full_cover_resall([Job(1, 2), Job(1, 2)], res)
    assert sel.counts == {0: 2} and sel.cost(res) == 2


def test_uncoverable():
    with pytest.raises(UncoverableError):
        full_cover_resall([Job(1, 3)], [Resource(1, 2, 1, 1)])


def test_smfc_m_type_only_is_full_cover():
    jobs = [Job(1, 3), Job(2, 4)]
    res = [Resource(1, 4, 1, 3), Resource(2, 3, 2, 1)]
    assert smfc_solve(job_profile(jobs), res, [False, False]) == full_cover_resall(jobs, res)


def test_smfc_single_use_s_types():
    prof = Counter({1: 1, 2: 1})
    res = [Resource(1, 2, 1, 1), Resource(2, 3, 1, 1), Resource(1, 3, 1, 10)]
    sel = smfc_solve(prof, res, [True, True, False])
    assert sel.counts == {0: 1, 1: 1}
    with pytest.raises(UncoverableError):
        smfc_solve(Counter({1: 2}), [Resource(1, 2, 1, 1)], [True])


def test_local_ratio_limits():
    res = [Resource(1, 2, 1, 1), Resource(1, 2, 2, 5)]
    sel = local_ratio_cover(Counter({1: 2}), res, limits=[1, None])
    assert sel.counts.get(0, 0) <= 1


def test_pcresall_zero_penalties():
    jobs = [Job(1, 3, 0), Job(2, 4, 0)]
    res = [Resource(1, 4, 1, 2)]
    sel, covered = pcresall_solve(jobs, res)
    assert covered == [] and pcresall_cost(jobs, res, sel, covered) == 0


def test_pcresall_high_penalty_covers():
    jobs = [Job(1, 3, 100)]
    res = [Resource(1, 3, 1, 2)]
    sel, covered = pcresall_solve(jobs, res)
    assert covered == [0] and pcresall_cost(jobs, res, sel, covered) == 2


def test_pcresall_needs_penalties():
    with pytest.raises(ValueError):
        pcresall_solve([Job(1, 2)], [Resource(1, 2, 1, 1)])


def test_inf_marker():
    assert INF > 10 ** 9 and INF + 3 is INF and not INF < 5


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_full_cover_ratio(seed):
    inst = gen.random_resall(seed)
    sel = full_cover_resall(inst.jobs, inst.resources)
    assert verify_cover(inst.jobs, inst.resources, sel) is None
    opt = exact_full_cover(inst.jobs, inst.resources)[0]
    assert opt <= sel.cost(inst.resources) <= 4 * opt


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_smfc_ratio(seed):
    inst = gen.random_resall(seed, resources=(2, 6))
    single = [i % 2 == 0 for i in range(len(inst.resources))]
    prof = job_profile(inst.jobs)
    try:
        opt = exact_smfc(prof, inst.resources, single)[0]
    except UncoverableError:
        with pytest.raises(UncoverableError):
            smfc_solve(prof, inst.resources, single)
        return
    sel = smfc_solve(prof, inst.resources, single)
    assert all(sel.counts.get(i, 0) <= 1 for i, s in enumerate(single) if s)
    have = sel.profile(inst.resources)
    assert all(have[e] >= v for e, v in prof.items())
    assert sel.cost(inst.resources) <= 4 * opt


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_pcresall_ratio(seed):
    inst = gen.random_resall(seed, penalties=True)
    sel, covered = pcresall_solve(inst.jobs, inst.resources)
    assert verify_cover([inst.jobs[j] for j in covered], inst.resources, sel) is None
    cost = pcresall_cost(inst.jobs, inst.resources, sel, covered)
    opt = exact_pcresall(inst.jobs, inst.resources)[0]
    assert opt <= cost <= 4 * opt
