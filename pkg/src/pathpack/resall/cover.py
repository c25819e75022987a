"""Full covers: ResAll, single/multi-use covers (SMFC) and the
penalty-collecting variant reduced to SMFC."""

from collections import Counter

from ..errors import UncoverableError
from ..model import MultisetSelection, Resource, job_profile
from .base import ZERO


def _covers(need, have):
    return all(have[e] >= v for e, v in need.items())


def local_ratio_cover(profile, resources, limits=None):
    """Copy counts covering ``profile`` (edge -> demand).

    Local ratio on the edge with the largest residual demand D: every usable
    resource through that edge has its capacity cut to min(w, D) and its
    remaining cost lowered by eps * min(w, D), where eps makes the cheapest
    one free.  A copy of the lowest-index free resource is added.  Copies are
    then dropped in reverse order of addition whenever the rest still covers.
    ``limits[i]`` caps the copies of resource i (None for no cap).
    """
    resources = list(resources)
    limits = list(limits) if limits is not None else [None] * len(resources)
    need = {e: v for e, v in dict(profile).items() if v > 0}
    left = [r.c for r in resources]
    count = Counter()
    have = Counter()
    added = []
    while True:
        resid = {e: v - have[e] for e, v in need.items() if v > have[e]}
        if not resid:
            break
        D = max(resid.values())
        e = min(x for x, v in resid.items() if v == D)
        usable = [
            i for i, r in enumerate(resources)
            if r.contains_edge(e) and (limits[i] is None or count[i] < limits[i])
        ]
        if not usable:
            raise UncoverableError(f"edge {e} cannot be covered")
        eps = min(left[i] / min(resources[i].w, D) for i in usable)
        for i in usable:
            left[i] -= eps * min(resources[i].w, D)
        pick = min(i for i in usable if left[i] == 0)
        count[pick] += 1
        added.append(pick)
        for x in resources[pick].edges:
            have[x] += resources[pick].w
    for i in reversed(added):
        r = resources[i]
        for x in r.edges:
            have[x] -= r.w
        if _covers(need, have):
            count[i] -= 1
        else:
            for x in r.edges:
                have[x] += r.w
    return MultisetSelection(count)


def full_cover_resall(jobs, resources):
    """Cover every job (each needs one unit on each of its edges)."""
    return local_ratio_cover(job_profile(jobs), resources)


def smfc_solve(profile, resources, single_use):
    """Full cover where resources flagged in ``single_use`` (S-type) may be
    taken once and the others (M-type) any number of times."""
    return local_ratio_cover(profile, resources, [1 if s else None for s in single_use])


def pcresall_solve(jobs, resources):
    """Cover some jobs and pay the penalty of every other one.

    Each job becomes a single-use resource over its own interval with
    capacity 1 and cost equal to its penalty.  The SMFC cover of all jobs is
    read back as: a job whose resource was bought is left uncovered; the
    original resources bought cover the rest.  Returns (selection over the
    original resources, sorted indices of covered jobs).
    """
    jobs = list(jobs)
    resources = list(resources)
    if any(j.penalty is None for j in jobs):
        raise ValueError("every job needs a penalty")
    if not jobs:
        return MultisetSelection(), []
    extra = [Resource(j.s, j.t, 1, j.penalty) for j in jobs]
    m = len(resources)
    sel = smfc_solve(job_profile(jobs), resources + extra, [False] * m + [True] * len(jobs))
    dropped = {i - m for i in sel.counts if i >= m}
    mine = MultisetSelection({i: k for i, k in sel.counts.items() if i < m})
    covered = [j for j in range(len(jobs)) if j not in dropped]
    return mine, covered


def pcresall_cost(jobs, resources, sel, covered):
    cov = set(covered)
    return sel.cost(resources) + sum(
        (j.penalty for i, j in enumerate(jobs) if i not in cov), ZERO
    )
