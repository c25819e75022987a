"""Partial ResAll: cover at least k jobs as cheaply as possible.

Coordinates are compressed to job and resource endpoints, the jobs are
split into mountain ranges, every range is solved for each possible
number of covered jobs, and a DP over ranges picks how many jobs each
range contributes.
"""

from ..errors import UncoverableError
from ..model import MultisetSelection, verify_cover
from .base import INF, compress
from .lspc import LspcTables
from .mountains import check_mountain_range, mountain_decompose, single_mountain_partial
from .reduce import reduce_range_to_lspc


def _is_mountain(jobs):
    return max(j.s for j in jobs) < min(j.t for j in jobs)


def range_options(jobs, mrange, resources, kmax):
    """For kappa = 0..kmax: (cost, selection, covered) or None, solving one
    mountain range.  Single mountains use the extremal-subset cover with
    all resources; longer ranges go through LSPC."""
    n = len(mrange.jobs)
    out = [None] * (min(kmax, n) + 1)
    if len(mrange.mountains) == 1:
        idx = mrange.mountains[0].jobs
        for kappa in range(len(out)):
            try:
                sel, cov = single_mountain_partial(jobs, resources, kappa, idx=idx)
            except UncoverableError:
                continue
            out[kappa] = (sel.cost(resources), sel, cov)
        return out
    inst, back = reduce_range_to_lspc(jobs, mrange, resources)
    tables = LspcTables(inst, qmax=len(out) - 1)
    for kappa in range(len(out)):
        if tables.cost(kappa) is INF:
            continue
        sel, cov = back.rehydrate(tables.solution(kappa))
        if sel.cost(resources) > tables.cost(kappa):
            raise AssertionError("rehydration increased the cost")
        out[kappa] = (sel.cost(resources), sel, cov)
    return out


def presall_solve(jobs, resources, k, info=None):
    """Selection covering at least k jobs; returns (selection, covered job
    indices).  ``info`` (a dict) receives the decomposition statistics."""
    jobs, resources = list(jobs), list(resources)
    if not 0 <= k <= len(jobs):
        raise ValueError("k must lie between 0 and the number of jobs")
    if k == 0:
        if info is not None:
            info.update(ranges=0, single_mountain=False, compressed=None)
        return MultisetSelection(), []
    cj, cr, _ = compress(jobs, resources)
    if _is_mountain(cj):
        ranges = None
        sel, cov = single_mountain_partial(cj, cr, k)
    else:
        ranges = mountain_decompose(cj)
        for mr in ranges:
            msg = check_mountain_range(cj, mr)
            if msg:
                raise AssertionError(msg)
        opts = [range_options(cj, mr, cr, k) for mr in ranges]
        # dp[kappa] = (cost, list of (range, kappa')) over the ranges so far
        dp = [(0, [])] + [(INF, None)] * k
        for q, opt in enumerate(opts):
            nxt = [(INF, None)] * (k + 1)
            for kap in range(k + 1):
                for kp in range(min(kap, len(opt) - 1) + 1):
                    if opt[kp] is None or dp[kap - kp][0] is INF:
                        continue
                    v = dp[kap - kp][0] + opt[kp][0]
                    if v < nxt[kap][0]:
                        nxt[kap] = (v, dp[kap - kp][1] + [(q, kp)])
            dp = nxt
        if dp[k][0] is INF:
            raise UncoverableError(f"no way to cover {k} jobs")
        sel, cov = MultisetSelection(), []
        for q, kp in dp[k][1]:
            _, s, c = opts[q][kp]
            sel = sel.merged(s)
            cov.extend(c)
        cov = sorted(cov)
    if verify_cover([jobs[j] for j in cov], resources, sel) is not None:
        raise AssertionError("partial cover does not cover its jobs")
    if info is not None:
        info["ranges"] = 0 if ranges is None else len(ranges)
        info["single_mountain"] = ranges is None
        info["compressed"] = (cj, cr)
    return sel, cov

