"""Mountains (jobs sharing one edge), mountain ranges (mountains with
disjoint spans), the split of any job set into few ranges, and the
partial cover of a single mountain."""

from dataclasses import dataclass
import math

from ..errors import PreconditionError, UncoverableError
from ..model import MultisetSelection
from .cover import full_cover_resall


@dataclass(frozen=True)
class Mountain:
    jobs: tuple  # job indices
    peak: int  # an edge every job contains
    span: tuple  # (first edge, last edge)


@dataclass(frozen=True)
class MountainRange:
    mountains: tuple  # left to right

    @property
    def jobs(self):
        return tuple(j for m in self.mountains for j in m.jobs)


def make_mountain(jobs, idx, peak=None):
    idx = tuple(sorted(idx))
    if peak is None:
        lo = max(jobs[i].s for i in idx)
        if lo >= min(jobs[i].t for i in idx):
            raise ValueError("jobs share no edge")
        peak = lo
    span = (min(jobs[i].s for i in idx), max(jobs[i].t for i in idx) - 1)
    return Mountain(idx, peak, span)


def check_mountain(jobs, m):
    """None when every job contains the peak and the span is right."""
    if not m.jobs:
        return "empty mountain"
    for i in m.jobs:
        if not jobs[i].contains_edge(m.peak):
            return f"job {i} misses peak edge {m.peak}"
    span = (min(jobs[i].s for i in m.jobs), max(jobs[i].t for i in m.jobs) - 1)
    if span != m.span:
        return f"span {m.span} should be {span}"
    return None


def check_mountain_range(jobs, mr):
    """None when each part is a mountain and spans do not share an edge."""
    for m in mr.mountains:
        msg = check_mountain(jobs, m)
        if msg:
            return msg
    for a, b in zip(mr.mountains, mr.mountains[1:]):
        if a.span[1] >= b.span[0]:
            return f"spans {a.span} and {b.span} overlap"
    return None


def category_count(jobs):
    lengths = [j.length for j in jobs]
    return max(1, math.ceil(math.log2(max(lengths) / min(lengths))))


def mountain_decompose(jobs):
    """Split jobs into at most 4 * max(1, ceil(log2(lmax/lmin))) ranges.

    Category i (1-based) holds lengths in [2^(i-1) lmin, 2^i lmin), the last
    one closed on the right.  Inside a category with base length a, a job
    joins class q for the lowest q such that it contains the edge q*a;
    classes with equal q mod 4 are at least 4a apart and form one range.
    """
    jobs = list(jobs)
    if not jobs:
        raise ValueError("nothing to decompose")
    lmin = min(j.length for j in jobs)
    r = category_count(jobs)
    cats = {}
    for i, j in enumerate(jobs):
        c = 1
        while c < r and j.length >= (2 ** c) * lmin:
            c += 1
        cats.setdefault(c, []).append(i)
    out = []
    for c in sorted(cats):
        a = (2 ** (c - 1)) * lmin
        classes = {}
        for i in cats[c]:
            q = -(-jobs[i].s // a)  # lowest q with q*a >= s
            if q * a >= jobs[i].t:
                raise AssertionError("job shorter than its category")
            classes.setdefault(q, []).append(i)
        for res in range(4):
            qs = sorted(q for q in classes if q % 4 == res)
            if qs:
                out.append(MountainRange(tuple(make_mountain(jobs, classes[q], q * a) for q in qs)))
    return out


def extremal_subsets(jobs, idx, k):
    """Subsets of size k left after dropping the q1 leftmost-starting and
    the q2 rightmost-ending jobs, for all (q1, q2); deduplicated, in order
    of first appearance."""
    idx = list(idx)
    n = len(idx)
    if not 0 <= k <= n:
        raise ValueError("k must lie between 0 and the number of jobs")
    left = sorted(idx, key=lambda i: (jobs[i].s, i))
    right = sorted(idx, key=lambda i: (-jobs[i].t, i))
    seen, out = set(), []
    for q1 in range(n + 1):
        for q2 in range(n + 1):
            gone = set(left[:q1]) | set(right[:q2])
            if n - len(gone) != k:
                continue
            keep = tuple(sorted(set(idx) - gone))
            if keep not in seen:
                seen.add(keep)
                out.append(keep)
    return out


def single_mountain_partial(jobs, resources, k, idx=None):
    """Cover k jobs of a mountain: full-cover every extremal-discard subset
    of size k and keep the cheapest.  Returns (selection, covered indices).
    ``idx`` restricts the mountain to those job indices."""
    jobs = list(jobs)
    idx = list(range(len(jobs))) if idx is None else list(idx)
    if k > len(idx):
        raise ValueError("k exceeds the number of jobs")
    if idx and max(jobs[i].s for i in idx) >= min(jobs[i].t for i in idx):
        raise PreconditionError("jobs do not share an edge")
    if k == 0:
        return MultisetSelection(), []
    best = None
    for keep in extremal_subsets(jobs, idx, k):
        try:
            sel = full_cover_resall([jobs[i] for i in keep], resources)
        except UncoverableError:
            continue
        cost = sel.cost(resources)
        if best is None or cost < best[0]:
            best = (cost, sel, list(keep))
    if best is None:
        raise UncoverableError(f"no extremal subset of {k} jobs can be covered")
    return best[1], best[2]
