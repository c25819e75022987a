"""Shared pieces: the unreachable-cost marker and coordinate compression."""

from fractions import Fraction

from ..model import Job, Resource


class Unreachable:
    """Cost of an infeasible table entry.  Compares above every number and
    absorbs addition; it is not itself a number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return 0


INF = Unreachable()


def is_finite(v):
    return v is not INF


def compress(jobs, resources):
    """Renumber vertices so only job and resource endpoints remain.
    Returns (jobs, resources, vertex map old -> new)."""
    pts = sorted({p for x in list(jobs) + list(resources) for p in (x.s, x.t)})
    pos = {p: i + 1 for i, p in enumerate(pts)}
    js = [Job(pos[j.s], pos[j.t], j.penalty) for j in jobs]
    rs = [Resource(pos[r.s], pos[r.t], r.w, r.c) for r in resources]
    return js, rs, pos


ZERO = Fraction(0)
