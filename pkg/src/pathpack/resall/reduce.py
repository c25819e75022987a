"""Partial cover of a mountain range as an LSPC instance.

Step 1 cuts every resource at mountain boundaries into at most three
pieces: the part inside the first mountain it meets, the part inside the
last one (both narrow), and the middle part spanning whole mountains
(wide).  Step 2 keeps one edge per mountain, with demand equal to its
number of jobs: wide pieces become long resources, and for each mountain
and each kappa a short resource of capacity kappa is priced by the
single-mountain partial cover with that mountain's narrow pieces.
"""

from collections import Counter
from dataclasses import dataclass, field

from ..errors import UncoverableError
from ..model import LspcInstance, MultisetSelection, Resource, job_profile, verify_cover
from .cover import full_cover_resall
from .mountains import single_mountain_partial


@dataclass
class Piece:
    origin: int  # index of the original resource
    resource: Resource  # on the original vertex line
    wide: bool
    mountains: tuple  # mountain positions (0-based) it lies in or spans


@dataclass
class RangeBackMap:
    jobs: list
    resources: list
    mrange: object
    pieces: list
    long_piece: list  # LSPC long index -> piece index
    short_info: list  # LSPC short index -> (mountain, kappa, piece selection, covered jobs)
    split_checks: int = 0
    stats: dict = field(default_factory=dict)

    def rehydrate(self, sol):
        """LSPC solution -> (selection over the original resources, covered
        job indices).  Never costs more than the LSPC solution."""
        piece_count = Counter()
        for i, f in sol.longs.items():
            piece_count[self.long_piece[i]] += f
        chosen = []
        for p, m in enumerate(self.mrange.mountains):
            e = p + 1
            want = sol.coverage.get(e, 0)
            from_short = []
            if e in sol.shorts:
                _, _, psel, covered = self.short_info[sol.shorts[e]]
                piece_count.update(psel.counts)
                from_short = list(covered)
            rest = [j for j in m.jobs if j not in set(from_short)]
            chosen.extend((from_short + rest)[:want])
        counts = Counter()
        for pi, f in piece_count.items():
            o = self.pieces[pi].origin
            counts[o] = max(counts[o], f)
        sel = MultisetSelection(counts)
        chosen = sorted(chosen)
        bad = verify_cover([self.jobs[j] for j in chosen], self.resources, sel)
        if bad is not None:
            raise AssertionError(f"rehydrated cover fails at {bad}")
        return sel, chosen


def _overlaps(r, span):
    return r.s <= span[1] and r.t - 1 >= span[0]


def split_resources(mrange, resources):
    """Step 1: pieces of every resource that meets the range."""
    spans = [m.span for m in mrange.mountains]
    pieces = []
    for i, r in enumerate(resources):
        hit = [p for p, sp in enumerate(spans) if _overlaps(r, sp)]
        if not hit:
            continue
        p, q = hit[0], hit[-1]

        def clip(sp):
            return Resource(max(r.s, sp[0]), min(r.t, sp[1] + 1), r.w, r.c)

        pieces.append(Piece(i, clip(spans[p]), False, (p,)))
        if q >= p + 2:
            mid = Resource(spans[p + 1][0], spans[q - 1][1] + 1, r.w, r.c)
            pieces.append(Piece(i, mid, True, tuple(range(p + 1, q))))
        if q > p:
            pieces.append(Piece(i, clip(spans[q]), False, (q,)))
    return pieces


def check_wide_split(jobs, idx, narrow, wide, sel_narrow, sel_wide):
    """Doubling the wide copies covers the h leftmost-starting and the h
    rightmost-ending jobs (h = wide height), and the narrow copies cover
    the rest.  Raises AssertionError otherwise."""
    h = sum(wide[i].w * f for i, f in sel_wide.counts.items())
    left = sorted(idx, key=lambda j: (jobs[j].s, j))[:h]
    right = sorted(idx, key=lambda j: (-jobs[j].t, j))[:h]
    j2 = set(left) | set(right)
    j1 = [j for j in idx if j not in j2]
    twice = MultisetSelection({i: 2 * f for i, f in sel_wide.counts.items()})
    if verify_cover([jobs[j] for j in j2], wide, twice) is not None:
        raise AssertionError("doubled wide resources miss an extremal job")
    if verify_cover([jobs[j] for j in j1], narrow, sel_narrow) is not None:
        raise AssertionError("narrow resources miss a middle job")


def reduce_range_to_lspc(jobs, mrange, resources, k=None):
    """Returns (LspcInstance, RangeBackMap).  ``k`` defaults to the number
    of jobs in the range."""
    jobs, resources = list(jobs), list(resources)
    mts = mrange.mountains
    pieces = split_resources(mrange, resources)
    demands = [len(m.jobs) for m in mts]
    longs, long_piece = [], []
    for pi, pc in enumerate(pieces):
        if pc.wide:
            longs.append(Resource(pc.mountains[0] + 1, pc.mountains[-1] + 2, pc.resource.w, pc.resource.c))
            long_piece.append(pi)
    shorts, short_info = [], []
    checks = 0
    for p, m in enumerate(mts):
        mine = [pi for pi, pc in enumerate(pieces) if not pc.wide and pc.mountains == (p,)]
        narrow = [pieces[pi].resource for pi in mine]
        for kappa in range(1, len(m.jobs) + 1):
            try:
                sel, covered = single_mountain_partial(jobs, narrow, kappa, idx=m.jobs)
            except UncoverableError:
                continue
            psel = MultisetSelection({mine[x]: f for x, f in sel.counts.items()})
            shorts.append(Resource(p + 1, p + 2, kappa, sel.cost(narrow)))
            short_info.append((p, kappa, psel, tuple(covered)))
        # the doubling argument, checked on a full cover of this mountain
        wide_here = [pi for pi, pc in enumerate(pieces) if pc.wide and p in pc.mountains]
        local = mine + wide_here
        pool = [pieces[pi].resource for pi in local]
        try:
            full = full_cover_resall([jobs[j] for j in m.jobs], pool)
        except UncoverableError:
            continue
        n_narrow = len(mine)
        sel_n = MultisetSelection({x: f for x, f in full.counts.items() if x < n_narrow})
        sel_w = MultisetSelection({x - n_narrow: f for x, f in full.counts.items() if x >= n_narrow})
        check_wide_split(jobs, m.jobs, narrow, pool[n_narrow:], sel_n, sel_w)
        checks += 1
    total = sum(demands)
    inst = LspcInstance(demands, shorts, longs, total if k is None else k)
    back = RangeBackMap(jobs, resources, mrange, pieces, long_piece, short_info, checks)
    back.stats = {"pieces": len(pieces), "shorts": len(shorts), "longs": len(longs)}
    return inst, back


def range_profile(jobs, mrange):
    return job_profile([jobs[j] for j in mrange.jobs])
