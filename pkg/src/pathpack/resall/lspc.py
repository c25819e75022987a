"""Exact optimum single-long-assignment (SLRA) solution of long-short
partial cover.

Ranges [a, b] are edge ranges.  M[a, b, q, h] is the cheapest cover of a
profile of measure q over [a, b] where an edge only needs attention when
its residual after the short resource exceeds h, and then one long
resource alone must cover that residual.  A[a, b, q, h] is the same using
short resources only.  M is the best of: shorts only; a cut between two
edges; or a long resource bought alpha times with alpha * w > h, covering
the edges it spans up to alpha * w while shorts handle the two sides.
"""

from collections import Counter

from ..errors import UncoverableError
from ..model import LspcSolution
from .base import INF, ZERO


def _gamma(shorts, need, max_items):
    """Cheapest subset (at most ``max_items`` items) with total capacity
    >= need; returns (cost, item indices)."""
    if need <= 0:
        return ZERO, ()
    limit = len(shorts) if max_items is None else max_items
    # state: (items used, capped units) -> (cost, picks)
    dp = {(0, 0): (ZERO, ())}
    for j, (w, c) in enumerate(shorts):
        nxt = dict(dp)
        for (n, u), (cost, picks) in dp.items():
            if n >= limit:
                continue
            key = (n + 1, min(need, u + w))
            cand = cost + c
            if key not in nxt or cand < nxt[key][0]:
                nxt[key] = (cand, picks + (j,))
        dp = nxt
    full = [v for (n, u), v in dp.items() if u >= need]
    if not full:
        return INF, None
    return min(full, key=lambda v: (v[0], v[1]))


def knapsack_gamma(e, q, h, shorts, max_items=None):
    """Cheapest set of the short resources on edge e (each at most once)
    whose capacities add up to at least q - h; 0 when q <= h, INF when no
    set reaches it."""
    here = [(r.w, r.c) for r in shorts if r.s == e]
    return _gamma(here, q - h, max_items)[0]


class LspcTables:
    """Filled A and M tables for every q up to ``qmax`` (default k)."""

    def __init__(self, inst, qmax=None):
        self.inst = inst
        E = inst.num_edges
        H = inst.H
        self.E, self.H = E, H
        self.qmax = inst.k if qmax is None else qmax
        d = inst.demands
        pre = [0]
        for v in d:
            pre.append(pre[-1] + v)
        self._pre = pre
        self.by_edge = {e: [j for j, r in enumerate(inst.shorts) if r.s == e] for e in range(1, E + 1)}
        self.gamma = {}
        for e in range(1, E + 1):
            here = [(inst.shorts[j].w, inst.shorts[j].c) for j in self.by_edge[e]]
            for q in range(d[e - 1] + 1):
                for h in range(H + 1):
                    cost, pick = _gamma(here, q - h, 1)
                    self.gamma[e, q, h] = (cost, None if not pick else self.by_edge[e][pick[0]])
        self.A = {}
        self.Ach = {}
        self.M = {}
        self.Mch = {}
        self.order = []
        self._fill_A()
        self._fill_M()

    def demand_sum(self, a, b):
        return self._pre[b] - self._pre[a - 1] if a <= b else 0

    # table A ---------------------------------------------------------

    def _fill_A(self):
        d = self.inst.demands
        for a in range(1, self.E + 1):
            for h in range(self.H + 1):
                for q in range(self.qmax + 1):
                    self.A[a, a - 1, q, h] = ZERO if q == 0 else INF
                for b in range(a, self.E + 1):
                    for q in range(self.qmax + 1):
                        best, arg = INF, None
                        for q1 in range(min(q, d[b - 1]) + 1):
                            v = self.A[a, b - 1, q - q1, h] + self.gamma[b, q1, h][0]
                            if v < best:
                                best, arg = v, q1
                        self.A[a, b, q, h] = best
                        self.Ach[a, b, q, h] = arg

    def a(self, a, b, q, h):
        if a > b:
            return ZERO if q == 0 else INF
        return self.A[a, b, q, h]

    # table M ---------------------------------------------------------

    def m(self, a, b, q, h):
        key = (a, b, q, h)
        if key not in self.M:
            raise AssertionError(f"M{key} read before it was filled")
        return self.M[key]

    def _sides(self, a, b, lo, hi, h):
        """side[q] = cheapest shorts-only split of q between [a, lo-1] and [hi+1, b]."""
        out = []
        for q in range(self.qmax + 1):
            best, arg = INF, None
            for q1 in range(q + 1):
                v = self.a(a, lo - 1, q1, h) + self.a(hi + 1, b, q - q1, h)
                if v < best:
                    best, arg = v, q1
            out.append((best, arg))
        return out

    def _fill_M(self):
        longs = self.inst.longs
        H = self.H
        for length in range(1, self.E + 1):
            for a in range(1, self.E - length + 2):
                b = a + length - 1
                cap = self.demand_sum(a, b)
                sides = {}
                for q in range(self.qmax + 1):
                    for h in range(H, -1, -1):
                        key = (a, b, q, h)
                        self.order.append(key)
                        if q == 0:
                            self.M[key], self.Mch[key] = ZERO, ("zero",)
                            continue
                        if q > cap:
                            self.M[key], self.Mch[key] = INF, None
                            continue
                        if h >= H:
                            self.M[key], self.Mch[key] = ZERO, ("free",)
                            continue
                        best, arg = self.A[key], ("A",)
                        for c in range(a, b):
                            for q1 in range(q + 1):
                                v = self.m(a, c, q1, h) + self.m(c + 1, b, q - q1, h)
                                if v < best:
                                    best, arg = v, ("cut", c, q1)
                        for i, r in enumerate(longs):
                            lo, hi = max(a, r.s), min(b, r.t - 1)
                            if lo > hi:
                                continue
                            if (i, h) not in sides:
                                sides[i, h] = self._sides(a, b, lo, hi, h)
                            side = sides[i, h]
                            for alpha in range(1, H + 1):
                                if alpha * r.w <= h:
                                    continue
                                h2 = min(alpha * r.w, H)
                                for q2 in range(q + 1):
                                    v = alpha * r.c + self.m(lo, hi, q2, h2) + side[q - q2][0]
                                    if v < best:
                                        best = v
                                        arg = ("long", i, alpha, lo, hi, h2, q2, side[q - q2][1])
                                if alpha * r.w >= H:
                                    break
                        self.M[key], self.Mch[key] = best, arg

    # read-out --------------------------------------------------------

    def cost(self, q=None):
        q = self.inst.k if q is None else q
        return self.M[1, self.E, q, 0]

    def solution(self, q=None):
        q = self.inst.k if q is None else q
        if q > self.qmax:
            raise ValueError("q beyond the filled tables")
        total = self.cost(q)
        if total is INF:
            raise UncoverableError(f"{q} units cannot be covered")
        shorts, longs, cov = {}, Counter(), {e: 0 for e in range(1, self.E + 1)}
        self._unwind_m(1, self.E, q, 0, shorts, longs, cov)
        return LspcSolution(total, shorts, dict(sorted(longs.items())), cov)

    def _unwind_a(self, a, b, q, h, shorts, cov):
        while b >= a:
            q1 = self.Ach[a, b, q, h]
            j = self.gamma[b, q1, h][1]
            if j is not None:
                shorts[b] = j
            cov[b] = q1
            q -= q1
            b -= 1
        assert q == 0

    def _unwind_m(self, a, b, q, h, shorts, longs, cov):
        ch = self.Mch[a, b, q, h]
        kind = ch[0]
        if kind == "zero":
            return
        if kind == "free":
            for e in range(a, b + 1):
                take = min(q, self.inst.demand(e))
                cov[e] = take
                q -= take
            return
        if kind == "A":
            self._unwind_a(a, b, q, h, shorts, cov)
        elif kind == "cut":
            _, c, q1 = ch
            self._unwind_m(a, c, q1, h, shorts, longs, cov)
            self._unwind_m(c + 1, b, q - q1, h, shorts, longs, cov)
        else:
            _, i, alpha, lo, hi, h2, q2, q1 = ch
            longs[i] += alpha
            self._unwind_m(lo, hi, q2, h2, shorts, longs, cov)
            self._unwind_a(a, lo - 1, q1, h, shorts, cov)
            self._unwind_a(hi + 1, b, q - q2 - q1, h, shorts, cov)

    def check_invariants(self):
        """Problems found in the filled tables (empty list when sound)."""
        bad = []
        for (a, b, q, h), v in self.M.items():
            if q == 0 and v != ZERO:
                bad.append(f"M{(a, b, q, h)} should be 0")
            if h >= self.H and q <= self.demand_sum(a, b) and v != ZERO:
                bad.append(f"M{(a, b, q, h)} should be 0 (h = H)")
            if v > self.A[a, b, q, h]:
                bad.append(f"M{(a, b, q, h)} exceeds A")
            if q > 0 and v < self.M[a, b, q - 1, h]:
                bad.append(f"M{(a, b, q, h)} decreases in q")
            if h > 0 and v > self.M[a, b, q, h - 1]:
                bad.append(f"M{(a, b, q, h)} increases in h")
        pos = {key: n for n, key in enumerate(self.order)}
        for (a, b, q, h), n in pos.items():
            for key in ((a, b, q - 1, h), (a, b, q, h + 1)):
                if key in pos and pos[key] > n:
                    bad.append(f"fill order puts {key} after {(a, b, q, h)}")
        return bad


def lspc_tables(inst, qmax=None):
    return LspcTables(inst, qmax)


def lspc_solve(inst):
    """Optimum SLRA solution (cost, one short per edge, long copies, coverage)."""
    return LspcTables(inst).solution()
