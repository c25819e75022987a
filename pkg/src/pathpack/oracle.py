"""Exact solvers for every problem at desk scale.

Each search is exhaustive up to pruning that can never discard an optimum,
and every search runs under an :class:`OracleBudget`.  Running out of budget
raises :class:`BudgetExceeded`; a truncated search never returns a value.
"""

import itertools
import math
import os
import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, InvalidInstance, UncoverableError
from .model import (
    Coloring,
    LspcSolution,
    MultisetSelection,
    Resource,
    job_profile,
)

INF = math.inf
ZERO = Fraction(0)


@dataclass(frozen=True)
class OracleBudget:
    max_requests: int = 12
    max_jobs: int = 8
    max_resources: int = 8
    max_colors: int = 64
    max_nodes: int = 5_000_000
    time_sec: float = 10.0

    def __post_init__(self):
        for name in ("max_requests", "max_jobs", "max_resources", "max_colors", "max_nodes"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.time_sec <= 0:
            raise ValueError("time_sec must be positive")


def default_budget():
    sec = os.environ.get("PATHPACK_ORACLE_BUDGET_SEC")
    if sec:
        return OracleBudget(time_sec=float(sec))
    return OracleBudget()


class _Meter:
    def __init__(self, budget):
        self.budget = budget
        self.nodes = 0
        self.deadline = time.monotonic() + budget.time_sec

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise BudgetExceeded(f"node cap {self.budget.max_nodes} reached")
        if self.nodes % 512 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"time cap {self.budget.time_sec}s reached")


def _size_check(what, n, cap):
    if n > cap:
        raise BudgetExceeded(f"{n} {what} exceeds the oracle cap of {cap}")


# --- Round-UFP -------------------------------------------------------------


def _order(inst):
    if inst.is_tree:
        net = inst.network
        key = lambda i: (net.depth[net.lca(inst.requests[i].s, inst.requests[i].t)], i)
    else:
        key = lambda i: (inst.requests[i].s, i)
    return sorted(range(len(inst)), key=key)


def exact_round_ufp(inst, budget=None):
    """Minimum number of colors and a witness coloring."""
    budget = budget or default_budget()
    _size_check("requests", len(inst), budget.max_requests)
    n = len(inst)
    if n == 0:
        return 0, Coloring([])
    meter = _Meter(budget)
    order = _order(inst)
    caps = {e: inst.capacity(e) for e in inst.network.edges}
    K = 1
    while True:
        if K > budget.max_colors:
            raise BudgetExceeded("color cap reached")
        found = _color_with(inst, order, caps, K, meter)
        if found is not None:
            col = Coloring.compact([found[i] for i in range(n)])
            return col.num_colors, col
        K += 1


def _color_with(inst, order, caps, K, meter):
    n = len(order)
    reqs, routes = inst.requests, inst.routes
    pending = dict(inst.loads)  # load of requests not yet colored
    loads = [dict.fromkeys(caps, ZERO) for _ in range(K)]
    assign = {}

    def spare_ok(route):
        # what is still uncolored on an edge must fit in the spare room of the K colors
        for e in route:
            if pending[e] > sum(caps[e] - loads[q][e] for q in range(K)):
                return False
        return True

    if not spare_ok(caps):
        return None

    def dfs(pos, used):
        meter.tick()
        if pos == n:
            return True
        i = order[pos]
        d, route = reqs[i].d, routes[i]
        for e in route:
            pending[e] -= d
        for q in range(min(used + 1, K)):
            load = loads[q]
            if all(load[e] + d <= caps[e] for e in route):
                for e in route:
                    load[e] += d
                assign[i] = q + 1
                if spare_ok(route) and dfs(pos + 1, max(used, q + 1)):
                    return True
                for e in route:
                    load[e] -= d
        for e in route:
            pending[e] += d
        return False

    return assign if dfs(0, 0) else None


# --- Max-UFP ---------------------------------------------------------------


def _frac_knapsack(items, room):
    """items: (weight, value); best fractional value within room."""
    total = ZERO
    for wt, val in sorted(items, key=lambda p: (-p[1] / p[0], p[0])):
        if room <= 0:
            break
        take = min(Fraction(1), room / wt)
        total += take * val
        room -= take * wt
    return total


def exact_max_ufp(inst, budget=None):
    """Maximum total profit of a feasible subset, with a witness (sorted indices)."""
    budget = budget or default_budget()
    _size_check("requests", len(inst), budget.max_requests)
    meter = _Meter(budget)
    n = len(inst)
    order = sorted(range(n), key=lambda i: (inst.requests[i].s, i))
    reqs, routes = inst.requests, inst.routes
    edges = list(inst.network.edges)
    room = {e: inst.capacity(e) for e in edges}
    best = [ZERO, []]
    chosen = []

    def bound(pos, cur):
        cand = [i for i in order[pos:] if all(reqs[i].d <= room[e] for e in routes[i])]
        ub = cur + sum((reqs[i].w for i in cand), ZERO)
        for e in edges:
            inside = [(reqs[i].d, reqs[i].w) for i in cand if e in routes[i]]
            if not inside:
                continue
            outside = sum((reqs[i].w for i in cand if e not in routes[i]), ZERO)
            ub = min(ub, cur + outside + _frac_knapsack(inside, room[e]))
        return ub

    def dfs(pos, cur):
        meter.tick()
        if cur > best[0]:
            best[0], best[1] = cur, sorted(chosen)
        if pos == n or bound(pos, cur) <= best[0]:
            return
        i = order[pos]
        d = reqs[i].d
        if all(d <= room[e] for e in routes[i]):
            for e in routes[i]:
                room[e] -= d
            chosen.append(i)
            dfs(pos + 1, cur + reqs[i].w)
            chosen.pop()
            for e in routes[i]:
                room[e] += d
        dfs(pos + 1, cur)

    dfs(0, ZERO)
    return best[0], best[1]


# --- Bag-UFP ---------------------------------------------------------------


def _bag_search(inst, budget, disjoint):
    budget = budget or default_budget()
    _size_check("requests", len(inst.flat), budget.max_requests)
    meter = _Meter(budget)
    flat = inst.flat
    room = {e: flat.capacity(e) for e in flat.network.edges}
    used = set()
    m = len(inst.bags)
    best = [ZERO, []]
    chosen = []

    def fits(i):
        if disjoint:
            return not any(e in used for e in flat.routes[i])
        return all(flat.requests[i].d <= room[e] for e in flat.routes[i])

    def dfs(j, cur):
        meter.tick()
        if cur > best[0]:
            best[0], best[1] = cur, sorted(chosen)
        if j == m:
            return
        rest = sum(
            (inst.profits[jj] for jj in range(j, m)
             if any(fits(inst.index[jj, r]) for r in range(len(inst.bags[jj])))),
            ZERO,
        )
        if cur + rest <= best[0]:
            return
        for r in range(len(inst.bags[j])):
            i = inst.index[j, r]
            if fits(i):
                for e in flat.routes[i]:
                    room[e] -= flat.requests[i].d
                    used.add(e)
                chosen.append((j, r))
                dfs(j + 1, cur + inst.profits[j])
                chosen.pop()
                for e in flat.routes[i]:
                    room[e] += flat.requests[i].d
                    used.discard(e)
        dfs(j + 1, cur)

    dfs(0, ZERO)
    return best[0], best[1]


def exact_bag_ufp(inst, budget=None):
    """Maximum profit choosing at most one request per bag, with the chosen
    (bag, request) pairs."""
    return _bag_search(inst, budget, disjoint=False)


def exact_disjoint_bag(inst, budget=None):
    """Like exact_bag_ufp but the chosen routes must be pairwise edge-disjoint."""
    return _bag_search(inst, budget, disjoint=True)


# --- covering --------------------------------------------------------------


def _min_cover(profile, resources, limits, meter):
    """Cheapest copy counts covering ``profile`` (edge -> demand).
    ``limits[i]`` caps the copies of resource i (None for no cap)."""
    need = {e: v for e, v in profile.items() if v > 0}
    if not need:
        return ZERO, MultisetSelection()
    order = sorted(range(len(resources)), key=lambda i: (resources[i].s, i))
    order = [i for i in order if any(resources[i].contains_edge(e) for e in need)]
    last = {}
    for pos, i in enumerate(order):
        for e in resources[i].edges:
            if e in need:
                last[e] = pos
    missing = [e for e in need if e not in last]
    if missing:
        raise UncoverableError(f"no resource spans edge {min(missing)}")
    closing = [[] for _ in order]
    for e, pos in last.items():
        closing[pos].append(e)
    # cheapest cost per unit among resources at position >= pos covering e
    ratio = [dict() for _ in range(len(order) + 1)]
    for pos in range(len(order) - 1, -1, -1):
        ratio[pos] = dict(ratio[pos + 1])
        r = resources[order[pos]]
        for e in r.edges:
            if e in need:
                v = r.c / r.w
                if e not in ratio[pos] or v < ratio[pos][e]:
                    ratio[pos][e] = v
    residual = dict(need)
    counts = {}
    best = [INF, None]

    def dfs(pos, cost):
        meter.tick()
        lb = cost
        for e, v in residual.items():
            if v > 0:
                lb = max(lb, cost + v * ratio[pos].get(e, INF))
        if lb >= best[0]:
            return
        if pos == len(order):
            best[0], best[1] = cost, dict(counts)
            return
        i = order[pos]
        r = resources[i]
        top = max((residual[e] for e in r.edges if e in residual), default=0)
        hi = math.ceil(top / r.w) if top > 0 else 0
        if limits[i] is not None:
            hi = min(hi, limits[i])
        for f in range(hi, -1, -1):
            for e in r.edges:
                if e in residual:
                    residual[e] -= f * r.w
            if all(residual[e] <= 0 for e in closing[pos]):
                if f:
                    counts[i] = f
                dfs(pos + 1, cost + f * r.c)
                counts.pop(i, None)
            for e in r.edges:
                if e in residual:
                    residual[e] += f * r.w

    dfs(0, ZERO)
    if best[1] is None:
        raise UncoverableError("demand profile cannot be covered")
    return best[0], MultisetSelection(best[1])


def exact_full_cover(jobs, resources, budget=None):
    budget = budget or default_budget()
    _size_check("jobs", len(jobs), budget.max_jobs)
    _size_check("resources", len(resources), budget.max_resources)
    return _min_cover(job_profile(jobs), resources, [None] * len(resources), _Meter(budget))


def exact_smfc(profile, resources, single_use, budget=None):
    """Full cover of an integer profile where resources flagged in
    ``single_use`` may be taken at most once."""
    budget = budget or default_budget()
    _size_check("resources", len(resources), 2 * budget.max_resources)
    limits = [1 if s else None for s in single_use]
    return _min_cover(dict(profile), resources, limits, _Meter(budget))


def exact_presall(jobs, resources, k, budget=None):
    """Cheapest multiset covering at least k of the jobs: (cost, selection,
    covered job indices)."""
    budget = budget or default_budget()
    _size_check("jobs", len(jobs), budget.max_jobs)
    _size_check("resources", len(resources), budget.max_resources)
    if not 0 <= k <= len(jobs):
        raise InvalidInstance("k out of range")
    meter = _Meter(budget)
    memo = {}
    best = (INF, None, None)
    # covering more jobs never costs less, so subsets of size exactly k suffice
    for subset in itertools.combinations(range(len(jobs)), k):
        prof = job_profile([jobs[i] for i in subset])
        key = tuple(sorted(prof.items()))
        if key not in memo:
            try:
                memo[key] = _min_cover(prof, resources, [None] * len(resources), meter)
            except UncoverableError:
                memo[key] = (INF, None)
        cost, sel = memo[key]
        if cost < best[0]:
            best = (cost, sel, list(subset))
    if best[1] is None:
        raise UncoverableError(f"no {k} jobs can be covered")
    return best


def exact_pcresall(jobs, resources, budget=None):
    """Minimum of (cover cost of the covered jobs + penalties of the others)."""
    budget = budget or default_budget()
    _size_check("jobs", len(jobs), budget.max_jobs)
    _size_check("resources", len(resources), budget.max_resources)
    meter = _Meter(budget)
    memo = {}
    best = (INF, None, None)
    n = len(jobs)
    for mask in range(1 << n):
        subset = [i for i in range(n) if mask >> i & 1]
        prof = job_profile([jobs[i] for i in subset])
        key = tuple(sorted(prof.items()))
        if key not in memo:
            try:
                memo[key] = _min_cover(prof, resources, [None] * len(resources), meter)
            except UncoverableError:
                memo[key] = (INF, None)
        cost, sel = memo[key]
        if sel is None:
            continue
        total = cost + sum((jobs[i].penalty or ZERO for i in range(n) if not mask >> i & 1), ZERO)
        if total < best[0]:
            best = (total, sel, subset)
    return best


def exact_lspc(inst, mode="slra", budget=None):
    """Cheapest LSPC solution.  ``mode='slra'`` restricts to single long
    resource assignment covers; ``'unrestricted'`` lets long resources add up."""
    if mode not in ("slra", "unrestricted"):
        raise ValueError("mode must be 'slra' or 'unrestricted'")
    budget = budget or default_budget()
    _size_check("resources", len(inst.shorts) + len(inst.longs), 2 * budget.max_resources)
    meter = _Meter(budget)
    E, k = inst.num_edges, inst.k
    H = inst.H
    ranges = [range(math.ceil(H / r.w) + 1) for r in inst.longs]
    by_edge = {e: [j for j, r in enumerate(inst.shorts) if r.s == e] for e in range(1, E + 1)}
    best = (INF, None)
    for copies in itertools.product(*ranges):
        meter.tick()
        lcost = sum((r.c * f for r, f in zip(inst.longs, copies)), ZERO)
        if lcost >= best[0]:
            continue
        base = {}
        for e in range(1, E + 1):
            contrib = [r.w * f for r, f in zip(inst.longs, copies) if f and r.contains_edge(e)]
            base[e] = max(contrib, default=0) if mode == "slra" else sum(contrib)
        # multiple-choice knapsack over edges: dp[units] = (cost, choices)
        dp = {0: (ZERO, {})}
        for e in range(1, E + 1):
            d = inst.demand(e)
            opts = [(min(d, base[e]), ZERO, None)]
            for j in by_edge[e]:
                opts.append((min(d, base[e] + inst.shorts[j].w), inst.shorts[j].c, j))
            nxt = {}
            for u, (c0, ch) in dp.items():
                for gain, c1, j in opts:
                    v = min(k, u + gain)
                    cand = c0 + c1
                    if v not in nxt or cand < nxt[v][0]:
                        nch = dict(ch)
                        if j is not None:
                            nch[e] = j
                        nxt[v] = (cand, nch)
                meter.tick()
            dp = nxt
        if k in dp and lcost + dp[k][0] < best[0]:
            shorts = dp[k][1]
            longs = {i: f for i, f in enumerate(copies) if f}
            best = (lcost + dp[k][0], (shorts, longs))
    if best[1] is None:
        raise UncoverableError("k units cannot be covered")
    shorts, longs = best[1]
    cov = _claim(inst, shorts, longs, mode)
    return best[0], LspcSolution(best[0], shorts, longs, cov)


def _claim(inst, shorts, longs, mode):
    """Coverage profile of measure exactly k, taken left to right."""
    from .model import lspc_coverage

    avail = lspc_coverage(inst, shorts, longs, mode)
    out, left = {}, inst.k
    for e in sorted(avail):
        take = min(avail[e], left)
        out[e] = take
        left -= take
    return out


def exact_cover(problem, instance, budget=None):
    """Dispatch by problem name: 'full', 'presall', 'pcresall', 'smfc',
    'lspc' (SLRA optimum) or 'lspc-unrestricted'."""
    if problem == "full":
        return exact_full_cover(instance.jobs, instance.resources, budget)
    if problem == "presall":
        return exact_presall(instance.jobs, instance.resources, instance.k, budget)
    if problem == "pcresall":
        return exact_pcresall(instance.jobs, instance.resources, budget)
    if problem == "smfc":
        profile, resources, single_use = instance
        return exact_smfc(profile, resources, single_use, budget)
    if problem == "lspc":
        return exact_lspc(instance, "slra", budget)
    if problem == "lspc-unrestricted":
        return exact_lspc(instance, "unrestricted", budget)
    raise ValueError(f"unknown covering problem {problem!r}")
