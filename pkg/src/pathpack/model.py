"""Instances, derived quantities and verifiers shared by every solver.

All numbers are kept as :class:`fractions.Fraction`.  On a path with ``m``
edges the vertices are ``1..m+1`` and edge ``e`` joins ``e`` and ``e+1``.
On a tree the vertices are ``1..n`` with root ``1`` and each edge is named
by its child endpoint.
"""

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import InvalidInstance, PartialColoringError


def as_fraction(x):
    """Exact rational from int, Fraction, decimal string or "p/q" string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidInstance(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # go through the decimal repr so 0.51 means 51/100
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInstance(f"not a rational: {x!r}") from exc
    raise InvalidInstance(f"not a number: {x!r}")


def edge_class(c):
    """The integer l with 2^l <= c < 2^(l+1)."""
    c = as_fraction(c)
    if c <= 0:
        raise InvalidInstance("edge class needs a positive capacity")
    l = c.numerator.bit_length() - c.denominator.bit_length()
    if Fraction(2) ** l > c:
        l -= 1
    elif Fraction(2) ** (l + 1) <= c:
        l += 1
    return l


def ceil_div(a, b):
    return math.ceil(Fraction(a) / Fraction(b))


class PathNetwork:
    is_tree = False

    def __init__(self, capacities):
        caps = tuple(as_fraction(c) for c in capacities)
        if not caps:
            raise InvalidInstance("a path needs at least one edge")
        if any(c <= 0 for c in caps):
            raise InvalidInstance("capacities must be positive")
        self.capacities = caps

    @property
    def num_edges(self):
        return len(self.capacities)

    @property
    def num_vertices(self):
        return len(self.capacities) + 1

    @property
    def edges(self):
        return range(1, len(self.capacities) + 1)

    def capacity(self, e):
        return self.capacities[e - 1]

    @property
    def c_min(self):
        return min(self.capacities)

    @property
    def c_max(self):
        return max(self.capacities)

    def has_vertex(self, v):
        return isinstance(v, int) and 1 <= v <= self.num_vertices

    def route(self, s, t):
        """Edges between two vertices, left to right."""
        if s > t:
            s, t = t, s
        return tuple(range(s, t))

    def __eq__(self, other):
        return isinstance(other, PathNetwork) and self.capacities == other.capacities

    def __hash__(self):
        return hash(self.capacities)

    def __repr__(self):
        return f"PathNetwork({[str(c) for c in self.capacities]})"


class TreeNetwork:
    """Rooted tree on vertices 1..n.  ``parent`` and ``capacities`` are keyed
    by every non-root vertex; the capacity belongs to the edge to its parent."""

    is_tree = True
    root = 1

    def __init__(self, n, parent, capacities):
        if not isinstance(n, int) or n < 2:
            raise InvalidInstance("a tree needs at least two vertices")
        parent = {int(v): int(p) for v, p in parent.items()}
        caps = {int(v): as_fraction(c) for v, c in capacities.items()}
        expected = set(range(2, n + 1))
        if set(parent) != expected or set(caps) != expected:
            raise InvalidInstance("parent/capacity must be given for exactly vertices 2..n")
        if any(c <= 0 for c in caps.values()):
            raise InvalidInstance("capacities must be positive")
        if any(not 1 <= p <= n for p in parent.values()):
            raise InvalidInstance("parent out of range")
        depth = {1: 0}
        for v in range(2, n + 1):
            chain = []
            u = v
            while u not in depth:
                if u in chain:
                    raise InvalidInstance("parent mapping has a cycle")
                chain.append(u)
                u = parent[u]
            for w in reversed(chain):
                depth[w] = depth[parent[w]] + 1
        self.n = n
        self.parent = dict(sorted(parent.items()))
        self.caps = dict(sorted(caps.items()))
        self.depth = depth

    @property
    def num_vertices(self):
        return self.n

    @property
    def num_edges(self):
        return self.n - 1

    @property
    def edges(self):
        return range(2, self.n + 1)

    def capacity(self, e):
        return self.caps[e]

    @property
    def c_min(self):
        return min(self.caps.values())

    @property
    def c_max(self):
        return max(self.caps.values())

    def has_vertex(self, v):
        return isinstance(v, int) and 1 <= v <= self.n

    def lca(self, u, v):
        while self.depth[u] > self.depth[v]:
            u = self.parent[u]
        while self.depth[v] > self.depth[u]:
            v = self.parent[v]
        while u != v:
            u, v = self.parent[u], self.parent[v]
        return u

    def up_path(self, v, a):
        """Edges from v up to its ancestor a, starting at v."""
        out = []
        while v != a:
            out.append(v)
            v = self.parent[v]
        return out

    def route(self, s, t):
        a = self.lca(s, t)
        return tuple(self.up_path(s, a) + self.up_path(t, a)[::-1])

    def __eq__(self, other):
        return (
            isinstance(other, TreeNetwork)
            and self.n == other.n
            and self.parent == other.parent
            and self.caps == other.caps
        )

    def __hash__(self):
        return hash((self.n, tuple(self.parent.items()), tuple(self.caps.items())))

    def __repr__(self):
        return f"TreeNetwork(n={self.n})"


@dataclass(frozen=True)
class Request:
    s: int
    t: int
    d: Fraction
    w: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "d", as_fraction(self.d))
        object.__setattr__(self, "w", as_fraction(self.w))
        if self.s == self.t:
            raise InvalidInstance("request endpoints must differ")
        if self.d <= 0:
            raise InvalidInstance("demand must be positive")
        if self.w < 0:
            raise InvalidInstance("profit must be nonnegative")

    def normalized(self):
        if self.s < self.t:
            return self
        return Request(self.t, self.s, self.d, self.w)

    def scaled(self, d=None, w=None):
        return Request(self.s, self.t, self.d if d is None else d, self.w if w is None else w)


class UfpInstance:
    """A host network together with a sequence of requests.

    Derived values (loads, congestion, bottlenecks) are computed lazily and
    cached; the instance itself is never mutated.
    """

    def __init__(self, network, requests=()):
        reqs = []
        for r in requests:
            if not isinstance(r, Request):
                r = Request(*r)
            if not (network.has_vertex(r.s) and network.has_vertex(r.t)):
                raise InvalidInstance(f"request {r} uses an unknown vertex")
            if not network.is_tree:
                r = r.normalized()
            reqs.append(r)
        self.network = network
        self.requests = tuple(reqs)

    def __len__(self):
        return len(self.requests)

    def __eq__(self, other):
        return (
            isinstance(other, UfpInstance)
            and self.network == other.network
            and self.requests == other.requests
        )

    def __repr__(self):
        return f"UfpInstance({self.network!r}, {len(self.requests)} requests)"

    @property
    def is_tree(self):
        return self.network.is_tree

    def capacity(self, e):
        return self.network.capacity(e)

    @cached_property
    def routes(self):
        return tuple(self.network.route(r.s, r.t) for r in self.requests)

    @cached_property
    def loads(self):
        load = {e: Fraction(0) for e in self.network.edges}
        for r, route in zip(self.requests, self.routes):
            for e in route:
                load[e] += r.d
        return load

    def edge_congestion(self, e):
        return math.ceil(self.loads[e] / self.network.capacity(e))

    @cached_property
    def congestion(self):
        if not self.requests:
            return 0
        return max(self.edge_congestion(e) for e in self.network.edges)

    def bottleneck(self, i):
        """Minimum-capacity edge on the route of request i, lowest id on ties."""
        route = self.routes[i]
        return min(route, key=lambda e: (self.network.capacity(e), e))

    def bottleneck_capacity(self, i):
        return self.network.capacity(self.bottleneck(i))

    def request_class(self, i):
        return edge_class(self.bottleneck_capacity(i))

    @property
    def d_max(self):
        return max((r.d for r in self.requests), default=Fraction(0))

    @property
    def nba(self):
        return self.d_max <= self.network.c_min

    @property
    def is_uniform(self):
        return len(set(self.network.capacity(e) for e in self.network.edges)) == 1

    def crossing(self, e):
        """Indices of requests whose route uses edge e."""
        return [i for i, route in enumerate(self.routes) if e in route]

    def max_crossing(self):
        """Largest number of requests sharing one edge (clique number on a path)."""
        cnt = Counter(e for route in self.routes for e in route)
        return max(cnt.values(), default=0)

    def subset(self, indices):
        return UfpInstance(self.network, [self.requests[i] for i in indices])

    def total_profit(self, indices):
        return sum((self.requests[i].w for i in indices), Fraction(0))

    def is_feasible_set(self, indices):
        load = Counter()
        for i in indices:
            for e in self.routes[i]:
                load[e] += self.requests[i].d
        return all(load[e] <= self.network.capacity(e) for e in load)


def congestion(inst):
    """max_e ceil(l_e / c_e); 0 for an instance without requests."""
    return inst.congestion


def check_nba(inst):
    return inst.nba


def classify_demand(inst, i, delta):
    """'small' when d_i <= delta * c(b_i), otherwise 'large'."""
    delta = as_fraction(delta)
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if not isinstance(i, int) or not 0 <= i < len(inst.requests):
        raise InvalidInstance(f"unknown request id {i!r}")
    if inst.requests[i].d <= delta * inst.bottleneck_capacity(i):
        return "small"
    return "large"


class Coloring:
    """Request index -> color in 1..K."""

    def __init__(self, colors, num_colors=None):
        colors = tuple(colors)
        used = set(c for c in colors if c is not None)
        k = max(used, default=0) if num_colors is None else num_colors
        if None not in colors and used != set(range(1, k + 1)):
            raise ValueError("colors must be exactly 1..K")
        self.colors = colors
        self.num_colors = k

    @classmethod
    def compact(cls, labels):
        """Relabel arbitrary sortable labels to 1..K keeping their order."""
        order = {lab: j + 1 for j, lab in enumerate(sorted(set(labels)))}
        return cls([order[lab] for lab in labels])

    @classmethod
    def from_classes(cls, classes, n):
        colors = [None] * n
        for q, members in enumerate(classes, start=1):
            for i in members:
                colors[i] = q
        return cls.compact(colors) if None not in colors else cls(colors)

    def classes(self):
        out = [[] for _ in range(self.num_colors)]
        for i, c in enumerate(self.colors):
            out[c - 1].append(i)
        return out

    def shifted(self, offset):
        return [c + offset for c in self.colors]

    def __len__(self):
        return len(self.colors)

    def __eq__(self, other):
        return isinstance(other, Coloring) and self.colors == other.colors

    def __repr__(self):
        return f"Coloring(K={self.num_colors}, {list(self.colors)})"


@dataclass(frozen=True)
class ColoringViolation:
    color: int
    edge: int
    excess: Fraction


def verify_coloring(inst, col):
    """None when every color class fits, else the first violation in
    (color, edge) order."""
    colors = col.colors if isinstance(col, Coloring) else tuple(col)
    if len(colors) != len(inst.requests) or any(c is None for c in colors):
        raise PartialColoringError("coloring does not cover every request")
    load = {}
    for i, q in enumerate(colors):
        for e in inst.routes[i]:
            load[q, e] = load.get((q, e), Fraction(0)) + inst.requests[i].d
    for (q, e) in sorted(load):
        c = inst.network.capacity(e)
        if load[q, e] > c:
            return ColoringViolation(q, e, load[q, e] - c)
    return None


# --- covering -------------------------------------------------------------


@dataclass(frozen=True)
class Job:
    """Unit-demand job on the edges s..t-1 (vertex interval [s, t])."""

    s: int
    t: int
    penalty: Fraction = None

    def __post_init__(self):
        if self.penalty is not None:
            object.__setattr__(self, "penalty", as_fraction(self.penalty))
            if self.penalty < 0:
                raise InvalidInstance("penalty must be nonnegative")
        if not (isinstance(self.s, int) and isinstance(self.t, int)) or self.s >= self.t:
            raise InvalidInstance(f"job needs integer s < t, got [{self.s}, {self.t}]")

    @property
    def length(self):
        return self.t - self.s

    @property
    def edges(self):
        return range(self.s, self.t)

    def contains_edge(self, e):
        return self.s <= e < self.t


@dataclass(frozen=True)
class Resource:
    """w units of capacity on the edges s..t-1 at cost c per copy."""

    s: int
    t: int
    w: int
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", as_fraction(self.c))
        if not (isinstance(self.s, int) and isinstance(self.t, int)) or self.s >= self.t:
            raise InvalidInstance(f"resource needs integer s < t, got [{self.s}, {self.t}]")
        if not isinstance(self.w, int) or isinstance(self.w, bool) or self.w < 1:
            raise InvalidInstance("resource capacity must be a positive integer")
        if self.c < 0:
            raise InvalidInstance("resource cost must be nonnegative")

    @property
    def edges(self):
        return range(self.s, self.t)

    def contains_edge(self, e):
        return self.s <= e < self.t


class MultisetSelection:
    """Resource index -> number of copies (always >= 1)."""

    def __init__(self, counts=None):
        clean = {}
        for i, k in dict(counts or {}).items():
            if not isinstance(k, int) or k < 0:
                raise ValueError("copy counts must be nonnegative integers")
            if k:
                clean[i] = k
        self.counts = dict(sorted(clean.items()))

    def cost(self, resources):
        return sum((resources[i].c * k for i, k in self.counts.items()), Fraction(0))

    def profile(self, resources):
        prof = Counter()
        for i, k in self.counts.items():
            for e in resources[i].edges:
                prof[e] += resources[i].w * k
        return prof

    def merged(self, other):
        out = Counter(self.counts)
        out.update(other.counts)
        return MultisetSelection(out)

    def maxed(self, other):
        keys = set(self.counts) | set(other.counts)
        return MultisetSelection(
            {i: max(self.counts.get(i, 0), other.counts.get(i, 0)) for i in keys}
        )

    def items(self):
        return self.counts.items()

    def __len__(self):
        return len(self.counts)

    def __eq__(self, other):
        return isinstance(other, MultisetSelection) and self.counts == other.counts

    def __repr__(self):
        return f"MultisetSelection({self.counts})"


def job_profile(jobs):
    prof = Counter()
    for j in jobs:
        for e in j.edges:
            prof[e] += 1
    return prof


@dataclass(frozen=True)
class CoverViolation:
    edge: int
    deficit: int


def verify_cover(jobs, resources, sel):
    """None when the selected copies cover the job profile pointwise, else
    the leftmost edge where they fall short."""
    need = job_profile(jobs)
    have = sel.profile(resources)
    for e in sorted(need):
        if have[e] < need[e]:
            return CoverViolation(e, need[e] - have[e])
    return None


# --- containers for the other problem families ----------------------------


class BagInstance:
    """Bags of alternative requests; choosing any one request of bag j earns
    its profit p_j, and at most one request per bag may be chosen."""

    def __init__(self, network, bags, profits):
        bags = [list(b) for b in bags]
        profits = [as_fraction(p) for p in profits]
        if len(bags) != len(profits):
            raise InvalidInstance("one profit per bag")
        if any(not b for b in bags):
            raise InvalidInstance("bags must be nonempty")
        if any(p < 0 for p in profits):
            raise InvalidInstance("bag profits must be nonnegative")
        flat, owner, local = [], [], []
        for j, b in enumerate(bags):
            for r, req in enumerate(b):
                flat.append(req if isinstance(req, Request) else Request(*req))
                owner.append(j)
                local.append(r)
        self.network = network
        self.flat = UfpInstance(network, [Request(q.s, q.t, q.d, profits[owner[i]])
                                          for i, q in enumerate(flat)])
        self.bags = []
        pos = 0
        for b in bags:
            self.bags.append(tuple(self.flat.requests[pos:pos + len(b)]))
            pos += len(b)
        self.profits = tuple(profits)
        self.owner = tuple(owner)
        self.local = tuple(local)
        self.index = {(j, r): i for i, (j, r) in enumerate(zip(owner, local))}

    def __len__(self):
        return len(self.bags)

    def __eq__(self, other):
        return (isinstance(other, BagInstance) and self.network == other.network
                and self.bags == other.bags and self.profits == other.profits)

    @property
    def nba(self):
        return self.flat.nba

    def profit(self, choice):
        return sum((self.profits[j] for j, _ in choice), Fraction(0))

    def flat_indices(self, choice):
        return [self.index[j, r] for j, r in choice]

    def choice_from_flat(self, indices):
        return sorted((self.owner[i], self.local[i]) for i in indices)


def verify_bag_choice(inst, choice):
    """None when the (bag, request) pairs use each bag at most once and fit
    the capacities together, else a short description of the problem."""
    seen = set()
    for j, r in choice:
        if not 0 <= j < len(inst.bags) or not 0 <= r < len(inst.bags[j]):
            return f"unknown request ({j}, {r})"
        if j in seen:
            return f"bag {j} used twice"
        seen.add(j)
    sub = inst.flat.subset(inst.flat_indices(choice))
    bad = verify_coloring(sub, Coloring([1] * len(sub)) if len(sub) else Coloring([]))
    if bad is not None:
        return f"capacity exceeded on edge {bad.edge} by {bad.excess}"
    return None


class ResallInstance:
    """Jobs to cover, resources to buy copies of, and an optional
    partiality parameter k (number of jobs that must be covered)."""

    def __init__(self, jobs, resources, k=None):
        self.jobs = tuple(j if isinstance(j, Job) else Job(*j) for j in jobs)
        self.resources = tuple(r if isinstance(r, Resource) else Resource(*r) for r in resources)
        if k is not None and not (isinstance(k, int) and 0 <= k <= len(self.jobs)):
            raise InvalidInstance("k must be an integer between 0 and the number of jobs")
        self.k = k

    def __eq__(self, other):
        return (isinstance(other, ResallInstance) and self.jobs == other.jobs
                and self.resources == other.resources and self.k == other.k)

    def profile(self, job_indices=None):
        if job_indices is None:
            return job_profile(self.jobs)
        return job_profile([self.jobs[i] for i in job_indices])


class LspcInstance:
    """Integer demands d_1..d_E on a path of E edges, short resources (one
    edge each, at most one may be used per edge), long resources (any
    number of copies) and the number k of demand units to cover."""

    def __init__(self, demands, shorts, longs, k):
        self.demands = tuple(int(d) for d in demands)
        if not self.demands or any(d < 0 for d in self.demands):
            raise InvalidInstance("LSPC needs at least one edge and nonnegative demands")
        self.shorts = tuple(r if isinstance(r, Resource) else Resource(*r) for r in shorts)
        self.longs = tuple(r if isinstance(r, Resource) else Resource(*r) for r in longs)
        E = len(self.demands)
        for r in self.shorts:
            if r.t != r.s + 1:
                raise InvalidInstance("a short resource spans exactly one edge")
        for r in self.shorts + self.longs:
            if r.s < 1 or r.t > E + 1:
                raise InvalidInstance("resource outside the path")
        if not isinstance(k, int) or k < 0 or k > sum(self.demands):
            raise InvalidInstance("k must lie between 0 and the total demand")
        self.k = k

    @property
    def num_edges(self):
        return len(self.demands)

    @property
    def H(self):
        return max(self.demands)

    def demand(self, e):
        return self.demands[e - 1]

    def __eq__(self, other):
        return (isinstance(other, LspcInstance) and self.demands == other.demands
                and self.shorts == other.shorts and self.longs == other.longs
                and self.k == other.k)


@dataclass
class LspcSolution:
    """At most one short per edge, copy counts for longs, and the coverage
    profile k_e actually claimed."""

    cost: Fraction
    shorts: dict  # edge -> short index
    longs: dict  # long index -> copies
    coverage: dict  # edge -> k_e


def lspc_coverage(inst, shorts, longs, mode="slra"):
    """Units of demand covered per edge by a choice of shorts and long copies.
    ``mode='slra'`` counts only the largest single long resource at each edge."""
    out = {}
    for e in range(1, inst.num_edges + 1):
        sh = sum(inst.shorts[j].w for ee, j in shorts.items() if ee == e)
        contrib = [inst.longs[i].w * f for i, f in longs.items() if inst.longs[i].contains_edge(e)]
        if mode == "slra":
            lg = max(contrib, default=0)
        else:
            lg = sum(contrib)
        out[e] = min(inst.demand(e), sh + lg)
    return out


def verify_lspc(inst, sol, mode="slra"):
    """None when the solution is a valid LSPC solution (SLRA when requested)."""
    for e, j in sol.shorts.items():
        if inst.shorts[j].s != e:
            return f"short {j} does not sit on edge {e}"
    cov = lspc_coverage(inst, sol.shorts, sol.longs, mode)
    for e, ke in sol.coverage.items():
        if ke > cov[e]:
            return f"edge {e} claims {ke} but only {cov[e]} is covered"
    if sum(sol.coverage.values()) < inst.k:
        return "coverage below k"
    cost = sum((inst.shorts[j].c for j in sol.shorts.values()), Fraction(0))
    cost += sum((inst.longs[i].c * f for i, f in sol.longs.items()), Fraction(0))
    if cost != sol.cost:
        return f"declared cost {sol.cost} differs from {cost}"
    return None
