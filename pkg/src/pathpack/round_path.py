"""Round-UFP on paths: fewest colors such that every color class is a
feasible flow.

Uniform capacities get the first-fit sweep (exact for large demands, 2r for
small ones).  Arbitrary capacities under the no-bottleneck assumption split
demands at 1/4 of the bottleneck: large ones are rounded to a unit-demand
instance colored with exactly r colors, small ones are spread over a pool of
16r partial solutions guarded by their critical edge.
"""

from fractions import Fraction
import math

from .errors import NBAViolation, PreconditionError
from .model import Coloring, PathNetwork, Request, UfpInstance, edge_class, verify_coloring
from . import simplex

DELTA = Fraction(1, 4)


def require_nba(inst):
    if not inst.nba:
        raise NBAViolation(inst.d_max, inst.network.c_min)


def _require_path(inst):
    if inst.is_tree:
        raise PreconditionError("expected a path network")


def sweep_order(inst, indices=None):
    """Requests by (left endpoint, input index)."""
    if indices is None:
        indices = range(len(inst.requests))
    return sorted(indices, key=lambda i: (inst.requests[i].s, i))


def first_fit(inst, order, limit=None):
    """Give each request the smallest color whose class stays feasible along
    its whole route.  Returns {index: color}, or None if ``limit`` colors
    are not enough."""
    loads = []
    out = {}
    for i in order:
        d = inst.requests[i].d
        route = inst.routes[i]
        for q, load in enumerate(loads):
            if all(load.get(e, 0) + d <= inst.capacity(e) for e in route):
                break
        else:
            if limit is not None and len(loads) >= limit:
                return None
            loads.append({})
            q = len(loads) - 1
        for e in route:
            loads[q][e] = loads[q].get(e, 0) + d
        out[i] = q + 1
    return out


def _coloring(n, assign):
    return Coloring([assign[i] for i in range(n)])


def _uniform_cap(inst):
    caps = set(inst.capacity(e) for e in inst.network.edges)
    if len(caps) != 1:
        raise PreconditionError("capacities are not uniform")
    return caps.pop()


def color_large_uniform(inst):
    """First-fit sweep for uniform capacity c and demands in (c/2, c]; uses
    the optimum number of colors."""
    _require_path(inst)
    c = _uniform_cap(inst)
    require_nba(inst)
    if any(r.d <= c / 2 for r in inst.requests):
        raise PreconditionError("color_large_uniform needs every demand > c/2")
    return _coloring(len(inst), first_fit(inst, sweep_order(inst)))


def color_small_uniform(inst):
    """First-fit sweep for uniform capacity c and demands <= c/2 (at most 2r colors)."""
    _require_path(inst)
    c = _uniform_cap(inst)
    if any(r.d > c / 2 for r in inst.requests):
        raise PreconditionError("color_small_uniform needs every demand <= c/2")
    return _coloring(len(inst), first_fit(inst, sweep_order(inst)))


def _merge(inst, parts):
    """parts: list of (indices, Coloring of inst.subset(indices)); color
    ranges are stacked in the given order."""
    colors = [None] * len(inst)
    offset = 0
    for idx, col in parts:
        for j, i in enumerate(idx):
            colors[i] = col.colors[j] + offset
        offset += col.num_colors
    return Coloring(colors)


def round_ufp_uniform(inst):
    """Large demands (> c/2) and small demands colored separately; at most
    min(3 OPT, 4r - 1) colors."""
    _require_path(inst)
    c = _uniform_cap(inst)
    require_nba(inst)
    large = [i for i, r in enumerate(inst.requests) if r.d > c / 2]
    small = [i for i, r in enumerate(inst.requests) if r.d <= c / 2]
    parts = []
    if large:
        parts.append((large, color_large_uniform(inst.subset(large))))
    if small:
        parts.append((small, color_small_uniform(inst.subset(small))))
    return _merge(inst, parts)


# --- unit demands, integer capacities ------------------------------------


def _check_unit(inst):
    for e in inst.network.edges:
        c = inst.capacity(e)
        if c.denominator != 1:
            raise PreconditionError("unit coloring needs integer capacities")
    if any(r.d != 1 for r in inst.requests):
        raise PreconditionError("unit coloring needs every demand equal to 1")


def color_unit_path(inst):
    """Color unit demands on an integer-capacity path with exactly r colors."""
    return color_unit_path_traced(inst)[0]


def color_unit_path_traced(inst):
    """Same as color_unit_path, also reporting which tier produced the answer
    ('sweep' or 'peel')."""
    _require_path(inst)
    _check_unit(inst)
    r = inst.congestion
    if r == 0:
        return Coloring([]), "sweep"
    assign = first_fit(inst, sweep_order(inst), limit=r)
    if assign is not None:
        return _coloring(len(inst), assign), "sweep"
    return _coloring(len(inst), _peel(inst, r)), "peel"


def _peel(inst, r):
    """Split off one color at a time.  A color class S is chosen with
    l_e - (k-1) c_e <= |S on e| <= c_e on every edge, so what remains has
    congestion at most k - 1.  The constraint matrix is an interval matrix,
    hence totally unimodular, so the simplex vertex is integral."""
    remaining = list(range(len(inst)))
    assign = {}
    edges = list(inst.network.edges)
    for k in range(r, 0, -1):
        if not remaining:
            break
        if k == 1:
            chosen = list(remaining)
        else:
            A, b = [], []
            for e in edges:
                row = [1 if e in inst.routes[i] else 0 for i in remaining]
                if not any(row):
                    continue
                c = int(inst.capacity(e))
                A.append(row)
                b.append(c)
                lo = sum(row) - (k - 1) * c
                if lo > 0:
                    A.append([-v for v in row])
                    b.append(-lo)
            for j in range(len(remaining)):
                A.append([1 if jj == j else 0 for jj in range(len(remaining))])
                b.append(1)
            res = simplex.solve([1] * len(remaining), A, b)
            if any(v.denominator != 1 for v in res.x):
                raise AssertionError("non-integral vertex on an interval matrix")
            chosen = [i for i, v in zip(remaining, res.x) if v == 1]
        color = r - k + 1
        for i in chosen:
            assign[i] = color
        remaining = [i for i in remaining if i not in assign]
    if remaining:
        raise AssertionError("peeling left requests uncolored")
    return assign


# --- arbitrary capacities --------------------------------------------------


def is_large(inst, i, delta=DELTA):
    return inst.requests[i].d > delta * inst.bottleneck_capacity(i)


def critical_edge(inst, i):
    """Leftmost edge on the route whose class equals the request's class."""
    route = inst.routes[i]
    low = min(edge_class(inst.capacity(e)) for e in route)
    return min(e for e in route if edge_class(inst.capacity(e)) == low)


def unit_rounding(inst):
    """Scale so c_min = 1, floor capacities, set demands to 1."""
    cmin = inst.network.c_min
    caps = [math.floor(c / cmin) for c in inst.network.capacities]
    reqs = [Request(r.s, r.t, 1, r.w) for r in inst.requests]
    return UfpInstance(PathNetwork(caps), reqs)


def color_large_arbitrary(inst):
    """At most 8r colors for demands that are 1/4-large at their bottleneck."""
    _require_path(inst)
    require_nba(inst)
    if not all(is_large(inst, i) for i in range(len(inst))):
        raise PreconditionError("color_large_arbitrary needs 1/4-large demands only")
    return color_unit_path(unit_rounding(inst))


def pool_assign(inst, order, crit, pool_size, group=None, hard_group=True, guard=False):
    """Place requests one by one into at most ``pool_size`` partial
    solutions.  A request may join a solution only if every edge in
    ``crit[i]`` carries at most 1/16 of its capacity there.

    ``group`` maps a request to a label; with ``hard_group`` two requests of
    one label never share a solution, otherwise sharing is only avoided
    when possible.  With ``guard`` a solution is also skipped when the
    request would overflow some edge of its route.
    Returns {index: solution number starting at 1}.
    """
    loads = []
    labels = []
    out = {}
    for i in order:
        d = inst.requests[i].d
        chosen = shared = None
        for q, load in enumerate(loads):
            if all(load.get(e, 0) <= inst.capacity(e) / 16 for e in crit[i]) and (
                not guard or all(load.get(e, 0) + d <= inst.capacity(e) for e in inst.routes[i])
            ):
                if group is not None and group[i] in labels[q]:
                    if shared is None:
                        shared = q
                    continue
                chosen = q
                break
        if chosen is None and len(loads) < pool_size:
            loads.append({})
            labels.append(set())
            chosen = len(loads) - 1
        if chosen is None and not hard_group:
            chosen = shared
        if chosen is None:
            raise AssertionError(
                f"no admissible solution among {pool_size} for request {i}"
            )
        for e in inst.routes[i]:
            loads[chosen][e] = loads[chosen].get(e, 0) + d
        if group is not None:
            labels[chosen].add(group[i])
        out[i] = chosen + 1
    return out


def color_small_arbitrary(inst, pool_size=None, group=None, hard_group=True):
    """At most 16r colors for demands that are 1/4-small at their bottleneck."""
    _require_path(inst)
    require_nba(inst)
    if not all(not is_large(inst, i) for i in range(len(inst))):
        raise PreconditionError("color_small_arbitrary needs 1/4-small demands only")
    if not inst.requests:
        return Coloring([])
    if pool_size is None:
        pool_size = 16 * inst.congestion
    crit = {i: (critical_edge(inst, i),) for i in range(len(inst))}
    assign = pool_assign(inst, sweep_order(inst), crit, pool_size, group, hard_group)
    col = Coloring.compact([assign[i] for i in range(len(inst))])
    bad = verify_coloring(inst, col)
    if bad is not None:
        raise AssertionError(f"small-demand pool produced an infeasible class: {bad}")
    return col


def round_ufp_path(inst):
    """Under NBA: at most 24 times the optimum number of colors."""
    _require_path(inst)
    require_nba(inst)
    large = [i for i in range(len(inst)) if is_large(inst, i)]
    small = [i for i in range(len(inst)) if not is_large(inst, i)]
    parts = []
    if large:
        parts.append((large, color_large_arbitrary(inst.subset(large))))
    if small:
        parts.append((small, color_small_arbitrary(inst.subset(small))))
    return _merge(inst, parts)
