"""Round-UFP on trees (root 1, each edge named by its child vertex).

Large demands are rounded to unit demands on an integer-capacity tree and
colored with at most 4r colors; small demands go to a pool of 16r partial
solutions guarded at the two critical edges next to the request's least
common ancestor.
"""

import math

from .errors import PreconditionError
from .model import Coloring, Request, TreeNetwork, UfpInstance, edge_class, verify_coloring
from .round_path import DELTA, _merge, is_large, pool_assign, require_nba


def _require_tree(inst):
    if not inst.is_tree:
        raise PreconditionError("expected a tree network")


def lca_of(inst, i):
    r = inst.requests[i]
    return inst.network.lca(r.s, r.t)


def top_down_order(inst, indices=None):
    """Shallowest LCA first; ties by LCA vertex id, then input index."""
    net = inst.network
    if indices is None:
        indices = range(len(inst))
    return sorted(indices, key=lambda i: (net.depth[lca_of(inst, i)], lca_of(inst, i), i))


def bottom_up_order(inst, indices=None):
    """Deepest LCA first; ties by LCA vertex id, then input index."""
    net = inst.network
    if indices is None:
        indices = range(len(inst))
    return sorted(indices, key=lambda i: (-net.depth[lca_of(inst, i)], lca_of(inst, i), i))


def critical_edges(inst, i):
    """For each side of the route below the LCA, the minimum-class edge
    closest to the LCA."""
    net = inst.network
    r = inst.requests[i]
    a = lca_of(inst, i)
    out = []
    for v in (r.s, r.t):
        side = net.up_path(v, a)
        if not side:
            continue
        low = min(edge_class(net.capacity(e)) for e in side)
        out.append([e for e in side if edge_class(net.capacity(e)) == low][-1])
    return tuple(out)


# --- unit demands ------------------------------------------------------------


def color_unit_tree(inst):
    """At most 4r colors for unit demands on an integer-capacity tree."""
    return color_unit_tree_traced(inst)[0]


def color_unit_tree_traced(inst):
    """color_unit_tree plus the tier that produced it ('sweep' or 'search')."""
    _require_tree(inst)
    for e in inst.network.edges:
        if inst.capacity(e).denominator != 1:
            raise PreconditionError("unit coloring needs integer capacities")
    if any(r.d != 1 for r in inst.requests):
        raise PreconditionError("unit coloring needs every demand equal to 1")
    if not inst.requests:
        return Coloring([]), "sweep"
    budget = 4 * inst.congestion
    assign = _first_fit(inst, top_down_order(inst))
    if max(assign.values()) <= budget:
        return Coloring([assign[i] for i in range(len(inst))]), "sweep"
    assign = _search(inst, top_down_order(inst), budget)
    if assign is None:
        raise AssertionError(f"no coloring with {budget} colors found")
    return Coloring.compact([assign[i] for i in range(len(inst))]), "search"


def _first_fit(inst, order):
    loads = []
    out = {}
    for i in order:
        route = inst.routes[i]
        d = inst.requests[i].d
        for q, load in enumerate(loads):
            if all(load.get(e, 0) + d <= inst.capacity(e) for e in route):
                break
        else:
            loads.append({})
            q = len(loads) - 1
        for e in route:
            loads[q][e] = loads[q].get(e, 0) + d
        out[i] = q + 1
    return out


def _search(inst, order, K, max_nodes=2_000_000):
    """Backtracking over colorings with at most K colors (new colors are
    opened in order, so equivalent relabelings are skipped)."""
    loads = [dict() for _ in range(K)]
    assign = {}
    nodes = [0]

    def dfs(pos, used):
        nodes[0] += 1
        if nodes[0] > max_nodes:
            return False
        if pos == len(order):
            return True
        i = order[pos]
        route, d = inst.routes[i], inst.requests[i].d
        for q in range(min(used + 1, K)):
            if all(loads[q].get(e, 0) + d <= inst.capacity(e) for e in route):
                for e in route:
                    loads[q][e] = loads[q].get(e, 0) + d
                assign[i] = q + 1
                if dfs(pos + 1, max(used, q + 1)):
                    return True
                for e in route:
                    loads[q][e] -= d
        return False

    return dict(assign) if dfs(0, 0) else None


# --- arbitrary capacities ----------------------------------------------------


def unit_rounding_tree(inst):
    """Demands up to c_min, capacities down to multiples of c_min, then
    divide by c_min."""
    net = inst.network
    cmin = net.c_min
    caps = {v: math.floor(c / cmin) for v, c in net.caps.items()}
    reqs = [Request(r.s, r.t, 1, r.w) for r in inst.requests]
    return UfpInstance(TreeNetwork(net.n, net.parent, caps), reqs)


def color_large_tree(inst):
    """At most 32r colors for 1/4-large demands."""
    _require_tree(inst)
    require_nba(inst)
    if not all(is_large(inst, i) for i in range(len(inst))):
        raise PreconditionError("color_large_tree needs 1/4-large demands only")
    if not inst.requests:
        return Coloring([])
    unit = unit_rounding_tree(inst)
    for e in inst.network.edges:
        before, after = inst.edge_congestion(e), unit.edge_congestion(e)
        if not before <= after <= 8 * before:
            raise AssertionError(f"rounding distorted congestion of edge {e}: {before} -> {after}")
    return color_unit_tree(unit)


def color_small_tree(inst):
    """At most 16r colors for 1/4-small demands."""
    _require_tree(inst)
    require_nba(inst)
    if any(is_large(inst, i) for i in range(len(inst))):
        raise PreconditionError("color_small_tree needs 1/4-small demands only")
    if not inst.requests:
        return Coloring([])
    crit = {i: critical_edges(inst, i) for i in range(len(inst))}
    assign = pool_assign(inst, bottom_up_order(inst), crit, 16 * inst.congestion, guard=True)
    col = Coloring.compact([assign[i] for i in range(len(inst))])
    bad = verify_coloring(inst, col)
    if bad is not None:
        raise AssertionError(f"small-demand pool produced an infeasible class: {bad}")
    return col


def round_ufp_tree(inst):
    """Under NBA: at most 64 times the optimum number of colors."""
    _require_tree(inst)
    require_nba(inst)
    large = [i for i in range(len(inst)) if is_large(inst, i, DELTA)]
    small = [i for i in range(len(inst)) if not is_large(inst, i, DELTA)]
    parts = []
    if large:
        parts.append((large, color_large_tree(inst.subset(large))))
    if small:
        parts.append((small, color_small_tree(inst.subset(small))))
    return _merge(inst, parts)
