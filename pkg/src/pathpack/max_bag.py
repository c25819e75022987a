"""Max-UFP and Bag-UFP.

Both split demands at 1/4 of their bottleneck.  Large demands are solved
exactly (Max-UFP) or by the disjoint-interval 2-approximation (Bag-UFP);
small demands go through the LP, grid snapping and decomposition into
color classes.  The better of the two branches is returned.
"""

from fractions import Fraction
from itertools import combinations

from .errors import PreconditionError
from .lp import convex_decompose, snap_to_grid, solve_bag_lp, solve_ufp_lp
from .model import BagInstance, UfpInstance
from .round_path import DELTA, color_small_arbitrary, is_large, require_nba

ZERO = Fraction(0)
CROSSING_BOUND = 24  # 2/delta * (1/delta - 1) at delta = 1/4


def _profit(inst, idx):
    return inst.total_profit(idx)


def _map(indices, sub_result):
    return sorted(indices[j] for j in sub_result)


def max_ufp_large(inst):
    """Exact optimum for 1/4-large demands on a path.

    Sweeps the edges left to right keeping, for every set of chosen requests
    that cross the current edge, the best profit so far.  A feasible set of
    large demands puts at most 24 requests on any edge.
    """
    if inst.is_tree:
        raise PreconditionError("max_ufp_large works on paths")
    if not all(is_large(inst, i) for i in range(len(inst))):
        raise PreconditionError("max_ufp_large needs 1/4-large demands only")
    if not inst.requests:
        return []
    reqs = inst.requests
    starts = {}
    for i, r in enumerate(reqs):
        starts.setdefault(r.s, []).append(i)
    states = {frozenset(): (ZERO, ())}
    for e in inst.network.edges:
        cap = inst.capacity(e)
        new = starts.get(e, [])
        nxt = {}
        for active, (val, picked) in states.items():
            alive = frozenset(i for i in active if reqs[i].t > e)
            base = sum((reqs[i].d for i in alive), ZERO)
            for k in range(len(new) + 1):
                for add in combinations(new, k):
                    load = base + sum((reqs[i].d for i in add), ZERO)
                    if load > cap:
                        continue
                    state = alive | frozenset(add)
                    if len(state) > CROSSING_BOUND:
                        raise AssertionError("more than 24 large demands fit on one edge")
                    cand = val + sum((reqs[i].w for i in add), ZERO)
                    if state not in nxt or cand > nxt[state][0]:
                        nxt[state] = (cand, picked + add)
        states = nxt
    val, picked = max(states.values(), key=lambda vp: (vp[0], [-i for i in sorted(vp[1])]))
    return sorted(picked)


def small_branch(inst):
    """LP, snap to the 1/n grid, decompose; returns (subset, lp, snapped, decomposition)."""
    lp = solve_ufp_lp(inst)
    if not inst.requests:
        return [], lp, lp, None
    snapped = snap_to_grid(lp, len(inst))
    dec = convex_decompose(inst, snapped)
    return dec.best(), lp, snapped, dec


def max_ufp_small(inst):
    """Profit at least LP/16 for 1/4-small demands on a path."""
    if inst.is_tree:
        raise PreconditionError("max_ufp_small works on paths; use max_ufp_tree")
    require_nba(inst)
    if any(is_large(inst, i) for i in range(len(inst))):
        raise PreconditionError("max_ufp_small needs 1/4-small demands only")
    return small_branch(inst)[0]


def max_ufp_path(inst):
    """At least OPT/17 under NBA; ties go to the exact large branch."""
    if inst.is_tree:
        raise PreconditionError("max_ufp_path works on paths")
    require_nba(inst)
    large = [i for i in range(len(inst)) if is_large(inst, i)]
    small = [i for i in range(len(inst)) if not is_large(inst, i)]
    a = _map(large, max_ufp_large(inst.subset(large))) if large else []
    b = _map(small, max_ufp_small(inst.subset(small))) if small else []
    return a if _profit(inst, a) >= _profit(inst, b) else b


def max_ufp_tree(inst):
    """At least OPT/64 on a tree under NBA."""
    if not inst.is_tree:
        raise PreconditionError("max_ufp_tree works on trees")
    require_nba(inst)
    return small_branch(inst)[0]


# --- bags ----------------------------------------------------------------


def _overlap(a, b):
    return max(a.s, b.s) < min(a.t, b.t)


def bag_disjoint_select(bags):
    """At most one request per bag, pairwise edge-disjoint routes, profit at
    least half of the best such choice.

    Evaluation: requests by right endpoint; each gets the value of its
    profit minus the values of stacked requests it conflicts with (shared
    edge or shared bag) and is stacked when that value is positive.
    Selection: unstack, keeping every request that conflicts with nothing
    kept so far.
    """
    if bags.network.is_tree:
        raise PreconditionError("bag selection works on paths")
    flat = bags.flat
    order = sorted(range(len(flat)), key=lambda i: (flat.requests[i].t, flat.requests[i].s, i))

    def conflict(i, j):
        return bags.owner[i] == bags.owner[j] or _overlap(flat.requests[i], flat.requests[j])

    stack = []
    for i in order:
        v = bags.profits[bags.owner[i]] - sum((vk for k, vk in stack if conflict(i, k)), ZERO)
        if v > 0:
            stack.append((i, v))
    kept = []
    for i, _ in reversed(stack):
        if not any(conflict(i, k) for k in kept):
            kept.append(i)
    return bags.choice_from_flat(kept)


def _restrict(bags, keep):
    """Sub-instance with only the flat requests in ``keep``; returns it with
    (bag map, request map) back to the original numbering."""
    groups = {}
    for i in sorted(keep):
        groups.setdefault(bags.owner[i], []).append(i)
    bag_ids = sorted(groups)
    sub = BagInstance(
        bags.network,
        [[bags.flat.requests[i] for i in groups[j]] for j in bag_ids],
        [bags.profits[j] for j in bag_ids],
    )
    back = {}
    for jj, j in enumerate(bag_ids):
        for rr, i in enumerate(groups[j]):
            back[jj, rr] = (j, bags.local[i])
    return sub, back


def _large_flags(bags):
    return [is_large(bags.flat, i) for i in range(len(bags.flat))]


def bag_ufp_large(bags):
    """At least OPT/48 when every request is 1/4-large."""
    require_nba(bags.flat)
    if not all(_large_flags(bags)):
        raise PreconditionError("bag_ufp_large needs 1/4-large requests only")
    return bag_disjoint_select(bags)


def bag_small_branch(bags):
    """Bag LP, snap, copies spread over 16r + K solutions that never hold two
    requests of one bag.  Returns (choice, lp, snapped, solutions)."""
    lp = solve_bag_lp(bags)
    flat = bags.flat
    if not flat.requests:
        return [], lp, lp, []
    K = len(flat)
    snapped = snap_to_grid(lp, K, owner=bags.owner)
    beta = snapped.alpha
    origin = [i for i in range(len(flat)) for _ in range(beta[i])]
    if not origin:
        return [], lp, snapped, []
    copies = UfpInstance(flat.network, [flat.requests[i] for i in origin])
    pool = 16 * copies.congestion + K
    col = color_small_arbitrary(
        copies, pool_size=pool, group=[bags.owner[i] for i in origin], hard_group=True
    )
    sols = [[] for _ in range(col.num_colors)]
    for j, q in enumerate(col.colors):
        sols[q - 1].append(origin[j])
    choices = [bags.choice_from_flat(s) for s in sols]
    best = max(range(len(choices)), key=lambda q: (bags.profit(choices[q]), -q))
    return choices[best], lp, snapped, choices


def bag_ufp_small(bags):
    """At least OPT/17 when every request is 1/4-small."""
    require_nba(bags.flat)
    if any(_large_flags(bags)):
        raise PreconditionError("bag_ufp_small needs 1/4-small requests only")
    return bag_small_branch(bags)[0]


def bag_ufp_path(bags):
    """At least OPT/65 under NBA; ties go to the large branch."""
    if bags.network.is_tree:
        raise PreconditionError("bag_ufp_path works on paths")
    require_nba(bags.flat)
    flags = _large_flags(bags)
    large = [i for i, f in enumerate(flags) if f]
    small = [i for i, f in enumerate(flags) if not f]
    a = b = []
    if large:
        sub, back = _restrict(bags, large)
        a = sorted(back[p] for p in bag_ufp_large(sub))
    if small:
        sub, back = _restrict(bags, small)
        b = sorted(back[p] for p in bag_ufp_small(sub))
    return a if bags.profit(a) >= bags.profit(b) else b
