"""LP relaxations for Max-UFP and Bag-UFP, grid snapping, and the rounding
that turns a snapped fractional solution into a family of integral ones.

Rounding works by copying request i exactly K*x_i times and coloring the
copies; every color class is then a feasible subset and some class carries
at least a 1/(number of classes) share of the fractional profit.
"""

from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
import math

from .errors import PreconditionError
from .model import UfpInstance
from . import simplex

ZERO = Fraction(0)


@dataclass(frozen=True)
class FractionalSolution:
    x: tuple  # one entry per request (per flat request for bags)
    value: Fraction
    weights: tuple  # objective coefficient of each x entry
    y: tuple = None  # bags only
    bag_profits: tuple = None
    K: int = None  # common denominator once snapped
    certified: bool = False

    @property
    def alpha(self):
        """Integer multiplicities K * x_i (snapped solutions only)."""
        if self.K is None:
            raise ValueError("solution is not snapped")
        return tuple(int(v * self.K) for v in self.x)

    @property
    def beta(self):
        return self.alpha

    @property
    def bag_alpha(self):
        if self.K is None or self.y is None:
            raise ValueError("not a snapped bag solution")
        return tuple(int(v * self.K) for v in self.y)


def _edge_rows(inst):
    rows, rhs = [], []
    for e in inst.network.edges:
        row = [r.d if e in route else 0 for r, route in zip(inst.requests, inst.routes)]
        if any(row):
            rows.append(row)
            rhs.append(inst.capacity(e))
    return rows, rhs


def solve_ufp_lp(inst):
    """max sum w_i x_i  s.t.  sum_{i on e} d_i x_i <= c_e,  0 <= x_i <= 1."""
    n = len(inst)
    if n == 0:
        return FractionalSolution((), ZERO, (), certified=True)
    A, b = _edge_rows(inst)
    for i in range(n):
        A.append([1 if j == i else 0 for j in range(n)])
        b.append(1)
    c = [r.w for r in inst.requests]
    res = simplex.solve(c, A, b)
    ok = simplex.certify(c, A, b, res)
    return FractionalSolution(tuple(res.x), res.value, tuple(c), certified=ok)


def solve_bag_lp(bags):
    """max sum p_j y_j  s.t. edge capacities and y_j = sum_{i in bag j} x_i <= 1."""
    flat = bags.flat
    n, m = len(flat), len(bags.bags)
    if m == 0:
        return FractionalSolution((), ZERO, (), y=(), bag_profits=(), certified=True)
    A, b = [], []
    for row, cap in zip(*_edge_rows(flat)):
        A.append(list(row) + [0] * m)
        b.append(cap)
    for j in range(m):
        mine = [1 if bags.owner[i] == j else 0 for i in range(n)]
        unit = [1 if jj == j else 0 for jj in range(m)]
        A.append(mine + [-v for v in unit])
        b.append(0)
        # without y_j <= sum x the optimum would be y = 1, x = 0
        A.append([-v for v in mine] + unit)
        b.append(0)
        A.append([0] * n + [1 if jj == j else 0 for jj in range(m)])
        b.append(1)
    c = [0] * n + list(bags.profits)
    res = simplex.solve(c, A, b)
    ok = simplex.certify(c, A, b, res)
    return FractionalSolution(
        tuple(res.x[:n]), res.value, (ZERO,) * n,
        y=tuple(res.x[n:]), bag_profits=tuple(bags.profits), certified=ok,
    )


def snap_to_grid(sol, k, owner=None):
    """Round every entry down to a multiple of 1/k (entries below 1/k become 0).

    For bag solutions pass ``owner`` (bag of each flat request); y is snapped
    too and then lowered to the snapped sum of its x, so every bag copy count
    is matched by request copies.
    """
    if not isinstance(k, int) or k <= 0:
        raise ValueError("grid size k must be a positive integer")
    x = tuple(Fraction(math.floor(v * k), k) for v in sol.x)
    if sol.y is None:
        value = sum((w * v for w, v in zip(sol.weights, x)), ZERO)
        return replace(sol, x=x, value=value, K=k, certified=False)
    if owner is None:
        raise ValueError("bag solutions need the owner map")
    sums = Counter()
    for i, v in enumerate(x):
        sums[owner[i]] += v
    y = tuple(min(Fraction(math.floor(v * k), k), sums[j]) for j, v in enumerate(sol.y))
    value = sum((p * v for p, v in zip(sol.bag_profits, y)), ZERO)
    return replace(sol, x=x, y=y, value=value, K=k, certified=False)


def is_feasible(inst, sol):
    if any(v < 0 or v > 1 for v in sol.x):
        return False
    for e in inst.network.edges:
        load = sum((r.d * v for r, route, v in zip(inst.requests, inst.routes, sol.x) if e in route), ZERO)
        if load > inst.capacity(e):
            return False
    return True


@dataclass
class Decomposition:
    """classes[q]: distinct requests of class q; copies[q]: the copies that
    landed there before duplicates were collapsed."""

    classes: list
    copies: list
    alpha: tuple
    profits: list = field(default_factory=list)

    def multiplicity(self):
        cnt = Counter()
        for cl in self.copies:
            cnt.update(cl)
        return cnt

    def best(self):
        if not self.classes:
            return []
        q = max(range(len(self.classes)), key=lambda j: (self.profits[j], -j))
        return list(self.classes[q])


def convex_decompose(inst, sol):
    """Copy request i alpha_i = K x_i times and color the copies.

    On paths the copies must all be 1/4-small and are colored with the
    small-demand pool (at most 16K classes); on trees the full tree
    pipeline is used (at most 64K classes).
    """
    from .round_path import color_small_arbitrary, is_large, require_nba
    from .round_tree import round_ufp_tree

    if sol.K is None:
        raise ValueError("decompose a snapped solution")
    require_nba(inst)
    alpha = sol.alpha
    origin = [i for i in range(len(inst)) for _ in range(alpha[i])]
    copies = UfpInstance(inst.network, [inst.requests[i] for i in origin])
    if not origin:
        return Decomposition([], [], alpha, [])
    if inst.is_tree:
        col = round_ufp_tree(copies)
    else:
        if any(is_large(inst, i) for i in set(origin)):
            raise PreconditionError("path decomposition needs 1/4-small demands")
        # keep copies of one request apart whenever the pool allows it
        col = color_small_arbitrary(copies, group=origin, hard_group=False)
    raw = [[] for _ in range(col.num_colors)]
    for j, q in enumerate(col.colors):
        raw[q - 1].append(origin[j])
    classes = [sorted(set(cl)) for cl in raw]
    profits = [inst.total_profit(cl) for cl in classes]
    return Decomposition(classes, [sorted(cl) for cl in raw], alpha, profits)
