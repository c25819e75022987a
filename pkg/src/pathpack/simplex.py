"""Exact two-phase primal simplex over the rationals.

Solves ``max c.x  s.t.  A x <= b, x >= 0``.  Rows with a negative right-hand
side get an artificial variable and a phase-one pass.  Bland's rule is used
for both entering and leaving choices, so degenerate problems terminate.
"""

from dataclasses import dataclass
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class Unbounded(ArithmeticError):
    pass


class Infeasible(ArithmeticError):
    pass


@dataclass
class LpResult:
    x: tuple
    value: Fraction
    duals: tuple  # one nonnegative multiplier per row of A


def solve(c, A, b):
    m, n = len(A), len(c)
    c = [Fraction(v) for v in c]
    b = [Fraction(v) for v in b]
    neg = [i for i in range(m) if b[i] < 0]
    art = {i: n + m + k for k, i in enumerate(neg)}
    width = n + m + len(neg)

    T = []
    basis = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]] + [ZERO] * (m + len(neg)) + [b[i]]
        row[n + i] = ONE
        if i in art:
            row = [-v for v in row]
            row[art[i]] = ONE
            basis.append(art[i])
        else:
            basis.append(n + i)
        T.append(row)
    allowed = [True] * width

    if neg:
        obj = [ZERO] * (width + 1)
        for i in neg:
            obj[art[i]] = -ONE
        for i in neg:
            obj = [a + v for a, v in zip(obj, T[i])]
        _run(T, obj, basis, allowed)
        if obj[-1] != 0:  # obj[-1] holds minus the phase-one objective
            raise Infeasible("constraints have no nonnegative solution")
        for j in art.values():
            allowed[j] = False
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(T):
            if not allowed[basis[i]]:
                k = next((j for j in range(width) if allowed[j] and T[i][j] != 0), None)
                if k is None:
                    del T[i]
                    del basis[i]
                    continue
                _pivot(T, obj, i, k)
                basis[i] = k
            i += 1

    obj = c + [ZERO] * (width - n) + [ZERO]
    for i, j in enumerate(basis):
        if obj[j]:
            f = obj[j]
            obj = [a - f * v for a, v in zip(obj, T[i])]
    _run(T, obj, basis, allowed)

    x = [ZERO] * width
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), ZERO)
    # the multiplier of row i is minus the reduced cost of its slack column
    duals = tuple(-obj[n + i] for i in range(m))
    return LpResult(tuple(x[:n]), value, duals)


def _run(T, obj, basis, allowed):
    width = len(obj) - 1
    while True:
        enter = next((j for j in range(width) if allowed[j] and obj[j] > 0), None)
        if enter is None:
            return
        leave, best = None, None
        for i, row in enumerate(T):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise Unbounded("objective is unbounded")
        _pivot(T, obj, leave, enter)
        basis[leave] = enter


def _pivot(T, obj, r, k):
    prow = T[r]
    p = prow[k]
    if p != 1:
        T[r] = prow = [v / p for v in prow]
    for i, row in enumerate(T):
        if i != r:
            f = row[k]
            if f:
                T[i] = [a - f * v for a, v in zip(row, prow)]
    f = obj[k]
    if f:
        obj[:] = [a - f * v for a, v in zip(obj, prow)]


def certify(c, A, b, result):
    """True when x is primal feasible, the duals are dual feasible and both
    objectives agree, which proves x optimal."""
    x, y = result.x, result.duals
    if any(v < 0 for v in x) or any(v < 0 for v in y):
        return False
    for row, bi in zip(A, b):
        if sum((Fraction(a) * xj for a, xj in zip(row, x)), ZERO) > bi:
            return False
    for j, cj in enumerate(c):
        if sum((Fraction(A[i][j]) * y[i] for i in range(len(A))), ZERO) < cj:
            return False
    primal = sum((Fraction(cj) * xj for cj, xj in zip(c, x)), ZERO)
    dual = sum((Fraction(bi) * yi for bi, yi in zip(b, y)), ZERO)
    return primal == dual == result.value
