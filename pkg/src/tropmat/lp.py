"""Exact rational linear programming.

Two-phase tableau simplex over ``Fraction`` with Bland's rule, so it always
terminates.  Problems are stated with free variables::

    maximize c.x  subject to  a.x >= b  (ineqs),  a.x = b  (eqs)

Equalities are eliminated first by an exact affine parametrization, which
keeps the tableau small for the cone-heavy workloads in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import nullspace, solve

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

Constraint = tuple[Sequence, object]


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _pivot(T, basis, r, c):
    piv = T[r][c]
    if piv != 1:
        T[r] = [v / piv for v in T[r]]
    row = T[r]
    for i, other in enumerate(T):
        if i != r and other[c] != 0:
            f = other[c]
            T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _run(T, basis, ncols):
    """Maximize the objective stored in the last row (as reduced costs).

    The last row holds ``-c`` adjusted for the basis, last column the rhs.
    Returns False if unbounded.
    """
    obj = T[-1]
    while True:
        # Bland: lowest-index column with negative entry in the objective row
        c = next((j for j in range(ncols) if obj[j] < 0), None)
        if c is None:
            return True
        best = None
        for i in range(len(T) - 1):
            a = T[i][c]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], c)
        obj = T[-1]


def _standard_max(G, h, g):
    """max g.y  s.t.  G y >= h, y free.  Returns LPResult in y-space."""
    m, k = len(G), len(g)
    # columns: u (k), v (k), slack s (m), artificials (as needed)
    rows, rhs, basis = [], [], []
    art_rows = []
    for i in range(m):
        row = list(G[i]) + [-a for a in G[i]] + [Fraction(-int(j == i)) for j in range(m)]
        b = Fraction(h[i])
        if b < 0:
            row = [-v for v in row]
            b = -b
            rows.append(row)
            rhs.append(b)
            basis.append(2 * k + i)
        else:
            rows.append(row)
            rhs.append(b)
            basis.append(None)
            art_rows.append(i)
    nreal = 2 * k + m
    nart = len(art_rows)
    ncols = nreal + nart
    T = []
    for i in range(m):
        ext = [Fraction(0)] * nart
        if basis[i] is None:
            a = art_rows.index(i)
            ext[a] = Fraction(1)
            basis[i] = nreal + a
        T.append(rows[i] + ext + [rhs[i]])
    if nart:
        # phase 1: maximize -sum(artificials); objective row = sum of artificial rows, negated
        obj = [Fraction(0)] * (ncols + 1)
        for i in range(m):
            if basis[i] >= nreal:
                obj = [o - v for o, v in zip(obj, T[i])]
        for a in range(nart):
            obj[nreal + a] = Fraction(0)
        T.append(obj)
        _run(T, basis, ncols)
        if T[-1][-1] != 0:
            return LPResult(INFEASIBLE)
        T.pop()
        # drive remaining artificials out of the basis
        i = 0
        while i < len(T):
            if basis[i] >= nreal:
                c = next((j for j in range(nreal) if T[i][j] != 0), None)
                if c is None:
                    del T[i]
                    del basis[i]
                    continue
                _pivot(T, basis, i, c)
            i += 1
        T = [row[:nreal] + [row[-1]] for row in T]
    ncols = nreal
    cost = list(g) + [-a for a in g] + [Fraction(0)] * m
    obj = [-Fraction(v) for v in cost] + [Fraction(0)]
    for i, bi in enumerate(basis):
        if cost[bi] != 0:
            f = cost[bi]
            obj = [o + f * v for o, v in zip(obj, T[i])]
    T.append(obj)
    if not _run(T, basis, ncols):
        return LPResult(UNBOUNDED)
    z = [Fraction(0)] * ncols
    for i, bi in enumerate(basis):
        z[bi] = T[i][-1]
    y = tuple(z[j] - z[k + j] for j in range(k))
    return LPResult(OPTIMAL, T[-1][-1], y)


def maximize(c: Sequence, ineqs: Sequence[Constraint] = (), eqs: Sequence[Constraint] = (),
             dim: int | None = None) -> LPResult:
    """Maximize ``c.x`` over the polyhedron; see module docstring for the form."""
    n = len(c) if dim is None else dim
    c = [Fraction(v) for v in c]
    if eqs:
        A = [list(a) for a, _ in eqs]
        x0 = solve(A, [b for _, b in eqs])
        if x0 is None:
            return LPResult(INFEASIBLE)
        N = nullspace(A, n)
    else:
        x0 = [Fraction(0)] * n
        N = nullspace([], n)
    k = len(N)
    # x = x0 + sum_j y_j N[j]
    G, h = [], []
    for a, b in ineqs:
        a = [Fraction(v) for v in a]
        G.append([_dot(a, col) for col in N])
        h.append(Fraction(b) - _dot(a, x0))
    g = [_dot(c, col) for col in N]
    base = _dot(c, x0)
    # rows that vanish in y-space are constants: check and drop them
    keep = []
    for row, hi in zip(G, h):
        if any(row):
            keep.append((row, hi))
        elif hi > 0:
            return LPResult(INFEASIBLE)
    if not keep:
        if any(g):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, base, tuple(x0))
    res = _standard_max([r for r, _ in keep], [hi for _, hi in keep], g)
    if res.status != OPTIMAL:
        return res
    x = [x0[i] + sum((yj * col[i] for yj, col in zip(res.x, N)), Fraction(0)) for i in range(n)]
    return LPResult(OPTIMAL, base + res.value, tuple(x))


def minimize(c: Sequence, ineqs: Sequence[Constraint] = (), eqs: Sequence[Constraint] = (),
             dim: int | None = None) -> LPResult:
    res = maximize([-Fraction(v) for v in c], ineqs, eqs, dim)
    if res.status == OPTIMAL:
        return LPResult(OPTIMAL, -res.value, res.x)
    return res


def feasible_point(ineqs: Sequence[Constraint], eqs: Sequence[Constraint], dim: int):
    """Some point of the polyhedron, or None when it is empty."""
    res = maximize([0] * dim, ineqs, eqs, dim)
    return None if res.status == INFEASIBLE else res.x
