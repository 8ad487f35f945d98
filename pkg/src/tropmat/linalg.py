"""Exact linear algebra over Q and Z.

Rational routines work on lists of lists of ``Fraction``; integer routines
(Hermite and Smith normal forms) on lists of lists of ``int``.  Matrices are
small everywhere in this package, so plain Python lists are used throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Row = list[Fraction]


def as_fractions(rows: Sequence[Sequence]) -> list[Row]:
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    m = as_fractions(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Row]:
    """Basis of {x : A x = 0}."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> Row | None:
    """One solution of A x = b (free variables set to zero), or None."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [list(v)]) == rank(basis)


def primitive_integer_row(row: Sequence[Fraction]) -> list[int]:
    """Scale a rational row by a positive factor to a primitive integer row."""
    den = 1
    for v in row:
        den = den * Fraction(v).denominator // gcd(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


# ---------------------------------------------------------------- integers


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    The result is echelon with positive pivots, and every entry above a pivot
    lies in ``[0, pivot)``.  Zero rows are dropped, so the rows form a basis.
    """
    m = [list(map(int, r)) for r in rows if any(r)]
    out: list[list[int]] = []
    pivots: list[int] = []
    for c in range(ncols):
        active = [r for r in m if r[c] != 0]
        rest = [r for r in m if r[c] == 0]
        if not active:
            continue
        # Euclid on column c until a single row carries a nonzero entry.
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            head = active[0]
            nxt = []
            for r in active[1:]:
                q = r[c] // head[c]
                r = [a - q * b for a, b in zip(r, head)]
                if r[c] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = [head] + nxt
        head = active[0]
        if head[c] < 0:
            head = [-v for v in head]
        out.append(head)
        pivots.append(c)
        m = rest
    for i, (row, c) in enumerate(zip(out, pivots)):
        for j in range(i):
            q = out[j][c] // row[c]
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], row)]
    return out


def reduce_mod_hnf(hnf: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    """Canonical coset representative of ``v`` modulo the lattice with basis ``hnf``."""
    v = list(v)
    for row in hnf:
        c = next(i for i, a in enumerate(row) if a)
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def smith_invariants(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of the integer matrix ``rows``."""
    m = [list(map(int, r)) for r in rows if any(r)]
    diag: list[int] = []
    while m:
        _, i0, j0 = min((abs(v), i, j) for i, r in enumerate(m) for j, v in enumerate(r) if v)
        while True:
            m[0], m[i0] = m[i0], m[0]
            for r in m:
                r[0], r[j0] = r[j0], r[0]
            p = m[0][0]
            for i in range(1, len(m)):
                q = m[i][0] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[0])]
            for j in range(1, len(m[0])):
                q = m[0][j] // p
                if q:
                    for r in m:
                        r[j] -= q * r[0]
            border = [(abs(m[i][0]), i, 0) for i in range(1, len(m)) if m[i][0]]
            border += [(abs(m[0][j]), 0, j) for j in range(1, len(m[0])) if m[0][j]]
            if border:
                _, i0, j0 = min(border)
                continue
            bad = next((i for i in range(1, len(m)) for j in range(1, len(m[0]))
                        if m[i][j] % p), None)
            if bad is None:
                break
            # fold an offending row into row 0 so the gcd can shrink further
            m[0] = [a + b for a, b in zip(m[0], m[bad])]
            i0, j0 = 0, 0
        diag.append(abs(m[0][0]))
        m = [r[1:] for r in m[1:]]
        m = [r for r in m if any(r)]
    return diag
