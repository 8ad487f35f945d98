"""H-described rational polyhedra and finite complexes of them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import nullspace, primitive_integer_row, rank, rref, solve
from .lp import OPTIMAL, feasible_point, maximize, minimize

Row = tuple[tuple[Fraction, ...], Fraction]


def format_rational(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _dot(a, x):
    return sum((Fraction(p) * q for p, q in zip(a, x)), Fraction(0))


def _normalize(a: Sequence, b, equality: bool) -> Row | None:
    """Primitive integer form of a.x (=|>=) b; None for a trivially true row."""
    ints = primitive_integer_row(list(a) + [b])
    coeffs, rhs = ints[:-1], ints[-1]
    if not any(coeffs):
        if (equality and rhs == 0) or (not equality and rhs <= 0):
            return None
        return tuple(Fraction(0) for _ in coeffs), Fraction(1)  # 0 = 1 / 0 >= 1
    if equality and next(v for v in coeffs if v) < 0:
        coeffs, rhs = [-v for v in coeffs], -rhs
    return tuple(Fraction(v) for v in coeffs), Fraction(rhs)


@dataclass(frozen=True)
class Polyhedron:
    """{x in Q^n : a.x = b for equalities, a.x >= b for inequalities}."""

    ambient_dim: int
    equalities: tuple[Row, ...] = ()
    inequalities: tuple[Row, ...] = ()

    @classmethod
    def build(cls, n: int, equalities: Iterable = (), inequalities: Iterable = ()) -> "Polyhedron":
        eqs, ineqs = [], []
        for a, b in equalities:
            if len(a) != n:
                raise ValueError(f"row length {len(a)} != ambient dimension {n}")
            row = _normalize(a, b, True)
            if row is not None and row not in eqs:
                eqs.append(row)
        for a, b in inequalities:
            if len(a) != n:
                raise ValueError(f"row length {len(a)} != ambient dimension {n}")
            row = _normalize(a, b, False)
            if row is not None and row not in ineqs:
                ineqs.append(row)
        return cls(n, tuple(eqs), tuple(ineqs))

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        return Polyhedron.build(self.ambient_dim, self.equalities + other.equalities,
                                self.inequalities + other.inequalities)

    def contains(self, x: Sequence) -> bool:
        return (all(_dot(a, x) == b for a, b in self.equalities)
                and all(_dot(a, x) >= b for a, b in self.inequalities))

    @cached_property
    def _hull(self):
        """(equalities of the affine hull, remaining strict inequalities), or None if empty."""
        n = self.ambient_dim
        eqs = list(self.equalities)
        ineqs = list(self.inequalities)
        pt = feasible_point(ineqs, eqs, n)
        if pt is None:
            return None
        open_rows = [r for r in ineqs if _dot(r[0], pt) > r[1]]
        pending = [r for r in ineqs if _dot(r[0], pt) == r[1]]
        implicit = []
        while pending:
            a, b = pending.pop(0)
            res = maximize(a, ineqs, eqs, n)
            if res.status == OPTIMAL and res.value == b:
                implicit.append((a, b))
                continue
            open_rows.append((a, b))
            if res.x is not None:
                # any other pending row that is slack here is not implicit either
                still = []
                for r in pending:
                    (open_rows if _dot(r[0], res.x) > r[1] else still).append(r)
                pending = still
        return eqs + implicit, open_rows

    @cached_property
    def dim(self) -> int:
        """Dimension of the affine hull; -1 when empty."""
        hull = self._hull
        if hull is None:
            return -1
        return self.ambient_dim - rank([a for a, _ in hull[0]], self.ambient_dim)

    def is_empty(self) -> bool:
        return self._hull is None

    def affine_hull(self):
        """(point, direction basis) of the affine hull, or None if empty."""
        hull = self._hull
        if hull is None:
            return None
        eqs = hull[0]
        n = self.ambient_dim
        if not eqs:
            return tuple(Fraction(0) for _ in range(n)), nullspace([], n)
        A = [list(a) for a, _ in eqs]
        pt = solve(A, [b for _, b in eqs])
        return tuple(pt), nullspace(A, n)

    @cached_property
    def canonical(self) -> "Polyhedron | None":
        """Unique H-description: RREF affine hull plus irredundant facet rows.

        Facet rows are reduced modulo the pivot columns of the hull, which makes
        equal sets produce identical descriptions.
        """
        hull = self._hull
        if hull is None:
            return None
        n = self.ambient_dim
        eqs, open_rows = hull
        aug = [list(a) + [b] for a, b in eqs]
        red, pivots = rref(aug, n + 1) if aug else ([], [])
        eq_rows = []
        for row in red:
            r = _normalize(row[:n], row[n], True)
            if r is not None:
                eq_rows.append(r)
        reduced = []
        for a, b in open_rows:
            v = list(a) + [b]
            for prow, p in zip(red, pivots):
                if v[p]:
                    f = v[p]
                    v = [x - f * y for x, y in zip(v, prow)]
            r = _normalize(v[:n], v[n], False)
            if r is not None and r not in reduced:
                reduced.append(r)
        reduced.sort()
        kept = list(reduced)
        for r in reduced:
            others = [o for o in kept if o != r]
            res = minimize(r[0], others, eq_rows, n)
            if res.status == OPTIMAL and res.value >= r[1]:
                kept = others
        return Polyhedron(n, tuple(sorted(eq_rows)), tuple(sorted(kept)))

    def signature(self):
        c = self.canonical
        return None if c is None else (c.equalities, c.inequalities)

    def vertices(self) -> list[tuple[Fraction, ...]]:
        """Vertices by brute force over tight subsystems (fine for small cells)."""
        c = self.canonical
        if c is None:
            return []
        n = self.ambient_dim
        eqs = [list(a) for a, _ in c.equalities]
        need = n - rank(eqs, n) if eqs else n
        found = []
        for combo in combinations(c.inequalities, need):
            A = eqs + [list(a) for a, _ in combo]
            if rank(A, n) < n:
                continue
            x = solve(A, [b for _, b in c.equalities] + [b for _, b in combo])
            if x is not None and c.contains(x) and tuple(x) not in found:
                found.append(tuple(x))
        return sorted(found)

    def report_rows(self) -> list[str]:
        lines = []
        for a, b in self.equalities:
            lines.append("  eq " + " ".join(format_rational(v) for v in a) + " = " + format_rational(b))
        for a, b in self.inequalities:
            lines.append("  ineq " + " ".join(format_rational(v) for v in a) + " >= " + format_rational(b))
        return lines


def polyhedron_dim(P: Polyhedron) -> int:
    return P.dim


@dataclass(frozen=True)
class PolyhedralComplex:
    """A finite cover by polyhedra, canonicalized and deduplicated.

    Cells may overlap; only dimension, membership and fiber dimension are
    read off it downstream.
    """

    ambient_dim: int
    cells: tuple[Polyhedron, ...] = field(default=())

    @classmethod
    def from_cells(cls, n: int, cells: Iterable[Polyhedron]) -> "PolyhedralComplex":
        seen = {}
        for cell in cells:
            c = cell.canonical
            if c is None:
                continue
            seen.setdefault((c.equalities, c.inequalities), c)
        ordered = tuple(seen[k] for k in sorted(seen))
        return cls(n, ordered)

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def contains(self, x: Sequence) -> bool:
        return any(c.contains(x) for c in self.cells)

    def report(self) -> str:
        lines = [f"dim {self.dim} cells {len(self.cells)}"]
        for i, c in enumerate(self.cells):
            lines.append(f"cell {i} dim {c.dim} eqs {len(c.equalities)} ineqs {len(c.inequalities)}")
            lines.extend(c.report_rows())
        return "\n".join(lines) + "\n"
