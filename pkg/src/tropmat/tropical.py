"""Homomorphisms into the tropical hyperfield, in log coordinates.

A point of Hom(P, T) is recorded by the log-values x in Q^n of the generator
images (max convention: a sum is null iff its maximum is attained at least
twice).  The solution set is covered by one polyhedral cell per choice of a
maximizing pair in every relation.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Sequence

from .errors import DomainError, ResourceLimitError
from .homs import PastureMap
from .pasture import PasturePresentation
from .polyhedra import PolyhedralComplex, Polyhedron

DEFAULT_CAP = 10**6

LinearForm = tuple[Fraction, ...]


def max_attained_twice(values: Sequence) -> bool:
    if not values:
        return True
    top = max(values)
    return sum(1 for v in values if v == top) >= 2


def pair_choices(n: int, forms: Sequence[Sequence]) -> list[Polyhedron]:
    """Cells {f_j = f_k >= f_i for all i}, one per unordered pair (j, k).

    A single form yields no cell; no forms yields the whole space.
    """
    if not forms:
        return [Polyhedron.build(n)]
    cells = []
    for j, k in combinations(range(len(forms)), 2):
        fj, fk = forms[j], forms[k]
        eq = [([a - b for a, b in zip(fj, fk)], 0)]
        ineqs = [([a - b for a, b in zip(fj, fi)], 0) for i, fi in enumerate(forms) if i not in (j, k)]
        cell = Polyhedron.build(n, eq, ineqs)
        if cell not in cells:
            cells.append(cell)
    return cells


def prevariety(n: int, equalities, relation_forms: Sequence[Sequence[Sequence]],
               cap: int = DEFAULT_CAP) -> PolyhedralComplex:
    """Intersect one pair-choice cell per relation, over all choices."""
    options = [pair_choices(n, forms) for forms in relation_forms]
    total = prod(len(o) for o in options)
    if total > cap:
        raise ResourceLimitError(
            f"{total} candidate cells exceed the configured cap of {cap}", cap)
    partial = [Polyhedron.build(n, equalities)]
    for opts in options:
        nxt = {}
        for cell in partial:
            for opt in opts:
                c = cell.intersect(opt)
                sig = c.signature()
                if sig is not None and sig not in nxt:
                    nxt[sig] = c.canonical
        partial = list(nxt.values())
    return PolyhedralComplex.from_cells(n, partial)


def lattice_equalities(P: PasturePresentation):
    # the sign coordinate is dropped: -1 maps to 1 in T
    return [(row[:-1], 0) for row in P.lattice_basis if any(row[:-1])]


def relation_forms(P: PasturePresentation):
    return [[t.exponents for t in rel.terms] for rel in P.relations]


def trop_complex(P: PasturePresentation, cap: int = DEFAULT_CAP) -> PolyhedralComplex:
    n = P.ngens
    forms = relation_forms(P)
    if any(len(f) == 1 for f in forms):
        return PolyhedralComplex(n, ())
    return prevariety(n, lattice_equalities(P), forms, cap)


def _dot(a, x):
    return sum((Fraction(p) * q for p, q in zip(a, x)), Fraction(0))


def trop_contains(P: PasturePresentation, x: Sequence) -> bool:
    if len(x) != P.ngens:
        raise ValueError(f"point has {len(x)} coordinates, {P.name} has {P.ngens} generators")
    x = [Fraction(v) for v in x]
    if any(_dot(a, x) != 0 for a, _ in lattice_equalities(P)):
        return False
    return all(max_attained_twice([_dot(f, x) for f in forms]) for forms in relation_forms(P))


def trop_fiber_dim(f: PastureMap, x: Sequence, require_member: bool = True,
                   cap: int = DEFAULT_CAP) -> int:
    """Dimension of the tropical fiber of f over x; -1 when empty.

    With ``require_member=False`` a point outside Hom(source, T) is allowed and
    simply has an empty fiber.
    """
    f.validate()
    if len(x) != f.source.ngens:
        raise ValueError(f"point has {len(x)} coordinates, {f.source.name} has {f.source.ngens} generators")
    if require_member and not trop_contains(f.source, x):
        raise DomainError(f"point ({','.join(map(str, x))}) is not in Hom({f.source.name}, T)")
    n = f.target.ngens
    fix = Polyhedron.build(n, [(img.exponents, Fraction(xi)) for img, xi in zip(f.images, x)])
    return max((cell.intersect(fix).dim for cell in trop_complex(f.target, cap).cells), default=-1)
