"""Valuated matroids, regular subdivisions of basis polytopes, Dressians, rigidity.

Values are log-scale and follow the max convention of the tropical
hyperfield.  Under that convention the matroidal subdivision induced by a
valuation is cut out by the faces of the lifted point set seen from above,
so ``regular_subdivision`` lifts e_I to height -value(I) and keeps the lower
faces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError, ResourceLimitError
from .linalg import in_span, rank, rref, solve
from .matroid import Matroid, basis_polytope_vertices, cell_is_matroid, format_basis, parse_basis
from .polyhedra import PolyhedralComplex, format_rational
from .tropical import DEFAULT_CAP, max_attained_twice, prevariety

LOOP = math.inf  # witness coordinate of a loop; never used in arithmetic


@dataclass(frozen=True)
class PlueckerVector:
    matroid: Matroid
    values: Mapping[frozenset, Fraction]

    def __post_init__(self):
        vals = {frozenset(k): Fraction(v) for k, v in self.values.items()}
        if set(vals) != self.matroid.basis_set:
            extra = set(vals) - self.matroid.basis_set
            missing = self.matroid.basis_set - set(vals)
            n = self.matroid.ground_size
            parts = []
            if extra:
                parts.append("non-bases " + " ".join(format_basis(b, n) for b in sorted(extra, key=sorted)))
            if missing:
                parts.append("no value for " + " ".join(format_basis(b, n) for b in sorted(missing, key=sorted)))
            raise DomainError("support must equal the bases: " + "; ".join(parts))
        object.__setattr__(self, "values", vals)

    def __getitem__(self, basis: Iterable[int]) -> Fraction:
        return self.values[frozenset(basis)]

    def vector(self) -> list[Fraction]:
        return [self.values[b] for b in self.matroid.bases]

    @classmethod
    def from_vector(cls, M: Matroid, vec) -> "PlueckerVector":
        return cls(M, dict(zip(M.bases, vec)))


def three_term_relations(M: Matroid) -> list[list[tuple[frozenset, frozenset]]]:
    """Surviving index pairs of each 3-term Pluecker relation with at least one survivor."""
    out = []
    r = M.rank
    if r < 2:
        return out
    bases = M.basis_set
    ground = list(M.ground)
    for S in combinations(ground, r - 2):
        S = frozenset(S)
        rest = [e for e in ground if e not in S]
        for i, j, k, l in combinations(rest, 4):
            pairs = [(S | {i, j}, S | {k, l}), (S | {i, k}, S | {j, l}), (S | {i, l}, S | {j, k})]
            alive = [p for p in pairs if p[0] in bases and p[1] in bases]
            if alive:
                out.append(alive)
    return out


def check_tropical_pluecker(D: PlueckerVector) -> bool:
    for alive in three_term_relations(D.matroid):
        if not max_attained_twice([D[a] + D[b] for a, b in alive]):
            return False
    return True


@dataclass(frozen=True)
class Subdivision:
    maximal_cells: tuple[tuple[frozenset, ...], ...]
    is_trivial: bool

    def report(self, n: int) -> str:
        lines = [f"cells {len(self.maximal_cells)} trivial {'yes' if self.is_trivial else 'no'}"]
        for cell in self.maximal_cells:
            lines.append(" ".join(format_basis(b, n) for b in cell))
        return "\n".join(lines) + "\n"


def _affine_rows(M: Matroid):
    return [list(v) + [1] for v in basis_polytope_vertices(M)]


def _candidate_simplices(rows, heights, full, batch=50_000):
    """Index sets of affinely spanning (full)-subsets whose interpolant may lie below all points.

    A float pass prunes the combinatorial search; it only ever keeps too much,
    and every survivor is re-checked exactly by the caller.
    """
    _, cols = rref(rows)
    A = np.array([[float(r[c]) for c in cols] for r in rows])
    H = np.array([float(h) for h in heights])
    tol = 1e-7 * (1.0 + float(np.abs(H).max(initial=0.0)))
    it = combinations(range(len(rows)), full)
    while True:
        chunk = np.array(list(islice(it, batch)), dtype=np.intp).reshape(-1, full)
        if not len(chunk):
            return
        mats = A[chunk]
        # integer matrices: a nonsingular one has |det| >= 1
        keep = np.abs(np.linalg.det(mats)) > 0.5
        chunk, mats = chunk[keep], mats[keep]
        if not len(chunk):
            continue
        coef = np.linalg.solve(mats, H[chunk][..., None])[..., 0]
        below = (coef @ A.T <= H + tol).all(axis=1)
        yield from (tuple(map(int, c)) for c in chunk[below])


def regular_subdivision(D: PlueckerVector) -> Subdivision:
    """Maximal cells of the subdivision of P_M induced by D.

    Every affinely spanning subset of d+1 bases determines the affine function
    interpolating the lifted heights on it; if no other lifted point lies below
    it, the points on it form a maximal cell.  Ties are merged, giving the
    coarsest cells.
    """
    M = D.matroid
    rows = _affine_rows(M)
    heights = [-D[b] for b in M.bases]
    full = rank(rows)
    cells: list[frozenset] = []
    for idx in _candidate_simplices(rows, heights, full):
        if any(set(idx) <= c for c in cells):
            continue
        coef = solve([rows[i] for i in idx], [heights[i] for i in idx])
        phi = [sum((a * c for a, c in zip(row, coef)), Fraction(0)) for row in rows]
        if any(p > h for p, h in zip(phi, heights)):
            continue
        cells.append(frozenset(i for i, (p, h) in enumerate(zip(phi, heights)) if p == h))
    ordered = tuple(sorted((tuple(M.bases[i] for i in sorted(c)) for c in cells),
                           key=lambda c: [sorted(b) for b in c]))
    trivial = len(ordered) == 1 and len(ordered[0]) == len(M.bases)
    return Subdivision(ordered, trivial)


@dataclass(frozen=True)
class RescalingWitness:
    x: tuple  # Fraction per ground element, LOOP on loops
    c: Fraction

    def offset(self, basis: Iterable[int]) -> Fraction:
        return sum((self.x[i - 1] for i in basis), Fraction(0)) + self.c

    def format(self) -> str:
        xs = ",".join("inf" if v == LOOP else format_rational(v) for v in self.x)
        return f"x=({xs}) c={format_rational(self.c)}"


def hyperplane_fit(D: PlueckerVector) -> RescalingWitness | None:
    """Solve value(I) = sum_{i in I} x_i + c exactly over all bases."""
    M = D.matroid
    A = _affine_rows(M)
    sol = solve(A, [D[b] for b in M.bases])
    if sol is None:
        return None
    loops = set(M.loops())
    x = tuple(LOOP if i in loops else sol[i - 1] for i in M.ground)
    return RescalingWitness(x, sol[-1])


def rescale(D: PlueckerVector, x, c) -> PlueckerVector:
    """value'(I) = value(I) + sum_{i in I} x_i + c."""
    M = D.matroid
    return PlueckerVector(M, {b: D[b] + sum((Fraction(x[i - 1]) for i in b), Fraction(0)) + Fraction(c)
                              for b in M.bases})


def apply_witness(D: PlueckerVector, w: RescalingWitness) -> PlueckerVector:
    """Subtract the witness; yields all zeros when w fits D."""
    return PlueckerVector(D.matroid, {b: D[b] - w.offset(b) for b in D.matroid.bases})


def subdivision_is_matroidal(D: PlueckerVector, sub: Subdivision | None = None) -> tuple[bool, list]:
    M = D.matroid
    sub = sub or regular_subdivision(D)
    bad = []
    for cell in sub.maximal_cells:
        verts = [tuple(int(i in b) for i in M.ground) for b in cell]
        if not cell_is_matroid(M.ground_size, M.rank, verts):
            bad.append(cell)
    return not bad, bad


# ---------------------------------------------------------------- Dressians


def dressian(M: Matroid, cap: int = DEFAULT_CAP, max_bases: int = 12) -> PolyhedralComplex:
    """Cell cover of all valuations on M, in coordinates indexed by M.bases."""
    if len(M.bases) > max_bases:
        raise ResourceLimitError(
            f"matroid has {len(M.bases)} bases; the Dressian is limited to {max_bases}", max_bases)
    index = {b: i for i, b in enumerate(M.bases)}
    N = len(M.bases)
    forms = []
    for alive in three_term_relations(M):
        rel = []
        for a, b in alive:
            v = [0] * N
            v[index[a]] += 1
            v[index[b]] += 1
            rel.append(v)
        forms.append(rel)
    if any(len(f) == 1 for f in forms):
        return PolyhedralComplex(N, ())
    return prevariety(N, [], forms, cap)


def lineality_space(M: Matroid) -> tuple[list[list[Fraction]], int]:
    """Basis of {(sum_{i in I} x_i + c)_I} in Q^{#bases}, and its dimension."""
    rows = _affine_rows(M)
    cols = [list(col) for col in zip(*rows)]
    basis, _ = rref(cols, len(rows))
    return basis, len(basis)


@dataclass(frozen=True)
class RigidityVerdict:
    rigid: bool
    dressian_dim: int
    lineality_dim: int

    def report(self) -> str:
        if self.rigid:
            return f"rigid: yes (dressian dim {self.dressian_dim} = lineality dim {self.lineality_dim})\n"
        rel = ">" if self.dressian_dim > self.lineality_dim else "vs"
        return f"rigid: no (dressian dim {self.dressian_dim} {rel} lineality dim {self.lineality_dim})\n"


def rigidity(M: Matroid, cap: int = DEFAULT_CAP, max_bases: int = 12) -> RigidityVerdict:
    D = dressian(M, cap, max_bases)
    L, ldim = lineality_space(M)
    rigid = True
    for cell in D.cells:
        pt, dirs = cell.affine_hull()
        if not (in_span(L, pt) and all(in_span(L, d) for d in dirs)):
            rigid = False
            break
    return RigidityVerdict(rigid, D.dim, ldim)


def is_rigid(M: Matroid, cap: int = DEFAULT_CAP, max_bases: int = 12) -> bool:
    return rigidity(M, cap, max_bases).rigid


# ------------------------------------------------------------- file format


def format_pluecker(D: PlueckerVector, name: str | None = None) -> str:
    M = D.matroid
    lines = [f"pluecker {name or M.name or 'M'}"]
    for b in M.bases:
        lines.append(f"{format_basis(b, M.ground_size)} : {format_rational(D[b])}")
    return "\n".join(lines) + "\n"


def parse_pluecker(text: str, M: Matroid) -> PlueckerVector:
    values = {}
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("pluecker"):
            header_seen = True
            continue
        if ":" not in line:
            raise DomainError(f"pluecker line {lineno}: expected '<basis> : <rational>'")
        lhs, rhs = (s.strip() for s in line.split(":", 1))
        try:
            basis = parse_basis(lhs, M.ground_size)
            value = Fraction(rhs)
        except ValueError:
            raise DomainError(f"pluecker line {lineno}: cannot read {line!r}") from None
        if basis in values:
            raise DomainError(f"pluecker line {lineno}: basis {lhs} listed twice")
        values[basis] = value
    if not header_seen:
        raise DomainError("pluecker file must start with 'pluecker <matroid-name>'")
    return PlueckerVector(M, values)
