"""Polynomial presentation of the K-algebra attached to a pasture, and CAS export.

Each generator T gets an inverse variable (T1 -> U1, T -> U, other names get
an ``_inv`` suffix) tied to it by T*U - 1.  Lattice vectors become binomials
and nullset relations become polynomials in which negative powers are written
with the inverse variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import DomainError
from .fields import FiniteField, prime_power
from .homs import enumerate_homs
from .pasture import PasturePresentation

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class FieldSpec:
    """``q = 0`` stands for the rationals."""

    q: int = 0

    @classmethod
    def parse(cls, text: str | int) -> "FieldSpec":
        s = str(text).strip()
        if s.upper() in ("QQ", "Q", "0"):
            return cls(0)
        for prefix in ("GF", "F", "ZZ/"):
            if s.upper().startswith(prefix) and s[len(prefix):].strip("()").isdigit():
                s = s[len(prefix):].strip("()")
                break
        if not s.isdigit() or prime_power(int(s)) is None:
            raise DomainError(f"field {text!r} is neither QQ nor a prime power")
        return cls(int(s))

    @property
    def characteristic(self) -> int:
        return 0 if self.q == 0 else prime_power(self.q)[0]

    @property
    def is_prime_field(self) -> bool:
        return self.q != 0 and prime_power(self.q)[1] == 1


class Polynomial:
    """Integer-coefficient polynomial; coefficients live in Z/p when p > 0."""

    __slots__ = ("terms", "p")

    def __init__(self, terms: dict[Monomial, int], p: int = 0):
        if p:
            # balanced residues in (-p/2, p/2]
            terms = {m: (c % p if c % p <= p // 2 else c % p - p) for m, c in terms.items()}
        self.terms = {m: c for m, c in terms.items() if c}
        self.p = p

    def ordered(self) -> list[tuple[Monomial, int]]:
        # graded lexicographic, largest first
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self.terms

    def normalized(self) -> "Polynomial":
        """Scale by -1 so that the leading coefficient is positive."""
        if not self.terms or self.ordered()[0][1] > 0:
            return self
        return Polynomial({m: -c for m, c in self.terms.items()}, self.p)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def evaluate(self, values: Sequence, F: FiniteField | None = None):
        """Value at ``values`` (Fractions over QQ, field elements over F)."""
        if F is None:
            total = Fraction(0)
            for m, c in self.terms.items():
                term = Fraction(c)
                for v, e in zip(values, m):
                    term *= Fraction(v) ** e
                total += term
            return total
        total = 0
        for m, c in self.terms.items():
            term = F.from_int(c)
            for v, e in zip(values, m):
                if e:
                    term = F.mul(term, F.pow(v, e))
            total = F.add(total, term)
        return total

    def format(self, variables: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.ordered()):
            factors = []
            for name, e in zip(variables, m):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if c < 0:
                out.append("-" + body)
            else:
                out.append(("+" if i else "") + body)
        return "".join(out)


def inverse_name(gen: str) -> str:
    if gen.startswith("T"):
        return "U" + gen[1:]
    return gen + "_inv"


@dataclass(frozen=True)
class AlgebraPresentation:
    field: FieldSpec
    variables: tuple[str, ...]
    relations: tuple[Polynomial, ...]
    source: str = ""

    @property
    def ngens(self) -> int:
        return len(self.variables) // 2

    def formatted_relations(self) -> list[str]:
        return [r.format(self.variables) for r in self.relations]


def _laurent_monomial(n: int, exps: Sequence[int]) -> Monomial:
    m = [0] * (2 * n)
    for i, e in enumerate(exps):
        if e > 0:
            m[2 * i] = e
        elif e < 0:
            m[2 * i + 1] = -e
    return tuple(m)


def associated_algebra(P: PasturePresentation, field: FieldSpec | str | int = FieldSpec()) -> AlgebraPresentation:
    if not isinstance(field, FieldSpec):
        field = FieldSpec.parse(field)
    p = field.characteristic
    n = P.ngens
    variables = []
    for g in P.generators:
        variables += [g, inverse_name(g)]
    clash = set(variables[1::2]) & set(P.generators)
    if clash:
        raise DomainError(f"inverse variable name {sorted(clash)[0]} collides with a generator")
    one = (0,) * (2 * n)

    polys: list[Polynomial] = []
    for i in range(n):
        tu = [0] * (2 * n)
        tu[2 * i] = tu[2 * i + 1] = 1
        polys.append(Polynomial({tuple(tu): 1, one: -1}, p))
    for vec in P.lattice_generators:
        exps, bit = vec[:-1], vec[-1] % 2
        plus = _laurent_monomial(n, [max(e, 0) for e in exps])
        minus = _laurent_monomial(n, [max(-e, 0) for e in exps])
        sign = -1 if bit else 1
        terms: dict[Monomial, int] = {plus: 1}
        terms[minus] = terms.get(minus, 0) - sign
        polys.append(Polynomial(terms, p))
    for rel in P.relations:
        terms = {}
        for t in rel.terms:
            m = _laurent_monomial(n, t.exponents)
            terms[m] = terms.get(m, 0) + t.sign
        polys.append(Polynomial(terms, p))

    seen, out = set(), []
    for poly in polys:
        poly = poly.normalized()
        if poly.is_zero() or poly in seen:
            continue
        seen.add(poly)
        out.append(poly)
    return AlgebraPresentation(field, tuple(variables), tuple(out), P.name)


# ------------------------------------------------------------------ export

DIALECTS = ("generic", "m2", "singular")


def _field_text(field: FieldSpec, dialect: str) -> str:
    if field.q == 0:
        return {"generic": "QQ", "m2": "QQ", "singular": "0"}[dialect]
    if field.is_prime_field:
        return {"generic": f"GF({field.q})", "m2": f"ZZ/{field.q}", "singular": str(field.q)}[dialect]
    return {"generic": f"GF({field.q})", "m2": f"GF({field.q})", "singular": f"({field.q},a)"}[dialect]


def export_cas(A: AlgebraPresentation, dialect: str = "generic") -> str:
    if dialect not in DIALECTS:
        raise DomainError(f"unknown dialect {dialect!r}; choose one of {', '.join(DIALECTS)}")
    K = _field_text(A.field, dialect)
    gens = ",".join(A.variables)
    rels = ", ".join(A.formatted_relations())
    if dialect == "generic":
        return f"ring {K}[{gens}]; ideal ({rels});\n"
    if dialect == "m2":
        return f"R = {K}[{gens}];\nI = ideal({rels or '0_R'});\n"
    # Singular wants at least one ring variable
    return f"ring R = {K},({gens or 'x'}),dp;\nideal I = {rels or '0'};\n"


# -------------------------------------------------------------- crosscheck


@dataclass(frozen=True)
class Crosscheck:
    algebra_points: tuple[tuple[int, ...], ...]
    hom_points: tuple[tuple[int, ...], ...]

    @property
    def agree(self) -> bool:
        return self.algebra_points == self.hom_points


def algebra_points(A: AlgebraPresentation, F: FiniteField) -> list[tuple[int, ...]]:
    """Zeros of A over F, listed by their T-coordinates (each U is forced to T^-1)."""
    pts = []
    for ts in product(F.nonzero(), repeat=A.ngens):
        values = []
        for t in ts:
            values += [t, F.inv(t)]
        if all(r.evaluate(values, F) == 0 for r in A.relations):
            pts.append(tuple(ts))
    return pts


def variety_points_crosscheck(P: PasturePresentation, F: FiniteField) -> Crosscheck:
    A = associated_algebra(P, FieldSpec(F.q))
    return Crosscheck(tuple(sorted(algebra_points(A, F))), tuple(sorted(enumerate_homs(P, F))))
