"""Finitely presented pastures F1pm(T1..Tn | S).

A unit is a signed monomial ``(-1)^s * T1^e1 ... Tn^en``, stored as the
integer vector ``(e1, ..., en, s)``.  The binary relations of S generate a
lattice L in Z^(n+1) (always containing ``2 * e_sign``) and units are
compared through their canonical coset representative modulo L, read off
a Hermite basis of L.

The binary relations supplied are taken as all of them.  Nothing checks that
they are complete; a presentation missing some presents a different pasture.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .errors import PresentationError
from .linalg import hermite_normal_form, reduce_mod_hnf, smith_invariants

MAX_GENERATORS = 16
MAX_EXPONENT = 2**63 - 1


@dataclass(frozen=True, order=True)
class Term:
    """A signed monomial as written in a relation (not reduced modulo L)."""

    sign: int  # +1 or -1
    exponents: tuple[int, ...]

    @property
    def vector(self) -> tuple[int, ...]:
        return self.exponents + (0 if self.sign > 0 else 1,)


@dataclass(frozen=True)
class NullsetRelation:
    terms: tuple[Term, ...]

    def __post_init__(self):
        # higher degree first, positive before negative
        key = lambda t: (tuple(-e for e in t.exponents), -t.sign)
        object.__setattr__(self, "terms", tuple(sorted(self.terms, key=key)))

    def __len__(self):
        return len(self.terms)


@dataclass(frozen=True)
class PastureElement:
    """ZERO (``vector is None``) or a canonical unit vector ``(e1..en, sign_bit)``."""

    vector: tuple[int, ...] | None

    @property
    def is_zero(self) -> bool:
        return self.vector is None

    @property
    def sign(self) -> int:
        return 1 if self.vector[-1] == 0 else -1

    @property
    def exponents(self) -> tuple[int, ...]:
        return self.vector[:-1]


ZERO = PastureElement(None)


def binary_lattice_vector(a: Term, b: Term) -> tuple[int, ...]:
    """Lattice vector of the identification a = -b forced by a + b in the nullset."""
    va, vb = a.vector, b.vector
    exps = tuple(x - y for x, y in zip(va[:-1], vb[:-1]))
    return exps + ((va[-1] + vb[-1] + 1) % 2,)


@dataclass(frozen=True)
class PasturePresentation:
    name: str
    generators: tuple[str, ...]
    relations: tuple[NullsetRelation, ...]
    lattice_generators: tuple[tuple[int, ...], ...] = field(default=())
    text: str = ""

    def __post_init__(self):
        n = len(self.generators)
        gens = [v for v in self.lattice_generators]
        sign_row = tuple([0] * n + [2])
        if sign_row not in gens:
            gens.append(sign_row)
        for rel in self.relations:
            if len(rel) == 2:
                v = binary_lattice_vector(*rel.terms)
                if v not in gens:
                    gens.append(v)
        object.__setattr__(self, "lattice_generators", tuple(gens))
        object.__setattr__(self, "_hnf", tuple(map(tuple, hermite_normal_form(gens, n + 1))))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def lattice_basis(self) -> tuple[tuple[int, ...], ...]:
        """Hermite basis of L."""
        return self._hnf

    # -------------------------------------------------------- elements

    def element(self, sign: int = 1, exponents: Sequence[int] | None = None) -> PastureElement:
        exps = tuple(exponents) if exponents is not None else (0,) * self.ngens
        if len(exps) != self.ngens:
            raise ValueError(f"expected {self.ngens} exponents, got {len(exps)}")
        return self.reduce(exps + (0 if sign > 0 else 1,))

    def reduce(self, vector: Sequence[int]) -> PastureElement:
        return PastureElement(tuple(reduce_mod_hnf(self._hnf, vector)))

    def term_element(self, t: Term) -> PastureElement:
        return self.reduce(t.vector)

    def generator(self, i: int) -> PastureElement:
        return self.element(1, [int(j == i) for j in range(self.ngens)])

    @property
    def one(self) -> PastureElement:
        return self.element(1)

    @property
    def minus_one(self) -> PastureElement:
        return self.element(-1)

    def mul(self, a: PastureElement, b: PastureElement) -> PastureElement:
        if a.is_zero or b.is_zero:
            return ZERO
        return self.reduce([x + y for x, y in zip(a.vector, b.vector)])

    def inv(self, a: PastureElement) -> PastureElement:
        if a.is_zero:
            raise ZeroDivisionError("zero has no inverse")
        return self.reduce([-x for x in a.vector])

    def pow(self, a: PastureElement, k: int) -> PastureElement:
        if a.is_zero:
            if k <= 0:
                raise ZeroDivisionError("non-positive power of zero")
            return ZERO
        return self.reduce([k * x for x in a.vector])

    def neg(self, a: PastureElement) -> PastureElement:
        if a.is_zero:
            return ZERO
        return self.mul(a, self.minus_one)

    def eq(self, a: PastureElement, b: PastureElement) -> bool:
        return a == b

    def in_lattice(self, vector: Sequence[int]) -> bool:
        return not any(reduce_mod_hnf(self._hnf, vector))

    def format_element(self, a: PastureElement) -> str:
        if a.is_zero:
            return "0"
        factors = []
        for g, e in zip(self.generators, a.exponents):
            if e == 1:
                factors.append(g)
            elif e:
                factors.append(f"{g}^{e}")
        body = "*".join(factors) or "1"
        return ("-" if a.sign < 0 else "") + body

    def format_relation(self, rel: NullsetRelation) -> str:
        out = ""
        for k, t in enumerate(rel.terms):
            body = self.format_element(PastureElement(t.vector[:-1] + (0,)))
            if k == 0:
                out = ("-" if t.sign < 0 else "") + body
            else:
                out += (" - " if t.sign < 0 else " + ") + body
        return out

    def __str__(self):
        rels = ", ".join(self.format_relation(r) for r in self.relations)
        return f"F1pm({', '.join(self.generators)} | {rels})"


def element_arithmetic(P: PasturePresentation, op: str, a: PastureElement,
                       b: PastureElement | None = None):
    if op == "mul":
        return P.mul(a, b)
    if op == "neg":
        return P.neg(a)
    if op == "eq":
        return P.eq(a, b)
    raise ValueError(f"unknown operation {op!r}; expected mul, neg or eq")


def unit_group_structure(P: PasturePresentation) -> tuple[int, list[int]]:
    """(free rank, torsion invariant factors > 1) of Z^(n+1) / L."""
    inv = smith_invariants(P.lattice_basis, P.ngens + 1)
    return P.ngens + 1 - len(inv), [d for d in inv if d > 1]


# ------------------------------------------------------------------ parser

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[()|,+\-*^]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                rest = text[pos:]
                if rest.strip():
                    skip = len(rest) - len(rest.lstrip())
                    self.fail(f"unexpected character {rest.lstrip()[0]!r}", pos + skip)
                break
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def where(self, offset: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return line, col

    def fail(self, message: str, offset: int | None = None):
        if offset is None:
            offset = self.tokens[self.i][2]
        raise PresentationError(message, *self.where(offset))

    def peek(self):
        return self.tokens[self.i]

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.tokens[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value is not None else kind
            got = repr(tok[1]) if tok[0] != "end" else "end of input"
            self.fail(f"expected {want}, found {got}")
        self.i += 1
        return tok

    def presentation(self):
        head = self.take(kind="ident")
        if head[1] != "F1pm":
            self.fail("presentation must start with 'F1pm('", head[2])
        self.take("(")
        gens: list[str] = []
        if self.peek()[0] == "ident":
            gens.append(self.take(kind="ident")[1])
            while self.peek()[1] == ",":
                self.take(",")
                tok = self.take(kind="ident")
                if tok[1] in gens:
                    self.fail(f"duplicate generator {tok[1]!r}", tok[2])
                gens.append(tok[1])
        if len(gens) > MAX_GENERATORS:
            self.fail(f"at most {MAX_GENERATORS} generators are supported")
        if len(gens) != len(set(gens)):
            self.fail("duplicate generator name")
        self.gens = gens
        self.take("|")
        relations = []
        if self.peek()[1] != ")":
            relations.append(self.relation())
            while self.peek()[1] == ",":
                self.take(",")
                relations.append(self.relation())
        self.take(")")
        self.take(kind="end")
        return gens, relations

    def relation(self):
        start = self.peek()[2]
        terms = []
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        terms.append(self.term(sign))
        while self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            terms.append(self.term(sign))
        if len(terms) == 1:
            self.fail("single-term relation puts a unit in the nullset (1 would be null); "
                      "such a presentation is degenerate", start)
        return NullsetRelation(tuple(terms))

    def term(self, sign: int) -> Term:
        exps = [0] * len(self.gens)
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            if tok[1] != "1":
                self.fail("constant terms must be 1 (write repeated terms as 1+1)", tok[2])
            return Term(sign, tuple(exps))
        self.factor(exps)
        while self.peek()[1] == "*":
            self.take("*")
            self.factor(exps)
        return Term(sign, tuple(exps))

    def factor(self, exps: list[int]):
        tok = self.peek()
        if tok[0] == "int" and tok[1] == "1":
            self.take()
            return
        tok = self.take(kind="ident")
        if tok[1] not in self.gens:
            self.fail(f"unknown generator {tok[1]!r}", tok[2])
        power = 1
        if self.peek()[1] == "^":
            self.take("^")
            neg = False
            if self.peek()[1] == "-":
                self.take("-")
                neg = True
            power = int(self.take(kind="int")[1]) * (-1 if neg else 1)
        k = self.gens.index(tok[1])
        exps[k] += power
        if abs(exps[k]) > MAX_EXPONENT:
            self.fail("exponent exceeds 63 bits", tok[2])


def parse_presentation(text: str, name: str = "") -> PasturePresentation:
    """Parse ``F1pm(gens | relations)``; whitespace is insignificant."""
    gens, relations = _Parser(text).presentation()
    return PasturePresentation(name or "P", tuple(gens), tuple(relations), text=text.strip())


CATALOG_TEXT = {
    "F1pm": "F1pm( | )",
    "K": "F1pm( | 1+1, 1+1+1)",
    "F2": "F1pm( | 1+1)",
    "F3": "F1pm( | 1+1+1)",
    "F5": "F1pm(T | T^2+1, T-1-1)",
    "D": "F1pm(T | T+T-1)",
    "H": "F1pm(T | T^3+1, T-T^2-1)",
    "G": "F1pm(T | T^2-T-1)",
    "U": "F1pm(T1,T2 | T1+T2-1)",
}


def catalog(name: str) -> PasturePresentation:
    try:
        text = CATALOG_TEXT[name]
    except KeyError:
        known = ", ".join(CATALOG_TEXT)
        raise PresentationError(f"unknown pasture {name!r}; known: {known}") from None
    return parse_presentation(text, name)


def load_presentation(text: str, name: str = "") -> PasturePresentation:
    """Presentation from file contents: '#' comments and an optional 'pasture <name>' line."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0]
        if line.strip().startswith("pasture "):
            name = name or line.split()[1]
            line = ""
        lines.append(line)
    return parse_presentation("\n".join(lines), name)


def parse_unit(P: PasturePresentation, text: str) -> PastureElement:
    """A signed monomial in the generators of P, e.g. ``-T1*T2^-1`` or ``1``."""
    parser = _Parser(text)
    parser.gens = list(P.generators)
    sign = 1
    tok = parser.peek()
    if tok[0] == "op" and tok[1] in "+-":
        sign = -1 if parser.take()[1] == "-" else 1
    term = parser.term(sign)
    parser.take(kind="end")
    return P.term_element(term)
