"""Pasture homomorphisms into finite fields, pasture maps and their fibers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, FusionInconclusive, NotAHomomorphism
from .fields import FiniteField, field_make, prime_powers_upto
from .pasture import (
    PastureElement,
    PasturePresentation,
    Term,
    catalog,
    load_presentation,
    parse_unit,
)

Images = tuple[int, ...]


def eval_vector(F: FiniteField, images: Sequence[int], vector: Sequence[int]) -> int:
    """Value of the unit ``(e1..en, sign_bit)`` under generator images."""
    v = F.minus_one if vector[-1] % 2 else 1
    for t, e in zip(images, vector[:-1]):
        if e:
            v = F.mul(v, F.pow(t, e))
    return v


def eval_sum(F: FiniteField, images: Sequence[int], vectors: Iterable[Sequence[int]]) -> int:
    total = 0
    for vec in vectors:
        total = F.add(total, eval_vector(F, images, vec))
    return total


def _constraints(P: PasturePresentation):
    """(last generator index involved, kind, data), sorted for early pruning."""
    out = []
    for row in P.lattice_basis:
        involved = [i for i, e in enumerate(row[:-1]) if e]
        out.append((max(involved, default=-1), "lattice", row))
    for rel in P.relations:
        vecs = [t.vector for t in rel.terms]
        involved = [i for t in rel.terms for i, e in enumerate(t.exponents) if e]
        out.append((max(involved, default=-1), "null", vecs))
    out.sort(key=lambda c: c[0])
    return out


def _holds(F, images, kind, data) -> bool:
    if kind == "lattice":
        return eval_vector(F, images, data) == 1
    return eval_sum(F, images, data) == 0


def check_hom(P: PasturePresentation, images: Sequence[int], F: FiniteField) -> bool:
    if len(images) != P.ngens:
        raise ValueError(f"{P.name} has {P.ngens} generators but {len(images)} images were given")
    if any(not 0 < t < F.q for t in images):
        raise ValueError("generator images must be nonzero field elements")
    return all(_holds(F, images, kind, data) for _, kind, data in _constraints(P))


def enumerate_homs(P: PasturePresentation, F: FiniteField) -> list[Images]:
    """All homomorphisms P -> F as tuples of generator images, sorted."""
    cons = _constraints(P)
    by_level: dict[int, list] = {}
    for level, kind, data in cons:
        by_level.setdefault(level, []).append((kind, data))
    n = P.ngens
    if not all(_holds(F, (), k, d) for k, d in by_level.get(-1, [])):
        return []
    found: list[Images] = []
    images = [0] * n

    def extend(i: int):
        if i == n:
            found.append(tuple(images))
            return
        checks = by_level.get(i, [])
        for t in F.nonzero():
            images[i] = t
            if all(_holds(F, images, k, d) for k, d in checks):
                extend(i + 1)
        images[i] = 0

    extend(0)
    return sorted(found)


def format_hom(P: PasturePresentation, F: FiniteField, images: Sequence[int]) -> str:
    return " ".join(f"{g}={F.format(t)}" for g, t in zip(P.generators, images))


@dataclass(frozen=True)
class Profile:
    counts: dict[int, int]
    growth_exponent: float

    def report(self) -> str:
        lines = [f"q {q} count {c}" for q, c in self.counts.items()]
        lines.append(f"growth_exponent {self.growth_exponent:.6f}")
        return "\n".join(lines) + "\n"


def least_squares_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    if len(xs) < 2:
        return math.nan
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / sxx


def point_count_profile(P: PasturePresentation, q_list: Sequence[int]) -> Profile:
    """Hom counts per field order and the slope of log(count + 1) against log(q).

    The slope is only an estimator of dimension; the raw counts are kept.
    """
    if not q_list:
        raise ValueError("q_list must be nonempty")
    counts = {q: len(enumerate_homs(P, field_make(q))) for q in q_list}
    xs = [math.log(q) for q in counts]
    ys = [math.log(c + 1) for c in counts.values()]
    return Profile(counts, least_squares_slope(xs, ys))


# ------------------------------------------------------------ nullset search

Sum = tuple[tuple[int, ...], ...]


class _NullsetSearch:
    """Bounded fusion closure of the nullset generated by S in a presented pasture.

    Facts are known null sums, stored up to multiplication by units.  A round
    fuses every pair of facts along a term c of one and a unit multiple of a
    term of the other that equals -c.
    """

    def __init__(self, P: PasturePresentation, depth: int, max_terms: int, max_facts: int):
        self.P = P
        self.depth = depth
        self.max_terms = max_terms
        self.max_facts = max_facts
        seeds = [tuple(P.term_element(t).vector for t in rel.terms) for rel in P.relations]
        seeds.append((P.one.vector, P.minus_one.vector))
        self.facts = {self.normal_form(s) for s in seeds}

    def mul(self, u, v):
        return tuple(self.P.reduce([a + b for a, b in zip(u, v)]).vector)

    def inv(self, u):
        return tuple(self.P.reduce([-a for a in u]).vector)

    def scale(self, s: Sum, u) -> Sum:
        return tuple(sorted(self.mul(u, t) for t in s))

    def normal_form(self, s: Sum) -> Sum:
        return min(self.scale(s, self.inv(t)) for t in set(s))

    def covered(self, target: Sum) -> bool:
        """Is target a sum of unit multiples of known facts?"""
        memo: dict[Sum, bool] = {}
        facts = sorted(f for f in self.facts if len(f) <= len(target))

        def go(x: Sum) -> bool:
            if not x:
                return True
            if x in memo:
                return memo[x]
            memo[x] = False
            head = x[0]
            for f in facts:
                if len(f) > len(x):
                    continue
                for t in set(f):
                    g = self.scale(f, self.mul(head, self.inv(t)))
                    rest = list(x)
                    try:
                        for e in g:
                            rest.remove(e)
                    except ValueError:
                        continue
                    if go(tuple(rest)):
                        memo[x] = True
                        return True
            return False

        return go(target)

    def prove(self, target: Sum) -> bool | None:
        """True if found within the bounds, None if the bounds ran out."""
        if self.covered(target):
            return True
        minus = self.P.minus_one.vector
        frontier = set(self.facts)
        for _ in range(self.depth):
            new = set()
            old = list(self.facts)
            for f1 in frontier:
                for f2 in old:
                    for a, b in ((f1, f2), (f2, f1)):
                        for c in set(a):
                            rest_a = list(a)
                            rest_a.remove(c)
                            neg_c = self.mul(c, minus)
                            for d in set(b):
                                u = self.mul(neg_c, self.inv(d))
                                rest_b = list(b)
                                rest_b.remove(d)
                                g = tuple(sorted(rest_a + [self.mul(u, t) for t in rest_b]))
                                if len(g) < 2 or len(g) > self.max_terms:
                                    continue
                                g = self.normal_form(g)
                                if g not in self.facts:
                                    new.add(g)
            if not new:
                return None
            self.facts |= new
            if self.covered(target):
                return True
            if len(self.facts) > self.max_facts:
                return None
            frontier = new
        return None


def refute_by_fields(P: PasturePresentation, terms: Sequence[PastureElement],
                     max_q: int = 32, budget: int = 200_000):
    """A field hom that sends the sum to a nonzero value, as (q, images), or None."""
    vectors = [t.vector for t in terms]
    for q in prime_powers_upto(max_q):
        if (q - 1) ** P.ngens > budget:
            continue
        F = field_make(q)
        for h in enumerate_homs(P, F):
            if eval_sum(F, h, vectors) != 0:
                return q, h
    return None


def nullset_contains(P: PasturePresentation, terms: Sequence[PastureElement], depth: int = 4,
                     max_terms: int | None = None, max_facts: int = 20_000) -> bool | None:
    """Decide whether the formal sum of ``terms`` lies in the nullset of P.

    Sums of at most two terms are decided exactly.  Longer sums are first
    tested against homomorphisms into small finite fields (a nonzero image
    refutes membership), then searched for by bounded fusion.  ``None`` means
    neither succeeded within the bounds.
    """
    terms = [t for t in terms]
    if not terms:
        return True
    if len(terms) == 1:
        return False
    if len(terms) == 2:
        return terms[0] == P.neg(terms[1])
    if refute_by_fields(P, terms) is not None:
        return False
    target = tuple(sorted(t.vector for t in terms))
    longest = max((len(r) for r in P.relations), default=2)
    bound = max_terms if max_terms is not None else max(len(target), longest)
    return _NullsetSearch(P, depth, bound, max_facts).prove(target)


# ------------------------------------------------------------ pasture maps


@dataclass(frozen=True)
class PastureMap:
    """Generator-image description of a map source -> target."""

    source: PasturePresentation
    target: PasturePresentation
    images: tuple[PastureElement, ...]
    name: str = "f"

    def image_of_vector(self, vector: Sequence[int]) -> PastureElement:
        T = self.target
        acc = [0] * (T.ngens + 1)
        for e, img in zip(vector[:-1], self.images):
            if e:
                acc = [a + e * b for a, b in zip(acc, img.vector)]
        acc[-1] += vector[-1]
        return T.reduce(acc)

    def image_of_term(self, t: Term) -> PastureElement:
        return self.image_of_vector(t.vector)

    def compose(self, after: "PastureMap") -> "PastureMap":
        """``after`` o ``self``."""
        imgs = tuple(after.image_of_vector(img.vector) for img in self.images)
        return PastureMap(self.source, after.target, imgs, f"{after.name}.{self.name}")

    def validate(self, depth: int = 4, max_terms: int | None = None, max_facts: int = 20_000):
        """Raise NotAHomomorphism or FusionInconclusive unless the map respects all relations."""
        S, T = self.source, self.target
        if len(self.images) != S.ngens:
            raise NotAHomomorphism(f"{self.name}: expected {S.ngens} generator images, got {len(self.images)}")
        for row in S.lattice_basis:
            if not T.in_lattice(self.image_of_vector(row).vector):
                desc = S.format_element(PastureElement(tuple(row[:-1]) + (row[-1] % 2,)))
                raise NotAHomomorphism(
                    f"{self.name}: binary relation {desc} = 1 of {S.name} is not preserved", row)
        for rel in S.relations:
            image = [self.image_of_term(t) for t in rel.terms]
            verdict = nullset_contains(T, image, depth, max_terms, max_facts)
            shown = " + ".join(T.format_element(e) for e in image)
            if verdict is False:
                raise NotAHomomorphism(
                    f"{self.name}: relation {S.format_relation(rel)} of {S.name} maps to "
                    f"{shown}, which is not in the nullset of {T.name}", rel)
            if verdict is None:
                raise FusionInconclusive(
                    f"{self.name}: could not decide whether {shown} lies in the nullset of "
                    f"{T.name} within fusion depth {depth}", rel)

    def apply(self, F: FiniteField, h: Sequence[int]) -> Images:
        """Pull back a hom h: target -> F to source -> F."""
        return tuple(eval_vector(F, h, img.vector) for img in self.images)


def identity_map(P: PasturePresentation) -> PastureMap:
    return PastureMap(P, P, tuple(P.generator(i) for i in range(P.ngens)), f"id_{P.name}")


def resolve_pasture(spec: str) -> PasturePresentation:
    spec = spec.strip()
    if spec.startswith("F1pm"):
        return load_presentation(spec)
    return catalog(spec)


def parse_map(text: str) -> PastureMap:
    """Map file: ``map``, ``source``, ``target`` lines, then ``Ti -> <monomial>`` lines."""
    name, source, target, rules = "f", None, None, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" in line:
            lhs, rhs = (s.strip() for s in line.split("->", 1))
            rules[lhs] = (rhs, lineno)
            continue
        key, _, value = line.partition(" ")
        value = value.strip()
        if key == "map":
            name = value
        elif key == "source":
            source = resolve_pasture(value)
        elif key == "target":
            target = resolve_pasture(value)
        else:
            raise DomainError(f"map file line {lineno}: unknown keyword {key!r}")
    if source is None or target is None:
        raise DomainError("map file needs both 'source' and 'target' lines")
    missing = [g for g in source.generators if g not in rules]
    if missing:
        raise DomainError(f"map file gives no image for generator(s) {', '.join(missing)}")
    extra = [g for g in rules if g not in source.generators]
    if extra:
        raise DomainError(f"map file names unknown source generator(s) {', '.join(extra)}")
    images = tuple(parse_unit(target, rules[g][0]) for g in source.generators)
    return PastureMap(source, target, images, name)


@dataclass(frozen=True)
class FiberPartition:
    field: FiniteField
    fibers: dict[Images, list[Images]]

    def sizes(self) -> dict[Images, int]:
        return {k: len(v) for k, v in self.fibers.items()}


def induced_map_fibers(f: PastureMap, F: FiniteField, depth: int = 4) -> FiberPartition:
    """Partition Hom(target, F) by the pulled-back hom in Hom(source, F)."""
    f.validate(depth)
    fibers: dict[Images, list[Images]] = {h: [] for h in enumerate_homs(f.source, F)}
    for h in enumerate_homs(f.target, F):
        pulled = f.apply(F, h)
        if pulled not in fibers:
            raise AssertionError(f"pulled-back assignment {pulled} is not a homomorphism")
        fibers[pulled].append(h)
    return FiberPartition(F, fibers)
