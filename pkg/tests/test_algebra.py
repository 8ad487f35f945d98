import random
from fractions import Fraction
from pathlib import Path

import pytest

from tropmat.algebra import (DIALECTS, FieldSpec, Polynomial, _laurent_monomial, algebra_points,
                             associated_algebra, export_cas, variety_points_crosscheck)
from tropmat.errors import DomainError
from tropmat.fields import field_make, prime_powers_upto
from tropmat.pasture import CATALOG_TEXT, catalog, parse_presentation
from tropmat.tropical import trop_contains

DOCS = Path(__file__).resolve().parent.parent / "docs" / "cas"


def rels(name, field="QQ"):
    A = associated_algebra(catalog(name), field)
    return A.formatted_relations()


def test_examples():
    A = associated_algebra(catalog("D"))
    assert A.variables == ("T", "U")
    assert A.formatted_relations() == ["T*U-1", "2*T-1"]
    assert associated_algebra(catalog("F1pm")).variables == ()
    assert rels("F1pm") == []
    # T - T^2 - 1 is stored with a positive leading coefficient
    assert rels("H") == ["T*U-1", "T^3+1", "T^2-T+1"]


@pytest.mark.parametrize("name, text", [
    ("D", "ring QQ[T,U]; ideal (T*U-1, 2*T-1);\n"),
    ("G", "ring QQ[T,U]; ideal (T*U-1, T^2-T-1);\n"),
    ("U", "ring QQ[T1,U1,T2,U2]; ideal (T1*U1-1, T2*U2-1, T1+T2-1);\n"),
])
def test_generic_exports(name, text):
    assert export_cas(associated_algebra(catalog(name)), "generic") == text


@pytest.mark.parametrize("name", list(CATALOG_TEXT))
@pytest.mark.parametrize("dialect", DIALECTS)
def test_exports_match_documented_examples_and_are_stable(name, dialect):
    A = associated_algebra(catalog(name))
    text = export_cas(A, dialect)
    assert text == export_cas(associated_algebra(catalog(name)), dialect)
    doc = (DOCS / f"{name}.{dialect}").read_text()
    assert text == doc


def test_unknown_dialect():
    with pytest.raises(DomainError, match="unknown dialect"):
        export_cas(associated_algebra(catalog("D")), "maple")


def test_field_specs():
    assert FieldSpec.parse("QQ").q == 0
    assert FieldSpec.parse("7").q == 7
    assert FieldSpec.parse("GF(9)").q == 9
    with pytest.raises(DomainError):
        FieldSpec.parse("6")
    A = associated_algebra(catalog("D"), "5")
    assert export_cas(A, "m2") == "R = ZZ/5[T,U];\nI = ideal(T*U-1, 2*T-1);\n"
    assert export_cas(associated_algebra(catalog("D"), "9"), "singular").startswith("ring R = (9,a)")


def test_binomials_have_two_unit_terms():
    P = parse_presentation("F1pm(A, B | A^2*B^-1 + 1, A + B - 1)")
    A = associated_algebra(P)
    assert all(set(A.variables) >= {"A", "A_inv", "B", "B_inv"} for _ in [0])
    lattice_polys = A.relations[2:-1]
    assert lattice_polys
    for p in lattice_polys:
        assert len(p.terms) == 2 and all(abs(c) == 1 for c in p.terms.values())


def test_crosscheck_examples():
    c = variety_points_crosscheck(catalog("D"), field_make(5))
    assert c.algebra_points == ((3,),) and c.agree
    c = variety_points_crosscheck(catalog("G"), field_make(11))
    assert c.algebra_points == ((4,), (8,)) and c.agree
    c = variety_points_crosscheck(catalog("K"), field_make(2))
    assert c.algebra_points == () and c.hom_points == () and c.agree


@pytest.mark.parametrize("name", ["U", "H", "F5"])
def test_crosscheck_small_fields(name):
    for q in prime_powers_upto(16):
        assert variety_points_crosscheck(catalog(name), field_make(q)).agree


def test_algebra_points_of_extension_field():
    A = associated_algebra(catalog("U"), "4")
    assert len(algebra_points(A, field_make(4))) == 2


def test_functoriality_u_to_d():
    """Substituting T1, T2 -> T into the U relations lands in the ideal of D.

    The ideal (T*U - 1, 2*T - 1) of QQ[T, U] is maximal with the single point
    (1/2, 2), so membership is equivalent to vanishing there.
    """
    AU = associated_algebra(catalog("U"))
    AD = associated_algebra(catalog("D"))
    point = (Fraction(1, 2), Fraction(2))
    assert all(r.evaluate(point) == 0 for r in AD.relations)
    # T1 -> T, U1 -> U, T2 -> T, U2 -> U
    subst = {0: 0, 1: 1, 2: 0, 3: 1}
    for r in AU.relations:
        terms = {}
        for m, c in r.terms.items():
            new = [0, 0]
            for i, e in enumerate(m):
                new[subst[i]] += e
            terms[tuple(new)] = terms.get(tuple(new), 0) + c
        assert Polynomial(terms).evaluate(point) == 0


def test_polynomial_format():
    p = Polynomial({(2, 0): -1, (1, 1): 3, (0, 0): 1})
    assert p.format(["x", "y"]) == "-x^2+3*x*y+1"
    assert Polynomial({}).format(["x"]) == "0"
    assert Polynomial({(1,): 6, (0,): 1}, p=7).format(["x"]) == "-x+1"
    assert _laurent_monomial(2, [-2, 3]) == (0, 2, 3, 0)


def _vp(x: Fraction, p: int) -> int:
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@pytest.mark.parametrize("p", [2, 3, 5])
def test_valued_field_points_lie_in_tropical_hom_space(p):
    """Rational points of U and D pushed through a p-adic absolute value."""
    rng = random.Random(p)
    U, D = catalog("U"), catalog("D")
    for _ in range(200):
        t = Fraction(rng.randint(-60, 60), rng.randint(1, 60))
        if t in (0, 1):
            continue
        x = [-_vp(t, p), -_vp(1 - t, p)]  # log_p |t|_p
        assert trop_contains(U, x)
    assert trop_contains(D, [-_vp(Fraction(1, 2), p)])
