import math
import random
from fractions import Fraction
from itertools import combinations

import pytest
from samples import random_small_vector, random_valid_u2n

from tropmat.errors import DomainError, ResourceLimitError
from tropmat.linalg import rank
from tropmat.lp import OPTIMAL, UNBOUNDED, maximize
from tropmat.matroid import basis_polytope_vertices, cell_is_matroid, matroid_from_bases, uniform
from tropmat.valuated import (LOOP, PlueckerVector, apply_witness, check_tropical_pluecker, dressian,
                              format_pluecker, hyperplane_fit, is_rigid, lineality_space,
                              parse_pluecker, regular_subdivision, rescale, rigidity,
                              subdivision_is_matroidal, three_term_relations)

U24 = uniform(2, 4)


def vec(M, values):
    return PlueckerVector.from_vector(M, [Fraction(v) for v in values])


def with_34(v):
    d = {b: Fraction(0) for b in U24.bases}
    d[frozenset({3, 4})] = Fraction(v)
    return PlueckerVector(U24, d)


def brute_force_cells(D):
    """Maximal cells by testing every vertex subset for a supporting functional.

    Heights are -value (max convention).  A subset S is a cell when some affine
    functional equals the height on S and is strictly below it elsewhere, and
    S is full-dimensional.
    """
    M = D.matroid
    pts = [list(v) + [1] for v in basis_polytope_vertices(M)]
    h = [-D[b] for b in M.bases]
    full = rank(pts)
    n1 = len(pts[0])
    cells = set()
    for k in range(full, len(pts) + 1):
        for S in combinations(range(len(pts)), k):
            if rank([pts[i] for i in S]) < full:
                continue
            # variables: functional coefficients (n1) and slack t; maximize t
            eqs = [(pts[i] + [0], h[i]) for i in S]
            ineqs = [([-a for a in pts[j]] + [-1], -h[j]) for j in range(len(pts)) if j not in S]
            ineqs.append(([0] * n1 + [-1], -1))  # t <= 1 keeps it bounded
            res = maximize([0] * n1 + [1], ineqs, eqs, n1 + 1)
            if res.status == OPTIMAL and res.value > 0:
                cells.add(frozenset(M.bases[i] for i in S))
            assert res.status != UNBOUNDED
    return cells


# ---------------------------------------------------------------- examples


def test_pluecker_examples():
    assert check_tropical_pluecker(vec(U24, [0] * 6))
    assert check_tropical_pluecker(with_34(-1))
    assert not check_tropical_pluecker(with_34(1))


def test_support_must_equal_bases():
    with pytest.raises(DomainError, match="no value for"):
        PlueckerVector(U24, {frozenset({1, 2}): 0})
    with pytest.raises(DomainError, match="non-bases"):
        PlueckerVector(uniform(1, 2), {frozenset({1}): 0, frozenset({2}): 0, frozenset({1, 2}): 0})


def test_subdivision_examples():
    triv = regular_subdivision(vec(U24, [0] * 6))
    assert triv.is_trivial and len(triv.maximal_cells[0]) == 6
    split = regular_subdivision(with_34(-1))
    assert not split.is_trivial and len(split.maximal_cells) == 2
    assert set(map(frozenset, split.maximal_cells)) == brute_force_cells(with_34(-1))
    assert regular_subdivision(vec(U24, [3, 4, 5, 5, 6, 7])).is_trivial


def test_hyperplane_fit_examples():
    D = vec(U24, [3, 4, 5, 5, 6, 7])
    w = hyperplane_fit(D)
    assert w is not None
    assert all(v == 0 for v in apply_witness(D, w).vector())
    assert hyperplane_fit(with_34(-1)) is None
    U12 = uniform(1, 2)
    rng = random.Random(3)
    for _ in range(20):
        assert hyperplane_fit(random_small_vector(rng, U12, -50, 50)) is not None


def test_loops_get_the_infinity_marker():
    M = matroid_from_bases(3, 1, [{1}, {2}])
    w = hyperplane_fit(vec(M, [5, 7]))
    assert w.x[2] == LOOP == math.inf
    assert w.offset({1}) == 5 and w.offset({2}) == 7
    assert "inf" in w.format()


def test_matroidal_examples():
    ok, bad = subdivision_is_matroidal(with_34(-1))
    assert ok and bad == []
    assert subdivision_is_matroidal(vec(U24, [0] * 6)) == (True, [])
    # a non-Pluecker vector: the outcome is reported as computed
    ok, bad = subdivision_is_matroidal(with_34(1))
    sub = regular_subdivision(with_34(1))
    expected = [c for c in sub.maximal_cells
                if not cell_is_matroid(4, 2, [tuple(int(i in b) for i in range(1, 5)) for b in c])]
    assert bad == expected and ok == (not expected)


# ------------------------------------------------------------- properties


@pytest.mark.parametrize("n", [4, 5])
def test_lower_hull_matches_brute_force_oracle(n):
    rng = random.Random(n)
    samples = [random_valid_u2n(rng, n) for _ in range(12 if n == 4 else 4)]
    samples += [random_small_vector(rng, uniform(2, n)) for _ in range(8 if n == 4 else 2)]
    for D in samples:
        got = set(map(frozenset, regular_subdivision(D).maximal_cells))
        assert got == brute_force_cells(D)


@pytest.mark.parametrize("n", [4, 5])
def test_rescaling_invariance(n):
    rng = random.Random(10 + n)
    for _ in range(30):
        D = random_valid_u2n(rng, n) if rng.random() < 0.5 else random_small_vector(rng, uniform(2, n))
        x = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]
        c = Fraction(rng.randint(-9, 9))
        assert regular_subdivision(rescale(D, x, c)).maximal_cells == regular_subdivision(D).maximal_cells


@pytest.mark.parametrize("n", [4, 5])
def test_fit_iff_trivial_and_speyer_on_samples(n):
    rng = random.Random(100 + n)
    for _ in range(40):
        D = random_valid_u2n(rng, n)
        assert check_tropical_pluecker(D)
        w = hyperplane_fit(D)
        sub = regular_subdivision(D)
        assert (w is not None) == sub.is_trivial
        if w is not None:
            assert all(v == 0 for v in apply_witness(D, w).vector())
        assert subdivision_is_matroidal(D) == (True, [])


@pytest.mark.parametrize("n", [4, 5])
def test_dressian_membership_matches_pluecker_check(n):
    M = uniform(2, n)
    Dr = dressian(M)
    rng = random.Random(200 + n)
    hits = 0
    for i in range(500):
        D = random_valid_u2n(rng, n) if i % 5 == 0 else random_small_vector(rng, M)
        valid = check_tropical_pluecker(D)
        hits += valid
        assert Dr.contains(D.vector()) == valid
    assert 0 < hits < 500


# -------------------------------------------------------- Dressian, rigidity


def test_dressian_examples():
    D = dressian(U24)
    assert len(D.cells) == 3 and all(c.dim == 5 for c in D.cells) and D.ambient_dim == 6
    D12 = dressian(uniform(1, 2))
    assert D12.dim == 2 and D12.ambient_dim == 2
    assert dressian(uniform(2, 5)).dim == 7


def test_three_term_relations_of_u25():
    assert len(three_term_relations(uniform(2, 5))) == 5
    assert three_term_relations(uniform(1, 4)) == []


def test_dressian_caps():
    with pytest.raises(ResourceLimitError, match="cap of 10"):
        dressian(uniform(2, 5), cap=10)
    with pytest.raises(ResourceLimitError, match="limited to 12"):
        dressian(uniform(2, 6))


@pytest.mark.parametrize("r, n, dim", [(2, 4, 4), (1, 2, 2), (2, 3, 3), (2, 5, 5), (3, 6, 6)])
def test_lineality_dimension(r, n, dim):
    basis, d = lineality_space(uniform(r, n))
    assert d == dim == len(basis)


def test_rigidity_examples():
    assert not is_rigid(U24)
    assert is_rigid(uniform(2, 3))
    assert is_rigid(uniform(1, 2))
    assert rigidity(U24).report() == "rigid: no (dressian dim 5 > lineality dim 4)\n"
    assert rigidity(uniform(2, 3)).report() == "rigid: yes (dressian dim 3 = lineality dim 3)\n"


def test_non_uniform_rigidity():
    # U24 with a parallel pair {3,4} collapses to a rigid matroid
    M = matroid_from_bases(4, 2, [{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}])
    assert is_rigid(M)


# ------------------------------------------------------------ file format


def test_pluecker_file_round_trip():
    D = with_34(Fraction(-1, 2))
    text = format_pluecker(D, "U24")
    assert "34 : -1/2" in text and text.startswith("pluecker U24\n")
    assert parse_pluecker(text, U24).values == D.values


@pytest.mark.parametrize("text, needle", [
    ("12 : 0\n", "must start"),
    ("pluecker U24\n12 : 0\n12 : 1\n", "twice"),
    ("pluecker U24\n12 0\n", "expected"),
    ("pluecker U24\n12 : x\n", "cannot read"),
    ("pluecker U24\n12 : 0\n", "no value for"),
])
def test_pluecker_file_errors(text, needle):
    with pytest.raises(DomainError, match=needle):
        parse_pluecker(text, U24)
