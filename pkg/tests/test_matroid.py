from itertools import combinations

import pytest

from tropmat.errors import MatroidError
from tropmat.matroid import (FANO_LINES, basis_polytope_vertices, builtin, cell_is_matroid, fano,
                             format_matroid, matroid_from_bases, minor, minor_relabeling,
                             parse_matroid, uniform)


def brute_exchange_ok(bases):
    bases = [frozenset(b) for b in bases]
    bs = set(bases)
    return all(any((b1 - {x}) | {y} in bs for y in b2 - b1)
               for b1 in bases for b2 in bases for x in b1 - b2)


def test_u24_from_bases():
    M = matroid_from_bases(4, 2, combinations(range(1, 5), 2))
    assert M == uniform(2, 4) and len(M.bases) == 6


def test_fano_is_valid_with_28_bases():
    lines = [frozenset(l) for l in FANO_LINES]
    triples = [t for t in combinations(range(1, 8), 3) if frozenset(t) not in lines]
    assert brute_exchange_ok(triples)
    M = matroid_from_bases(7, 3, triples)
    assert M == fano() and len(M.bases) == 28


@pytest.mark.parametrize("n, r, bases, needle", [
    (3, 2, [{1, 2}, {3}], "cardinality"),
    (3, 1, [], "empty"),
    (4, 2, [{1, 2}, {3, 4}], "exchange"),
])
def test_rejections_name_the_problem(n, r, bases, needle):
    with pytest.raises(MatroidError, match=needle):
        matroid_from_bases(n, r, bases)


def test_exchange_error_names_the_pair():
    with pytest.raises(MatroidError) as exc:
        matroid_from_bases(4, 2, [{1, 2}, {3, 4}])
    assert "{1,2}" in str(exc.value) and "{3,4}" in str(exc.value)


@pytest.mark.parametrize("n", range(0, 8))
def test_all_uniform_matroids_accepted(n):
    for r in range(n + 1):
        M = matroid_from_bases(n, r, combinations(range(1, n + 1), r))
        assert cell_is_matroid(n, r, basis_polytope_vertices(M))


def test_basis_polytope_vertices():
    assert sorted(basis_polytope_vertices(uniform(1, 2))) == [(0, 1), (1, 0)]
    V = basis_polytope_vertices(fano())
    assert len(V) == 28 and all(sum(v) == 3 for v in V)
    assert all(sum(v) == 2 for v in basis_polytope_vertices(uniform(2, 4)))


def test_cell_is_matroid_examples():
    assert cell_is_matroid(3, 2, [(1, 1, 0), (1, 0, 1), (0, 1, 1)])
    assert not cell_is_matroid(4, 2, [(1, 1, 0, 0), (0, 0, 1, 1)])
    assert cell_is_matroid(4, 2, basis_polytope_vertices(uniform(2, 4)))
    with pytest.raises(ValueError):
        cell_is_matroid(3, 2, [(1, 1, 0), (1, 0, 0)])


def test_cell_is_matroid_against_brute_force_on_all_u24_subfamilies():
    verts = basis_polytope_vertices(uniform(2, 4))
    for k in range(1, 7):
        for sub in combinations(verts, k):
            supports = [frozenset(i + 1 for i, a in enumerate(v) if a) for v in sub]
            assert cell_is_matroid(4, 2, sub) == brute_exchange_ok(supports)


def test_minor_examples():
    M = uniform(2, 4)
    assert minor(M, delete={4}) == uniform(2, 3)
    assert minor(M, contract={4}) == uniform(1, 3)
    assert minor(M) == M
    with pytest.raises(MatroidError):
        minor(M, delete={1}, contract={1})
    with pytest.raises(MatroidError):
        minor(fano(), contract={1, 2, 3})


def _compose_minors(M, d1, c1, d2, c2):
    """Translate second-stage labels back to the original ground set."""
    rel = minor_relabeling(M.ground_size, d1, c1)
    back = {new: old for old, new in rel.items()}
    return minor(M, set(d1) | {back[i] for i in d2}, set(c1) | {back[i] for i in c2})


@pytest.mark.parametrize("r, n", [(r, n) for n in range(2, 6) for r in range(0, n + 1)])
def test_minors_commute(r, n):
    M = uniform(r, n)
    for d1 in [(), (1,)]:
        for c1 in [(), (n,)]:
            if set(d1) & set(c1):
                continue
            try:
                first = minor(M, d1, c1)
            except MatroidError:
                continue
            m = first.ground_size
            for d2 in [(), (1,)] if m else [()]:
                for c2 in [(), (m,)] if m else [()]:
                    if set(d2) & set(c2):
                        continue
                    try:
                        two = minor(first, d2, c2)
                    except MatroidError:
                        continue
                    assert two == _compose_minors(M, d1, c1, d2, c2)


def test_matroid_text_round_trip():
    M = fano()
    assert parse_matroid(format_matroid(M)) == M
    text = "matroid Z\nground 2\nrank 0\nbases -\n"
    Z = parse_matroid(text)
    assert Z.rank == 0 and Z.bases == (frozenset(),) and format_matroid(Z) == text


def test_builtin_names():
    assert builtin("U24") == uniform(2, 4)
    assert builtin("F7") == fano()
    assert builtin("nope") is None


def test_loops_are_allowed():
    M = matroid_from_bases(3, 1, [{1}, {2}])
    assert M.loops() == [3]
