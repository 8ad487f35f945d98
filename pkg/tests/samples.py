"""Random tropical Pluecker vectors for rank-2 uniform matroids.

Rank-2 valuations under the max convention are exactly tree metrics up to the
rescaling action, so a random weighted tree plus a random rescaling gives a
valid vector.  Values are kept as fractions with numerator and denominator
at most 100.
"""

from fractions import Fraction
from itertools import combinations

from tropmat.matroid import uniform
from tropmat.valuated import PlueckerVector


def random_tree_metric(rng, n):
    """Distances between leaves 1..n of a random tree with integer edge lengths."""
    # nodes: leaves are 1..n, internal nodes are negative integers
    edges = {(1, -1), (2, -1), (3, -1)}
    next_internal = -2
    for leaf in range(4, n + 1):
        a, b = rng.choice(sorted(edges))
        edges.remove((a, b))
        mid = next_internal
        next_internal -= 1
        edges |= {(a, mid), (mid, b), (leaf, mid)}
    length = {}
    for a, b in edges:
        internal = a < 0 and b < 0
        length[(a, b)] = 0 if internal and rng.random() < 0.5 else rng.randint(0, 8)
    adj = {}
    for (a, b), w in length.items():
        adj.setdefault(a, []).append((b, w))
        adj.setdefault(b, []).append((a, w))

    def dist_from(src):
        seen, stack = {src: 0}, [src]
        while stack:
            u = stack.pop()
            for v, w in adj[u]:
                if v not in seen:
                    seen[v] = seen[u] + w
                    stack.append(v)
        return seen

    return {(i, j): dist_from(i)[j] for i, j in combinations(range(1, n + 1), 2)}


def random_valid_u2n(rng, n):
    M = uniform(2, n)
    d = random_tree_metric(rng, n)
    x = [rng.randint(-10, 10) for _ in range(n)]
    c = rng.randint(-10, 10)
    den = rng.randint(1, 100)
    values = {frozenset(ij): Fraction(d[ij] + x[ij[0] - 1] + x[ij[1] - 1] + c, den) for ij in d}
    assert all(abs(v.numerator) <= 100 and v.denominator <= 100 for v in values.values())
    return PlueckerVector(M, values)


def random_small_vector(rng, M, lo=-2, hi=2):
    return PlueckerVector(M, {b: Fraction(rng.randint(lo, hi)) for b in M.bases})
