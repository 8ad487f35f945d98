"""Matroids given by their bases on the ground set {1..n}."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import MatroidError

Basis = frozenset


@dataclass(frozen=True)
class Matroid:
    ground_size: int
    rank: int
    bases: tuple[Basis, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "bases", tuple(sorted(self.bases, key=sorted)))

    @property
    def ground(self) -> range:
        return range(1, self.ground_size + 1)

    @property
    def basis_set(self) -> frozenset:
        return frozenset(self.bases)

    def is_basis(self, subset: Iterable[int]) -> bool:
        return frozenset(subset) in self.basis_set

    def loops(self) -> list[int]:
        used = set().union(*self.bases)
        return [i for i in self.ground if i not in used]

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return (self.ground_size, self.rank, self.bases) == (other.ground_size, other.rank, other.bases)

    def __hash__(self):
        return hash((self.ground_size, self.rank, self.bases))


def exchange_violation(bases: Iterable[frozenset]):
    """First (B1, B2, x) violating basis exchange, or None."""
    family = set(bases)
    for b1 in sorted(family, key=sorted):
        for b2 in sorted(family, key=sorted):
            for x in sorted(b1 - b2):
                rest = b1 - {x}
                if not any(rest | {y} in family for y in b2 - b1):
                    return b1, b2, x
    return None


def _label(subset) -> str:
    return "{" + ",".join(map(str, sorted(subset))) + "}"


def matroid_from_bases(n: int, r: int, bases: Iterable[Iterable[int]], name: str = "") -> Matroid:
    if n < 0 or not 0 <= r <= n:
        raise MatroidError(f"need n >= 0 and 0 <= r <= n, got n={n}, r={r}")
    family = {frozenset(b) for b in bases}
    if not family:
        raise MatroidError("basis family is empty")
    for b in sorted(family, key=sorted):
        if len(b) != r:
            raise MatroidError(f"basis {_label(b)} has wrong cardinality {len(b)}, expected rank {r}")
        if not b <= set(range(1, n + 1)):
            raise MatroidError(f"basis {_label(b)} is not a subset of {{1..{n}}}")
    bad = exchange_violation(family)
    if bad is not None:
        b1, b2, x = bad
        raise MatroidError(
            f"exchange axiom fails for {_label(b1)}, {_label(b2)}: no y in "
            f"{_label(b2 - b1)} makes {_label(b1 - {x})} + y a basis"
        )
    return Matroid(n, r, tuple(family), name)


def uniform(r: int, n: int) -> Matroid:
    return matroid_from_bases(n, r, combinations(range(1, n + 1), r), f"U{r}{n}")


FANO_LINES = ({1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6})


def fano() -> Matroid:
    lines = {frozenset(l) for l in FANO_LINES}
    triples = [t for t in combinations(range(1, 8), 3) if frozenset(t) not in lines]
    return matroid_from_bases(7, 3, triples, "F7")


def builtin(name: str) -> Matroid | None:
    """Named matroids: F7 and U<r><n> with single-digit r, n."""
    if name == "F7":
        return fano()
    if len(name) == 3 and name[0] == "U" and name[1:].isdigit():
        r, n = int(name[1]), int(name[2])
        if r <= n:
            return uniform(r, n)
    return None


def basis_polytope_vertices(M: Matroid) -> list[tuple[int, ...]]:
    return [tuple(int(i in b) for i in M.ground) for b in M.bases]


def cell_is_matroid(n: int, r: int, vertex_set: Iterable[Sequence[int]]) -> bool:
    supports = set()
    for v in vertex_set:
        if len(v) != n:
            raise ValueError(f"vertex {tuple(v)} has length {len(v)}, expected {n}")
        if sum(v) != r:
            raise ValueError(f"vertex {tuple(v)} has coordinate sum {sum(v)}, expected {r}")
        supports.add(frozenset(i + 1 for i, a in enumerate(v) if a))
    return bool(supports) and exchange_violation(supports) is None


def minor_relabeling(n: int, delete: Iterable[int], contract: Iterable[int]) -> dict[int, int]:
    """Order-preserving map from surviving elements onto {1..n'}."""
    gone = set(delete) | set(contract)
    survivors = [i for i in range(1, n + 1) if i not in gone]
    return {old: new for new, old in enumerate(survivors, start=1)}


def minor(M: Matroid, delete: Iterable[int] = (), contract: Iterable[int] = ()) -> Matroid:
    """M / contract \\ delete, relabeled onto an initial segment."""
    D, C = frozenset(delete), frozenset(contract)
    if D & C:
        raise MatroidError(f"delete and contract overlap in {_label(D & C)}")
    if not (D | C) <= set(M.ground):
        raise MatroidError(f"minor elements {_label((D | C) - set(M.ground))} outside ground set")
    over = [b for b in M.bases if C <= b]
    if not over:
        raise MatroidError(f"contract set {_label(C)} is dependent")
    cut = [b - C - D for b in over]
    top = max(len(b) for b in cut)
    relabel = minor_relabeling(M.ground_size, D, C)
    new_bases = {frozenset(relabel[i] for i in b) for b in cut if len(b) == top}
    return Matroid(M.ground_size - len(D) - len(C), top, tuple(new_bases))


# ------------------------------------------------------------ text format


def format_basis(b: Iterable[int], n: int) -> str:
    items = sorted(b)
    if not items:
        return "-"
    return "".join(map(str, items)) if n <= 9 else ",".join(map(str, items))


def parse_basis(token: str, n: int) -> frozenset:
    if token == "-":
        return frozenset()
    if n <= 9 and "," not in token:
        return frozenset(int(ch) for ch in token)
    return frozenset(int(t) for t in token.split(",") if t)


def format_matroid(M: Matroid, name: str | None = None) -> str:
    name = name or M.name or "M"
    bases = " ".join(format_basis(b, M.ground_size) for b in M.bases)
    return f"matroid {name}\nground {M.ground_size}\nrank {M.rank}\nbases {bases}\n"


def parse_matroid(text: str) -> Matroid:
    fields: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key not in ("matroid", "ground", "rank", "bases"):
            raise MatroidError(f"line {lineno}: unknown keyword {key!r}")
        fields.setdefault(key, []).extend(rest)
    for key in ("ground", "rank", "bases"):
        if key not in fields:
            raise MatroidError(f"missing '{key}' line")
    try:
        n = int(fields["ground"][0])
        r = int(fields["rank"][0])
        bases = [parse_basis(tok, n) for tok in fields["bases"]]
    except (ValueError, IndexError) as exc:
        raise MatroidError(f"malformed matroid record: {exc}") from None
    name = fields.get("matroid", [""])[0] if fields.get("matroid") else ""
    return matroid_from_bases(n, r, bases, name)
