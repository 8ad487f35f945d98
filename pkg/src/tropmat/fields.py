"""Finite fields of order q = p^k <= 2^16.

Elements are the integers 0..q-1: for k > 1 the base-p digits of an element
are the coefficients of its residue polynomial, constant term first.
Multiplication goes through discrete log tables.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import DomainError

MAX_ORDER = 2**16


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, k) with q = p^k, or None."""
    if q < 2:
        return None
    p = next(f for f in range(2, q + 1) if q % f == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    return (p, k) if rest == 1 else None


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a by monic m over F_p (coefficient lists, constant first)."""
    a = a[:]
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _irreducible(m: list[int], p: int) -> bool:
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_poly_mod(m, list(low) + [1], p)):
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree k, ordering by (c_{k-1}, ..., c_0)."""
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        m = low + [1]
        if _irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise DomainError(f"field order {q} is not a prime power")
        if q > MAX_ORDER:
            raise DomainError(f"field order {q} exceeds the supported maximum {MAX_ORDER}")
        self.q = q
        self.p, self.k = pk
        self.modulus = least_irreducible(self.p, self.k) if self.k > 1 else None
        self._build_tables()

    # -- representation helpers
    def digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def from_digits(self, ds) -> int:
        return sum(d * self.p**i for i, d in enumerate(ds))

    def _poly_mul(self, a: int, b: int) -> int:
        p = self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_mod(prod, list(self.modulus), p)
        return self.from_digits(rem + [0] * (self.k - len(rem)))

    def _build_tables(self):
        q = self.q
        raw_mul = (lambda a, b: a * b % q) if self.k == 1 else self._poly_mul

        def raw_pow(a, e):
            out = 1
            while e:
                if e & 1:
                    out = raw_mul(out, a)
                a = raw_mul(a, a)
                e >>= 1
            return out

        order = q - 1
        primes = [f for f in range(2, order + 1) if order % f == 0 and prime_power(f) == (f, 1)]
        g = next(g for g in range(1, q) if all(raw_pow(g, order // l) != 1 for l in primes))
        exp = [1]
        for _ in range(order - 1):
            exp.append(raw_mul(exp[-1], g))
        self.generator = g
        self._exp = exp + exp  # doubled to skip a modulo in mul
        self._log = [0] * q
        for i, v in enumerate(exp):
            self._log[v] = i

    # -- arithmetic
    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.from_digits([(-d) % self.p for d in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e <= 0:
                raise ZeroDivisionError("non-positive power of 0")
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F."""
        return n % self.p

    @property
    def minus_one(self) -> int:
        return self.neg(1)

    def nonzero(self) -> range:
        return range(1, self.q)

    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        return "[" + ",".join(map(str, self.digits(a))) + "]"

    def __repr__(self):
        if self.k == 1:
            return f"FiniteField({self.q})"
        return f"FiniteField({self.q}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))


@lru_cache(maxsize=None)
def field_make(q: int) -> FiniteField:
    return FiniteField(q)


def prime_powers_upto(limit: int) -> list[int]:
    return [q for q in range(2, limit + 1) if prime_power(q) is not None]
