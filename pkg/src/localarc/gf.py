"""Arithmetic in GF(p^r).

Elements are addressed by their canonical integer index: the coefficient
vector ``(c0, ..., c_{r-1})`` of ``c0 + c1*x + ... `` read as little-endian
base-``p`` digits. Index 0 is zero, index 1 is one.

:class:`FieldSpec` does the arithmetic on plain integer indices (fast path
used by the geometry code); :class:`FieldElement` wraps an index with its
field and supports the usual operators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "FieldSpec",
    "FieldElement",
    "field_new",
    "is_prime",
    "is_irreducible",
    "enum_binary_order",
    "MAX_ORDER",
]

MAX_ORDER = 1 << 16
_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, r)`` with ``q == p**r``, or None."""
    if q < 2:
        return None
    p = next(f for f in itertools.count(2) if q % f == 0)
    r, t = 0, q
    while t % p == 0:
        t //= p
        r += 1
    return (p, r) if t == 1 else None


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p): little-endian coefficient lists ----------------


def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    a = list(a)
    dm = len(m) - 1
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top] % p
        if c:
            shift = top - dm
            for i, mc in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mc) % p
    return _trim([c % p for c in a[:dm]] or [0])


def _poly_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_mod(prod, m, p)


def _monic(degree: int, p: int) -> Iterable[list[int]]:
    """Monic polynomials of the given degree, lexicographic from the constant term."""
    for tail in itertools.product(range(p), repeat=degree):
        yield list(tail) + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim(list(poly))
    r = len(poly) - 1
    if r < 1 or poly[-1] != 1:
        return False
    for d in range(1, r // 2 + 1):
        for div in _monic(d, p):
            if _poly_mod(poly, div, p) == [0]:
                return False
    return True


def _vec_to_index(vec: Sequence[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(vec))


def _index_to_vec(idx: int, p: int, r: int) -> list[int]:
    out = []
    for _ in range(r):
        idx, c = divmod(idx, p)
        out.append(c)
    return out


class FieldSpec:
    """The finite field GF(p^r) with a fixed modulus and primitive element."""

    def __init__(self, p: int, r: int, modulus: Sequence[int], primitive: int):
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = tuple(modulus)
        self.primitive = primitive
        q = self.q
        # exp/log tables with respect to the primitive element
        g = _index_to_vec(primitive, p, r)
        exp = [0] * (2 * (q - 1))
        log = [-1] * q
        cur = [1]
        for e in range(q - 1):
            idx = _vec_to_index(cur, p)
            if log[idx] != -1:
                raise ValueError(f"element {primitive} is not primitive (order {e})")
            exp[e] = idx
            log[idx] = e
            cur = _poly_mulmod(cur, g, self.modulus, p) if r > 1 else [cur[0] * g[0] % p]
        if cur != [1]:
            raise ValueError(f"element {primitive} is not primitive")
        exp[q - 1 :] = exp[: q - 1]
        self._exp = exp
        self._log = log
        self._add_table = None
        if p > 2 and r > 1 and q <= _TABLE_LIMIT:
            digits = [_index_to_vec(i, p, r) for i in range(q)]
            self._add_table = [
                [_vec_to_index([(x + y) % p for x, y in zip(da, db)], p) for db in digits]
                for da in digits
            ]

    # -- identity -----------------------------------------------------------

    def _key(self):
        return (self.p, self.r, self.modulus, self.primitive)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FieldSpec(p={self.p}, r={self.r}, modulus={list(self.modulus)}, primitive={self.primitive})"

    # -- conversions --------------------------------------------------------

    def vector(self, a: int) -> list[int]:
        return _index_to_vec(a, self.p, self.r)

    def from_vector(self, vec: Sequence[int]) -> int:
        if len(vec) > self.r or any(not 0 <= c < self.p for c in vec):
            raise ValueError(f"bad coefficient vector {vec!r}")
        return _vec_to_index(vec, self.p)

    def element(self, a: int) -> FieldElement:
        self._check(a)
        return FieldElement(self, a)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, i) for i in range(self.q)]

    @property
    def omega(self) -> FieldElement:
        return FieldElement(self, self.primitive)

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element index of GF({self.q})")

    # -- arithmetic on indices ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.r == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        if self.r == 1:
            return self.p - a
        return self._exp[self._log[a] + (self.q - 1) // 2]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def exp(self, e: int) -> int:
        """``omega ** e``."""
        return self._exp[e % (self.q - 1)]

    def dlog(self, a: int) -> int:
        if a == 0:
            raise ValueError("discrete log of zero")
        self._check(a)
        return self._log[a]

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for f in _prime_factors(n):
            while order % f == 0 and self.pow(a, order // f) == 1:
                order //= f
        return order

    def is_primitive(self, a: int) -> bool:
        return self.element_order(a) == self.q - 1

    # -- tables for compiled kernels ----------------------------------------

    @cached_property
    def tables(self):
        """``(add, neg, exp, log)`` as numpy arrays; ``add`` is q x q."""
        import numpy as np

        q = self.q
        add = np.empty((q, q), dtype=np.int64)
        for a in range(q):
            add[a] = [self.add(a, b) for b in range(q)]
        neg = np.array([self.neg(a) for a in range(q)], dtype=np.int64)
        exp = np.array(self._exp, dtype=np.int64)
        log = np.array(self._log, dtype=np.int64)
        return add, neg, exp, log

    def format(self, a: int, symbol: str = "w") -> str:
        """Polynomial-basis rendering, e.g. ``w^2+w+1``."""
        if a == 0:
            return "0"
        terms = []
        for i, c in reversed(list(enumerate(self.vector(a)))):
            if not c:
                continue
            mono = "1" if i == 0 else symbol if i == 1 else f"{symbol}^{i}"
            terms.append(mono if c == 1 else f"{c}" if i == 0 else f"{c}{mono}")
        return "+".join(terms)


def _check_modulus(p: int, r: int, modulus: Sequence[int]) -> list[int]:
    modulus = list(modulus)
    if len(modulus) != r + 1 or modulus[-1] != 1:
        raise ValueError(f"modulus must be monic of degree {r}: {modulus!r}")
    if any(not 0 <= c < p for c in modulus):
        raise ValueError(f"modulus coefficients must lie in [0, {p}): {modulus!r}")
    return modulus


def _order_of_poly(idx: int, p: int, r: int, modulus: Sequence[int]) -> int:
    """Multiplicative order computed by polynomial arithmetic (pre-table)."""
    n = p**r - 1
    base = _index_to_vec(idx, p, r)

    def power(e):
        result, b = [1], base
        while e:
            if e & 1:
                result = _poly_mulmod(result, b, modulus, p)
            b = _poly_mulmod(b, b, modulus, p)
            e >>= 1
        return result

    order = n
    for f in _prime_factors(n):
        while order % f == 0 and power(order // f) == [1]:
            order //= f
    return order


def field_new(
    p: int, r: int = 1, modulus: Sequence[int] | None = None, primitive: int | None = None
) -> FieldSpec:
    """Build GF(p^r).

    Without ``modulus`` the lexicographically smallest monic irreducible
    (coefficients compared from the constant term upward) is used; without
    ``primitive`` the smallest index of multiplicative order ``q - 1``.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if r < 1:
        raise ValueError(f"extension degree must be positive, got {r}")
    q = p**r
    if q > MAX_ORDER:
        raise ValueError(f"GF({q}) exceeds the supported order {MAX_ORDER}")
    if modulus is None:
        if r == 1:
            modulus = [0, 1]
        else:
            modulus = next(m for m in _monic(r, p) if is_irreducible(m, p))
    else:
        modulus = _check_modulus(p, r, modulus)
        if r > 1 and not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus!r} is reducible over GF({p})")
    if primitive is None:
        primitive = next(g for g in range(1, q) if _order_of_poly(g, p, r, modulus) == q - 1)
    else:
        if not 0 < primitive < q:
            raise ValueError(f"primitive index {primitive} out of range for GF({q})")
        if _order_of_poly(primitive, p, r, modulus) != q - 1:
            raise ValueError(f"element {primitive} does not have order {q - 1}")
    return FieldSpec(p, r, modulus, primitive)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    index: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("operands belong to different fields")
            return other.index
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.add(self.index, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(self.index, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(b, self.index))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.index))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.mul(self.index, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.div(self.index, b))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.index, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.index))

    def order(self) -> int:
        return self.field.element_order(self.index)

    def is_primitive(self) -> bool:
        return self.field.is_primitive(self.index)

    def log(self) -> int:
        return self.field.dlog(self.index)

    def __int__(self):
        return self.index

    def __bool__(self):
        return self.index != 0

    def __repr__(self):
        return f"GF({self.field.q})({self.field.format(self.index)})"


def enum_binary_order(field: FieldSpec) -> list[FieldElement]:
    """Elements of GF(2^r) counted in binary over the basis 1, w, ..., w^(r-1).

    When the primitive element is the polynomial variable this is plain
    ascending index order.
    """
    if field.p != 2:
        raise ValueError("binary ordering needs characteristic 2")
    basis = [field.exp(k) for k in range(field.r)]
    out = []
    for n in range(field.q):
        acc = 0
        for k, b in enumerate(basis):
            if n >> k & 1:
                acc ^= b
        out.append(FieldElement(field, acc))
    return out
