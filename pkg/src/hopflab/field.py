"""Arithmetic in GF(p^n) for small p and n.

Elements are encoded as integers ``sum(c_i * p**i)`` where ``c_i`` are the
polynomial-basis coordinates, constant term first.  Every vectorised routine
works on numpy integer arrays in that encoding, so matrices over the field are
plain ``int64`` arrays that travel together with their :class:`FieldCtx`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

MAX_ORDER = 256


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def _poly_has_root(coeffs, p):
    for t in range(p):
        if sum(c * pow(t, i, p) for i, c in enumerate(coeffs)) % p == 0:
            return True
    return False


def _poly_mod(a, b, p):
    """Remainder of a by monic b over GF(p); coefficient lists, constant first."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - 1 - db
        lead = a[-1]
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic_polys(p, d):
    # low-degree coefficients compared first, so iterate with c_0 slowest
    for lows in product(range(p), repeat=d):
        yield list(lows) + [1]


def is_irreducible(coeffs, p) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    n = len(coeffs) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    if _poly_has_root(coeffs, p):
        return False
    for d in range(2, n // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(coeffs, g, p):
                return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    if n == 1:
        return (0, 1)
    for cand in _monic_polys(p, n):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise ValueError(f"no irreducible polynomial of degree {n} over GF({p})")


class FieldError(ValueError):
    pass


@dataclass(frozen=True, eq=True)
class FieldCtx:
    p: int
    n: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if not 1 <= self.n <= 4:
            raise FieldError(f"extension degree {self.n} outside 1..4")
        if self.p**self.n > MAX_ORDER:
            raise FieldError(f"field order {self.p}^{self.n} exceeds {MAX_ORDER}")
        mod = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.n + 1 or mod[-1] != 1 or any(not 0 <= c < self.p for c in mod):
            raise FieldError(f"modulus {mod} is not monic of degree {self.n} over GF({self.p})")
        if not is_irreducible(list(mod), self.p):
            raise FieldError(f"modulus {mod} is reducible over GF({self.p})")

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def is_prime_field(self) -> bool:
        return self.n == 1

    def __repr__(self):
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    # encoding helpers -------------------------------------------------
    def encode(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) != self.n:
            raise FieldError(f"expected {self.n} coordinates, got {len(coeffs)}")
        v = 0
        for c in reversed(coeffs):
            if not 0 <= int(c) < self.p:
                raise FieldError(f"coordinate {c} not reduced mod {self.p}")
            v = v * self.p + int(c)
        return v

    def decode(self, v: int) -> list[int]:
        out = []
        for _ in range(self.n):
            out.append(int(v) % self.p)
            v = int(v) // self.p
        return out

    def planes(self, a: np.ndarray) -> np.ndarray:
        """Coefficient planes, shape (n,) + a.shape."""
        a = np.asarray(a, dtype=np.int64)
        return np.stack([(a // self.p**i) % self.p for i in range(self.n)])

    def from_planes(self, planes: np.ndarray) -> np.ndarray:
        """Reduce integer coefficient planes (any number of them) into encoded elements."""
        planes = [np.asarray(pl, dtype=np.int64) % self.p for pl in planes]
        m = self.modulus
        for s in range(len(planes) - 1, self.n - 1, -1):
            top = planes[s]
            if top.any():
                for i in range(self.n):
                    if m[i]:
                        planes[s - self.n + i] = (planes[s - self.n + i] - m[i] * top) % self.p
        out = np.zeros(planes[0].shape, dtype=np.int64)
        for i in reversed(range(min(self.n, len(planes)))):
            out = out * self.p + planes[i]
        return out

    # tables -------------------------------------------------------------
    @cached_property
    def _mul_table(self) -> np.ndarray:
        q = self.q
        elems = np.arange(q)
        pl = self.planes(elems)
        conv = np.zeros((2 * self.n - 1, q, q), dtype=np.int64)
        for i in range(self.n):
            for j in range(self.n):
                conv[i + j] += np.outer(pl[i], pl[j])
        return self.from_planes(list(conv))

    @cached_property
    def _add_table(self) -> np.ndarray:
        pl = self.planes(np.arange(self.q))
        return self.from_planes([pl[i][:, None] + pl[i][None, :] for i in range(self.n)])

    @cached_property
    def _neg_table(self) -> np.ndarray:
        return self.from_planes(list(-self.planes(np.arange(self.q))))

    @cached_property
    def _inv_table(self) -> np.ndarray:
        inv = np.zeros(self.q, dtype=np.int64)
        rows, cols = np.nonzero(self._mul_table == 1)
        inv[rows] = cols
        return inv

    @cached_property
    def reduction_matrix(self) -> np.ndarray:
        """Column s holds the coordinates of t^s mod the modulus, s < 2n-1."""
        cols = []
        for s in range(2 * self.n - 1):
            e = [0] * (2 * self.n - 1)
            e[s] = 1
            v = int(self.from_planes([np.array(c) for c in e]))
            cols.append(self.decode(v))
        return np.array(cols, dtype=np.int64).T

    @cached_property
    def _plane_tables(self) -> dict:
        pl = self.planes(np.arange(self.q))
        return {dt: [np.ascontiguousarray(row, dtype=dt) for row in pl]
                for dt in (np.float32, np.float64)}

    def float_planes(self, a: np.ndarray, dtype) -> list:
        """Per-plane float arrays; each is C-contiguous so BLAS stays fast."""
        return [tab[a] for tab in self._plane_tables[dtype]]

    # elementwise arithmetic on encoded arrays ----------------------------
    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.n == 1:
            return (np.asarray(a) + b) % self.p
        return self._add_table[a, b]

    def sub(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.n == 1:
            return (np.asarray(a) - b) % self.p
        return self._add_table[a, self._neg_table[b]]

    def neg(self, a):
        if self.p == 2:
            return np.asarray(a).copy()
        if self.n == 1:
            return (-np.asarray(a)) % self.p
        return self._neg_table[a]

    def mul(self, a, b):
        if self.n == 1:
            return (np.asarray(a) * b) % self.p
        return self._mul_table[a, b]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv_table[a]

    def power(self, a: int, e: int) -> int:
        result = 1
        base = int(a)
        while e > 0:
            if e & 1:
                result = int(self.mul(result, base))
            base = int(self.mul(base, base))
            e >>= 1
        return result

    def from_int(self, k: int) -> int:
        """Image of the integer k under Z -> GF(p) -> GF(q)."""
        return int(k) % self.p

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def primitive_element(self) -> int:
        for g in range(2, self.q) if self.q > 2 else [1]:
            if all(self.power(g, (self.q - 1) // f) != 1 for f in _prime_factors(self.q - 1)):
                return g
        return 1

    def format(self, v: int) -> str:
        if self.n == 1:
            return str(int(v))
        coeffs = self.decode(v)
        terms = []
        for i in reversed(range(self.n)):
            c = coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    def to_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}


def _prime_factors(m):
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def field_create(p: int, n: int = 1) -> FieldCtx:
    """Field context with the lexicographically smallest irreducible modulus."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if not 1 <= n <= 4:
        raise FieldError(f"extension degree {n} outside 1..4")
    if p**n > MAX_ORDER:
        raise FieldError(f"field order {p}^{n} exceeds {MAX_ORDER}")
    return FieldCtx(p, n, smallest_irreducible(p, n))


@dataclass(frozen=True)
class Scalar:
    """A single field element; value semantics, the context rides along."""

    value: int
    ctx: FieldCtx

    @classmethod
    def from_coeffs(cls, coeffs, ctx: FieldCtx) -> "Scalar":
        return cls(ctx.encode(coeffs), ctx)

    @property
    def coeffs(self) -> list[int]:
        return self.ctx.decode(self.value)

    def _check(self, other):
        if not isinstance(other, Scalar):
            return Scalar(self.ctx.from_int(other), self.ctx)
        if other.ctx != self.ctx:
            raise FieldError(f"context mismatch: {self.ctx} vs {other.ctx}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Scalar(int(self.ctx.add(self.value, other.value)), self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return Scalar(int(self.ctx.sub(self.value, other.value)), self.ctx)

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return Scalar(int(self.ctx.mul(self.value, other.value)), self.ctx)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(int(self.ctx.neg(self.value)), self.ctx)

    def inverse(self) -> "Scalar":
        return Scalar(int(self.ctx.inv(self.value)), self.ctx)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Scalar(self.ctx.power(self.value, e), self.ctx)

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.ctx.format(self.value)
