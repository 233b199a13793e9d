"""The truncated polynomial algebra k[x_1..x_r]/(x_i^p) and its two Hopf structures.

Monomials x^a are indexed lexicographically with a_1 most significant, so the
index of a is sum(a_i * p^(r-i)).  The tensor square A (x) A is the same kind of
algebra on 2r generators: the left factor occupies slots 1..r and the right
factor slots r+1..2r, which makes index(u (x) v) = index(u) * p^r + index(v),
matching the Kronecker convention of :mod:`hopflab.linalg`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import product
from math import comb

import numpy as np

from . import linalg as la
from .field import FieldCtx


class Hopf(str, Enum):
    GR = "gr"
    LIE = "lie"

    @classmethod
    def parse(cls, text: str) -> "Hopf":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown Hopf structure {text!r}; expected 'gr' or 'lie'") from None

    def __str__(self):
        return "Gr" if self is Hopf.GR else "Lie"


@dataclass(frozen=True)
class AlgebraCtx:
    field: FieldCtx
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("need at least one generator")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return self.p**self.r

    @cached_property
    def exps(self) -> np.ndarray:
        return np.array(list(product(range(self.p), repeat=self.r)), dtype=np.int64).reshape(-1, self.r)

    @cached_property
    def _weights(self) -> np.ndarray:
        return self.p ** np.arange(self.r - 1, -1, -1)

    def index(self, exp) -> int:
        return int(np.dot(np.asarray(exp), self._weights))

    @cached_property
    def mul_index(self) -> np.ndarray:
        """Index of x^a * x^b, or -1 when some exponent reaches p."""
        s = self.exps[:, None, :] + self.exps[None, :, :]
        idx = s @ self._weights
        idx[(s >= self.p).any(axis=2)] = -1
        return idx

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.exps.sum(axis=1)

    # elements ---------------------------------------------------------
    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def one(self) -> np.ndarray:
        e = self.zero()
        e[0] = 1
        return e

    def monomial(self, exp, coeff: int = 1) -> np.ndarray:
        e = self.zero()
        e[self.index(exp)] = coeff
        return e

    def gen(self, i: int) -> np.ndarray:
        """The generator x_{i+1} (0-based i)."""
        exp = [0] * self.r
        exp[i] = 1
        return self.monomial(exp)

    def left_mult(self, a) -> np.ndarray:
        """Matrix of b -> a*b in the monomial basis."""
        a = np.asarray(a, dtype=np.int64)
        L = la.zeros(self.dim, self.dim)
        for i in np.nonzero(a)[0]:
            tgt = self.mul_index[i]
            ok = tgt >= 0
            L[tgt[ok], np.nonzero(ok)[0]] = a[i]
        return L

    @cached_property
    def gen_mats(self) -> tuple:
        return tuple(self.left_mult(self.gen(i)) for i in range(self.r))

    def mul(self, a, b) -> np.ndarray:
        return la.matvec(self.field, self.left_mult(a), b)

    def add(self, a, b):
        return self.field.add(np.asarray(a), np.asarray(b))

    def sub(self, a, b):
        return self.field.sub(np.asarray(a), np.asarray(b))

    def scale(self, c, a):
        return self.field.mul(np.asarray(a), int(c))

    def power(self, a, e: int) -> np.ndarray:
        out = self.one()
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def inverse_unit(self, a) -> np.ndarray:
        """Inverse of an element with nonzero constant term."""
        F = self.field
        c = int(a[0])
        if c == 0:
            raise ZeroDivisionError("element is not a unit")
        ci = int(F.inv(c))
        nil = self.sub(self.scale(ci, a), self.one())  # a/c - 1, nilpotent
        out = self.one()
        term = self.one()
        neg = F.neg(np.asarray(nil))
        for _ in range(self.r * (self.p - 1)):
            term = self.mul(term, neg)
            if not term.any():
                break
            out = self.add(out, term)
        return self.scale(ci, out)

    def counit(self, a) -> int:
        return int(np.asarray(a)[0])

    def format(self, a, names=None) -> str:
        F = self.field
        names = names or [f"x{i + 1}" for i in range(self.r)]
        terms = []
        for idx in np.nonzero(np.asarray(a))[0]:
            c = int(a[idx])
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(self.exps[idx]) if e)
            cs = F.format(c)
            if F.n > 1 and "+" in cs:
                cs = f"({cs})"
            if not mono:
                terms.append(cs)
            else:
                terms.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(terms) if terms else "0"

    # tensor powers and enveloping algebra -------------------------------
    @cached_property
    def tensor_square(self) -> "AlgebraCtx":
        return AlgebraCtx(self.field, 2 * self.r)

    def enveloping(self) -> tuple["AlgebraCtx", np.ndarray]:
        """A^e on y_1..y_r, z_1..z_r and the multiplication map mu: A^e -> A."""
        return self.tensor_square, self.mult_map

    @cached_property
    def mult_map(self) -> np.ndarray:
        """Matrix of u (x) v -> u*v, shape (p^r, p^{2r})."""
        d = self.dim
        M = la.zeros(d, d * d)
        tgt = self.mul_index.ravel()
        ok = tgt >= 0
        M[tgt[ok], np.nonzero(ok)[0]] = 1
        return M

    def embed_left(self, a) -> np.ndarray:
        out = self.tensor_square.zero()
        out[np.arange(self.dim) * self.dim] = a
        return out

    def embed_right(self, a) -> np.ndarray:
        out = self.tensor_square.zero()
        out[: self.dim] = a
        return out

    # Hopf structure -----------------------------------------------------
    def gen_coproduct(self, h: Hopf, i: int) -> np.ndarray:
        T = self.tensor_square
        xl = self.embed_left(self.gen(i))
        xr = self.embed_right(self.gen(i))
        out = T.add(xl, xr)
        if h is Hopf.GR:
            out = T.add(out, T.mul(xl, xr))
        return out

    def gen_antipode(self, h: Hopf, i: int) -> np.ndarray:
        x = self.gen(i)
        if h is Hopf.LIE:
            return self.field.neg(x)
        # (1 + x)^{-1} - 1 = sum_{t>=1} (-x)^t
        return self.sub(self.inverse_unit(self.add(self.one(), x)), self.one())

    def _extend_hom(self, target: "AlgebraCtx", images) -> np.ndarray:
        """Matrix of the algebra map A -> target sending x_i to images[i]."""
        out = la.zeros(target.dim, self.dim)
        out[0, 0] = 1
        mults = [target.left_mult(img) for img in images]
        F = self.field
        for b in range(1, self.dim):
            e = self.exps[b].copy()
            i = int(np.nonzero(e)[0][-1])
            e[i] -= 1
            out[:, b] = la.matvec(F, mults[i], out[:, self.index(e)])
        return out

    def coproduct_matrix(self, h: Hopf) -> np.ndarray:
        return self._coproducts[h]

    @cached_property
    def _coproducts(self) -> dict:
        return {h: self._extend_hom(self.tensor_square, [self.gen_coproduct(h, i) for i in range(self.r)])
                for h in Hopf}

    def antipode_matrix(self, h: Hopf) -> np.ndarray:
        return self._antipodes[h]

    @cached_property
    def _antipodes(self) -> dict:
        return {h: self._extend_hom(self, [self.gen_antipode(h, i) for i in range(self.r)]) for h in Hopf}

    def comultiply(self, h: Hopf, a) -> np.ndarray:
        return la.matvec(self.field, self.coproduct_matrix(h), a)

    def antipode(self, h: Hopf, a) -> np.ndarray:
        return la.matvec(self.field, self.antipode_matrix(h), a)

    def split_tensor(self, t) -> list[tuple[int, np.ndarray]]:
        """Write an element of A (x) A as a list of (left monomial index, right element)."""
        t = np.asarray(t).reshape(self.dim, self.dim)
        return [(u, t[u]) for u in range(self.dim) if t[u].any()]


@dataclass
class HopfReport:
    structure: Hopf
    p: int
    r: int
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def verify_hopf_axioms(alg: AlgebraCtx, h: Hopf, max_pairs: int = 60) -> HopfReport:
    """Coassociativity, counit and antipode laws on every basis monomial.

    Multiplicativity of the coproduct is checked on all monomial pairs when
    there are at most ``max_pairs`` of them, else on a fixed random sample.
    """
    F = alg.field
    d = alg.dim
    D = alg.coproduct_matrix(h)
    S = alg.antipode_matrix(h)
    I = la.identity(d)
    rep = HopfReport(h, alg.p, alg.r)

    left = la.matmul(F, la.kron(F, D, I), D)
    right = la.matmul(F, la.kron(F, I, D), D)
    rep.checks["coassociativity"] = bool((left == right).all())

    eps = la.zeros(1, d)
    eps[0, 0] = 1
    rep.checks["counit_left"] = bool((la.matmul(F, la.kron(F, eps, I), D) == I).all())
    rep.checks["counit_right"] = bool((la.matmul(F, la.kron(F, I, eps), D) == I).all())

    unit_counit = la.zeros(d, d)
    unit_counit[0, 0] = 1
    m = alg.mult_map
    rep.checks["antipode_left"] = bool((la.matmul(F, m, la.matmul(F, la.kron(F, S, I), D)) == unit_counit).all())
    rep.checks["antipode_right"] = bool((la.matmul(F, m, la.matmul(F, la.kron(F, I, S), D)) == unit_counit).all())

    T = alg.tensor_square
    pairs = [(a, b) for a in range(d) for b in range(a, d)]
    if len(pairs) > max_pairs:
        rng = np.random.default_rng(0)
        pairs = [pairs[i] for i in sorted(rng.choice(len(pairs), max_pairs, replace=False))]
    mult_ok = True
    for a, b in pairs:
        prod = alg.mul_index[a, b]
        lhs = D[:, prod] if prod >= 0 else T.zero()
        if not (lhs == T.mul(D[:, a], D[:, b])).all():
            mult_ok = False
            break
    rep.checks["algebra_map"] = mult_ok
    return rep


def binomial_mod(n: int, k: int, p: int) -> int:
    return comb(n, k) % p
