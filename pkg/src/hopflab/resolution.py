"""Free resolutions over A, cohomology classes of Ext_A(k, k) and the modules L_zeta.

A free module A^s has basis x^b e_t at coordinate t * p^r + b.  An A-linear map
between free modules is stored as its full matrix over the field; the
coefficient form {(row, col): algebra element} is kept for the standard
resolutions because the Hochschild side reuses it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import comb

import numpy as np

from . import linalg as la
from .algebra import AlgebraCtx
from .field import FieldCtx
from .modules import (ModuleRep, cover_map, free_module, minimal_generators, submodule,
                      trivial_module)


def multidegrees(r: int, d: int) -> list[tuple]:
    """All j with |j| = d, lexicographically descending so (d, 0, ..) comes first."""
    out = [j for j in product(range(d, -1, -1), repeat=r) if sum(j) == d]
    return out


def koszul_sign(j, i: int) -> int:
    return -1 if sum(j[:i]) % 2 else 1


def coef_matrix(alg: AlgebraCtx, coefs: dict, rows: int, cols: int) -> np.ndarray:
    """Full field matrix of the A-map with e_t -> sum_s coefs[s, t] e_s."""
    d = alg.dim
    out = la.zeros(rows * d, cols * d)
    for (s, t), a in coefs.items():
        out[s * d:(s + 1) * d, t * d:(t + 1) * d] = alg.left_mult(a)
    return out


@dataclass(frozen=True, eq=False)
class Resolution:
    alg: AlgebraCtx
    target: ModuleRep
    ranks: tuple
    diffs: tuple  # diffs[n - 1] is the full matrix of d_n : P_n -> P_{n-1}
    augmentation: np.ndarray  # P_0 -> target
    labels: tuple | None = None  # multidegrees per degree for the standard resolution
    coefs: tuple | None = None  # coefficient form of each d_n, when available

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def diff(self, n: int) -> np.ndarray:
        if n == 0:
            return self.augmentation
        return self.diffs[n - 1]

    def module(self, n: int) -> ModuleRep:
        return free_module(self.alg, self.ranks[n])

    def dim(self, n: int) -> int:
        return self.ranks[n] * self.alg.dim


def trivial_resolution(alg: AlgebraCtx, d_max: int) -> Resolution:
    """Tensor product of the periodic resolutions ... -> A -x-> A -x^{p-1}-> A -x-> A of k."""
    p, r = alg.p, alg.r
    F = alg.field
    lin = [alg.gen(i) for i in range(r)]
    top = [alg.power(g, p - 1) for g in lin]
    labels = [tuple(multidegrees(r, n)) for n in range(d_max + 1)]
    diffs, coefs = [], []
    for n in range(1, d_max + 1):
        idx = {j: k for k, j in enumerate(labels[n - 1])}
        c = {}
        for t, j in enumerate(labels[n]):
            for i in range(r):
                if j[i] == 0:
                    continue
                jj = list(j)
                jj[i] -= 1
                a = lin[i] if j[i] % 2 else top[i]
                if koszul_sign(j, i) < 0:
                    a = F.neg(a)
                c[(idx[tuple(jj)], t)] = a
        coefs.append(c)
        diffs.append(coef_matrix(alg, c, len(labels[n - 1]), len(labels[n])))
    aug = la.zeros(1, alg.dim)
    aug[0, 0] = 1
    return Resolution(alg, trivial_module(alg), tuple(len(l) for l in labels), tuple(diffs), aug,
                      tuple(labels), tuple(coefs))


def minimal_resolution(M: ModuleRep, d_max: int) -> Resolution:
    """Degree-by-degree minimal cover of M and of each successive kernel."""
    F = M.field
    alg = M.alg
    X = M
    incl = la.identity(M.dim)
    ranks, diffs, aug = [], [], None
    for n in range(d_max + 1):
        G = minimal_generators(X) if X.dim else la.zeros(0, 0)
        s = G.shape[1]
        cov = cover_map(X, G) if s else la.zeros(X.dim, 0)
        mat = la.matmul(F, incl, cov) if s else la.zeros(incl.shape[0], 0)
        ranks.append(s)
        if n == 0:
            aug = mat
        else:
            diffs.append(mat)
        K = la.kernel_basis(F, cov) if s else la.zeros(0, 0)
        Kb, rows = la.image_basis(F, K)
        X = submodule(free_module(alg, s), Kb, rows)
        incl = Kb
    return Resolution(alg, M, tuple(ranks), tuple(diffs), aug)


def check_resolution(res: Resolution) -> dict:
    """Exactness at every computed degree and minimality of the differentials."""
    F = res.alg.field
    d = res.alg.dim
    out = {}
    aug = res.augmentation
    out["augmentation_onto"] = la.rank(F, aug) == res.target.dim if res.target.dim else True
    ranks = [la.rank(F, res.diff(n)) if res.diff(n).size else 0 for n in range(res.length + 1)]
    exact = True
    for n in range(res.length):
        if la.matmul(F, res.diff(n), res.diff(n + 1)).any():
            exact = False
        # rank d_{n+1} = dim ker d_n
        if ranks[n + 1] != res.dim(n) - ranks[n]:
            exact = False
    out["exact"] = exact
    minimal = True
    for n in range(1, res.length + 1):
        D = res.diff(n)
        # constant term of each coefficient = entry at (s * d, t * d)
        if D.size and D[::d, ::d].any():
            minimal = False
    out["minimal"] = minimal
    return out


def syzygy(M: ModuleRep, d: int) -> ModuleRep:
    """Omega^d(M) as the image of d_d in the minimal resolution."""
    if d == 0:
        return M
    res = minimal_resolution(M, d)
    return submodule(res.module(d - 1), res.diff(d))


def omega_k(alg: AlgebraCtx, d: int, res: Resolution | None = None) -> ModuleRep:
    """Omega^d(k) as the image of d_d in the standard resolution."""
    if d == 0:
        return trivial_module(alg)
    res = res or trivial_resolution(alg, d)
    return submodule(res.module(d - 1), res.diff(d))


# --- cohomology classes --------------------------------------------------------------

class ClassError(ValueError):
    pass


@dataclass(frozen=True)
class CohClass:
    """Homogeneous element of Ext_A(k, k): scalars on multidegrees of one total degree.

    A multidegree j stands for prod_i eta_i^(j_i mod 2) zeta_i^(j_i // 2) for odd p
    and for prod_i eta_i^(j_i) when p = 2 (with zeta_i = eta_i^2).
    """

    field: FieldCtx
    r: int
    degree: int
    terms: tuple = ()  # sorted ((j, scalar), ...) with nonzero scalars

    def __post_init__(self):
        clean = {}
        for j, c in self.terms:
            j = tuple(int(x) for x in j)
            if len(j) != self.r or sum(j) != self.degree or min(j) < 0:
                raise ClassError(f"multidegree {j} does not have total degree {self.degree}")
            c = int(c) % self.field.q if self.field.n == 1 else int(c)
            prev = clean.get(j, 0)
            clean[j] = int(self.field.add(prev, c))
        object.__setattr__(self, "terms", tuple(sorted((j, c) for j, c in clean.items() if c)))

    @classmethod
    def monomial(cls, field: FieldCtx, j, c: int = 1) -> "CohClass":
        j = tuple(j)
        return cls(field, len(j), sum(j), ((j, c),))

    @classmethod
    def eta(cls, field, r, i, c=1):
        j = [0] * r
        j[i] = 1
        return cls.monomial(field, j, c)

    @classmethod
    def zeta(cls, field, r, i, c=1):
        j = [0] * r
        j[i] = 2
        return cls.monomial(field, j, c)

    @classmethod
    def unit(cls, field, r):
        return cls.monomial(field, [0] * r)

    @classmethod
    def zero(cls, field, r, degree):
        return cls(field, r, degree, ())

    @property
    def support(self) -> dict:
        return dict(self.terms)

    def coeff(self, j) -> int:
        return self.support.get(tuple(j), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def in_S(self) -> bool:
        return all(all(x % 2 == 0 for x in j) for j, _ in self.terms)

    def _same(self, other):
        if self.field != other.field or self.r != other.r:
            raise ClassError("classes over different contexts")

    def __add__(self, other: "CohClass") -> "CohClass":
        self._same(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ClassError(f"cannot add classes of degrees {self.degree} and {other.degree}")
        return CohClass(self.field, self.r, self.degree, self.terms + other.terms)

    def scale(self, c: int) -> "CohClass":
        return CohClass(self.field, self.r, self.degree,
                        tuple((j, int(self.field.mul(v, int(c)))) for j, v in self.terms))

    def __neg__(self):
        return self.scale(int(self.field.neg(1)))

    def __sub__(self, other):
        return self + (-other)

    def cup(self, other: "CohClass") -> "CohClass":
        self._same(other)
        F = self.field
        out = []
        for j, a in self.terms:
            for k, b in other.terms:
                s = monomial_product_sign(F.p, j, k)
                if s == 0:
                    continue
                c = int(F.mul(a, b))
                if s < 0:
                    c = int(F.neg(c))
                out.append((tuple(x + y for x, y in zip(j, k)), c))
        return CohClass(F, self.r, self.degree + other.degree, tuple(out))

    __mul__ = cup

    def vector(self, labels) -> np.ndarray:
        sup = self.support
        return np.array([sup.get(tuple(j), 0) for j in labels], dtype=np.int64)

    def format(self) -> str:
        if self.is_zero():
            return "0"
        F = self.field
        parts = []
        for j, c in reversed(self.terms):
            mono = monomial_name(F.p, j)
            cs = F.format(c)
            if F.n > 1 and "+" in cs:
                cs = f"({cs})"
            if mono == "1":
                parts.append(cs)
            else:
                parts.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(parts)

    def __str__(self):
        return self.format()

    def to_dict(self) -> dict:
        return {"degree": self.degree, "support": [[list(j), c] for j, c in self.terms]}


def monomial_name(p: int, j, eta="e", zeta="z") -> str:
    """eta_i^(j_i mod 2) zeta_i^(j_i // 2); at p = 2 zeta_i stands for eta_i^2."""
    parts = []
    for i, x in enumerate(j):
        if x % 2:
            parts.append(f"{eta}{i + 1}")
        if x // 2:
            parts.append(f"{zeta}{i + 1}" + (f"^{x // 2}" if x // 2 > 1 else ""))
    return "*".join(parts) if parts else "1"


def monomial_product_sign(p: int, j, k) -> int:
    """Sign of the product of two multidegree monomials in the presented ring (0 if it vanishes)."""
    if p == 2:
        return 1
    a = [x % 2 for x in j]
    b = [x % 2 for x in k]
    if any(x and y for x, y in zip(a, b)):
        return 0
    # move each eta of the right factor past the etas of the left factor with larger index
    swaps = sum(1 for i, x in enumerate(a) if x for kk, y in enumerate(b) if y and kk < i)
    return -1 if swaps % 2 else 1


def random_class(field: FieldCtx, r: int, degree: int, rng, in_S: bool = False) -> CohClass:
    """Uniform scalars on the multidegrees of the given degree, resampled if zero."""
    labels = multidegrees(r, degree)
    if in_S:
        labels = [j for j in labels if all(x % 2 == 0 for x in j)]
    if not labels:
        raise ClassError(f"no {'S-' if in_S else ''}classes in degree {degree}")
    while True:
        cs = rng.integers(0, field.q, len(labels))
        if cs.any():
            return CohClass(field, r, degree, tuple(zip(labels, (int(c) for c in cs))))


def cocycle_of(c: CohClass, res: Resolution) -> np.ndarray:
    """The functional sum_j c(j) theta_j on P_n as a row vector over the field."""
    n = c.degree
    if res.labels is None:
        raise ClassError("cocycle_of needs the standard resolution")
    f = la.zeros(1, res.dim(n))
    f[0, np.arange(res.ranks[n]) * res.alg.dim] = c.vector(res.labels[n])
    return f


def functional_to_class(f: np.ndarray, res: Resolution, n: int) -> CohClass:
    vals = np.asarray(f).reshape(-1)[np.arange(res.ranks[n]) * res.alg.dim]
    F = res.alg.field
    return CohClass(F, res.alg.r, n, tuple(zip(res.labels[n], (int(v) for v in vals))))


@dataclass(frozen=True, eq=False)
class ChainMap:
    src: Resolution
    dst: Resolution
    shift: int
    mats: tuple  # mats[k] : P_{shift + k} -> P_k


def lift_cocycle(c: CohClass, res: Resolution, upto: int | None = None) -> ChainMap:
    """Chain map P_{* + n} -> P_* over the cocycle of c (degree-wise linear solves)."""
    F = res.alg.field
    n = c.degree
    upto = res.length - n if upto is None else upto
    if upto < 0:
        raise ClassError(f"resolution too short to lift a degree {n} class")
    d = res.alg.dim
    f = cocycle_of(c, res)
    # F_0 : generators of P_n go to f(e_j) * 1 in P_0 = A
    Y = la.zeros(d, res.ranks[n])
    Y[0, :] = f[0, np.arange(res.ranks[n]) * d]
    mats = [cover_map(res.module(0), Y)]
    for k in range(1, upto + 1):
        src_gens = la.identity(res.dim(n + k))[:, np.arange(res.ranks[n + k]) * d]
        rhs = la.matmul(F, mats[k - 1], la.matmul(F, res.diff(n + k), src_gens))
        Y = la.solve(F, res.diff(k), rhs)
        if Y is None:
            raise AssertionError("lifting equation has no solution; resolution not exact")
        mats.append(cover_map(res.module(k), Y))
    return ChainMap(res, res, n, tuple(mats))


def yoneda_product(c1: CohClass, c2: CohClass, res: Resolution) -> CohClass:
    """Class of cocycle(c1) composed with the lift of c2."""
    F = res.alg.field
    lift = lift_cocycle(c2, res, upto=c1.degree)
    f = la.matmul(F, cocycle_of(c1, res), lift.mats[c1.degree])
    return functional_to_class(f, res, c1.degree + c2.degree)


# --- L_zeta ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LZeta:
    """L_zeta together with its embedding in P_{d-1} of the standard resolution."""

    cls: CohClass
    module: ModuleRep
    basis: np.ndarray  # columns in P_{d-1}; identity at ``rows``
    rows: list
    res: Resolution

    @property
    def dim(self) -> int:
        return self.module.dim


def l_zeta_data(alg: AlgebraCtx, c: CohClass, res: Resolution | None = None) -> LZeta:
    if c.is_zero():
        raise ClassError("L_zeta needs a nonzero class")
    if c.degree < 1:
        raise ClassError("L_zeta needs a class of positive degree")
    if c.r != alg.r or c.field != alg.field:
        raise ClassError("class and algebra have different contexts")
    F = alg.field
    d = c.degree
    res = res if res is not None and res.length >= d else trivial_resolution(alg, d)
    s = res.ranks[d]
    dA = alg.dim
    # ker of theta_c on P_d: all x^a e_j with a != 0, plus scalar combinations of e_j killed by c
    rad_cols = [t * dA + b for t in range(s) for b in range(1, dA)]
    cvec = c.vector(res.labels[d])
    kc = la.kernel_basis(F, cvec[None, :])
    K = la.zeros(res.dim(d), len(rad_cols) + kc.shape[1])
    K[rad_cols, np.arange(len(rad_cols))] = 1
    K[np.arange(s)[:, None] * dA, len(rad_cols) + np.arange(kc.shape[1])[None, :]] = kc
    B, rows = la.image_basis(F, la.matmul(F, res.diff(d), K))
    mod = submodule(res.module(d - 1), B, rows)
    return LZeta(c, mod, B, rows, res)


def l_zeta(alg: AlgebraCtx, c: CohClass) -> ModuleRep:
    return l_zeta_data(alg, c).module


def rank_formula(r: int, d: int) -> int:
    return comb(d + r - 1, r - 1)
