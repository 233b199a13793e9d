"""Free resolutions of a module M as complexes of modules with explicit free bases.

Both P (x) M (k-tensor under a Hopf structure) and Q (x)_A M are free resolutions
of M whose natural bases are not the monomial basis of a free module.  Each
degree therefore carries a generator matrix and the inverse of its cover map,
which converts a vector into coordinates x^b g_t (g major, b minor).

An Ext^n(M, N) class is represented by the values of an A-map C_n -> N on the
generators of C_n; such a map is a coboundary iff it equals G o d_n for some
A-map G on C_{n-1}, which is a linear system in the generator values of G.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import AlgebraCtx, Hopf
from .modules import ModuleRep, cover_map, tensor
from .resolution import CohClass, Resolution


@dataclass(eq=False)
class FreeComplex:
    alg: AlgebraCtx
    target: ModuleRep
    modules: list
    diffs: list  # diffs[n - 1] : C_n -> C_{n-1}
    augmentation: np.ndarray
    gens: list
    _einv: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def diff(self, n: int) -> np.ndarray:
        return self.augmentation if n == 0 else self.diffs[n - 1]

    def n_gens(self, n: int) -> int:
        return self.gens[n].shape[1]

    def einv(self, n: int) -> np.ndarray:
        if n not in self._einv:
            cov = cover_map(self.modules[n], self.gens[n])
            self._einv[n] = la.inverse(self.alg.field, cov)
        return self._einv[n]

    def extend(self, n: int, N: ModuleRep, values: np.ndarray) -> np.ndarray:
        """Full matrix of the A-map C_n -> N with the given generator values."""
        F = self.alg.field
        return la.matmul(F, cover_map(N, values), self.einv(n))

    def boundary_coefficients(self, n: int) -> np.ndarray:
        """d_n on generators of C_n in free coordinates of C_{n-1}."""
        F = self.alg.field
        return la.matmul(F, self.einv(n - 1), la.matmul(F, self.diff(n), self.gens[n]))


def _generator_columns(s: int, d: int, m: int) -> np.ndarray:
    """Positions of e_t (x) m_l (t major) in a space with index (t * d + b) * m + l."""
    t, l = np.meshgrid(np.arange(s), np.arange(m), indexing="ij")
    return ((t * d) * m + l).ravel()


def tensor_complex(h: Hopf, res: Resolution, M: ModuleRep) -> FreeComplex:
    """P (x) M with the diagonal action through the coproduct h; a resolution of M."""
    F = M.field
    alg = res.alg
    m, d = M.dim, alg.dim
    Im = la.identity(m)
    mods, gens, diffs = [], [], []
    for n in range(res.length + 1):
        mod = tensor(h, res.module(n), M)
        mods.append(mod)
        g = la.zeros(mod.dim, res.ranks[n] * m)
        g[_generator_columns(res.ranks[n], d, m), np.arange(res.ranks[n] * m)] = 1
        gens.append(g)
        if n:
            diffs.append(la.kron(F, res.diff(n), Im))
    aug = la.kron(F, res.augmentation, Im)
    return FreeComplex(alg, M, mods, diffs, aug, gens)


def resolution_complex(res: Resolution) -> FreeComplex:
    d = res.alg.dim
    gens = [la.identity(res.dim(n))[:, np.arange(res.ranks[n]) * d] for n in range(res.length + 1)]
    return FreeComplex(res.alg, res.target, [res.module(n) for n in range(res.length + 1)],
                       list(res.diffs), res.augmentation, gens)


@dataclass(eq=False)
class ExtClass:
    """Element of Ext^n(target, N) given by cocycle values on the generators of C_n."""

    complex: FreeComplex
    degree: int
    coeff: ModuleRep
    values: np.ndarray  # dim N x n_gens(degree)


def coboundary_system(C: FreeComplex, n: int, N: ModuleRep) -> np.ndarray:
    """Matrix K with vec(G o d_n on generators) = K vec(G), column-major vec."""
    F = C.alg.field
    d = C.alg.dim
    B = C.boundary_coefficients(n)
    s_prev = C.n_gens(n - 1)
    K = la.zeros(N.dim * C.n_gens(n), N.dim * s_prev)
    for b, rho in enumerate(N.monomial_actions):
        Cb = B[np.arange(s_prev) * d + b, :]
        if Cb.any():
            K = F.add(K, la.kron(F, Cb.T, rho))
    return K


def vec(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).T.ravel()


def unvec(v: np.ndarray, rows: int) -> np.ndarray:
    return np.asarray(v).reshape(-1, rows).T


def is_cocycle(x: ExtClass) -> bool:
    C = x.complex
    if x.degree >= C.length:
        raise ValueError("complex too short to test the cocycle condition")
    F = C.alg.field
    full = C.extend(x.degree, x.coeff, x.values)
    return not la.matmul(F, full, la.matmul(F, C.diff(x.degree + 1), C.gens[x.degree + 1])).any()


def coboundary_witness(x: ExtClass):
    """G with x = G o d, or None when x is not a coboundary."""
    C, n = x.complex, x.degree
    if n == 0:
        return la.zeros(x.coeff.dim, 0) if not x.values.any() else None
    K = coboundary_system(C, n, x.coeff)
    sol = la.solve(C.alg.field, K, vec(x.values))
    return None if sol is None else unvec(sol, x.coeff.dim)


def is_coboundary(x: ExtClass) -> bool:
    return coboundary_witness(x) is not None


def theta_action(h: Hopf, c: CohClass, M: ModuleRep, res: Resolution) -> ExtClass:
    """Theta^M(c) in Ext^n(M, M): the cocycle c (x) id_M on the resolution P (x) M."""
    C = tensor_complex(h, res, M)
    return theta_on(C, c, res)


def theta_on(C: FreeComplex, c: CohClass, res: Resolution) -> ExtClass:
    F = C.alg.field
    M = C.target
    vals = la.kron(F, c.vector(res.labels[c.degree])[None, :], la.identity(M.dim))
    return ExtClass(C, c.degree, M, vals)


def annihilator_basis(C: FreeComplex, res: Resolution, n: int, labels=None) -> np.ndarray:
    """Coefficient vectors (over ``labels``) of degree-n classes c with Theta^M(c) = 0.

    Solves sum_j c_j vec(F_j) = K vec(G) jointly in (c, G); the projection of the
    kernel onto c is the annihilator, a linear subspace.
    """
    F = C.alg.field
    M = C.target
    m = M.dim
    all_labels = list(res.labels[n])
    labels = all_labels if labels is None else list(labels)
    cols = []
    for j in labels:
        e = np.zeros(len(all_labels), dtype=np.int64)
        e[all_labels.index(tuple(j))] = 1
        cols.append(vec(la.kron(F, e[None, :], la.identity(m))))
    Fmat = np.stack(cols, axis=1)
    if n == 0:
        sys = Fmat
    else:
        K = coboundary_system(C, n, M)
        sys = np.concatenate([Fmat, F.neg(K)], axis=1)
    ker = la.kernel_basis(F, sys)
    return la.image_basis(F, ker[:len(labels), :])[0]


def comparison_maps(src: FreeComplex, dst: FreeComplex, upto: int) -> list:
    """Chain map src -> dst over the identity of the common target."""
    F = src.alg.field
    if src.target.dim != dst.target.dim:
        raise ValueError("complexes resolve modules of different dimension")
    rhs = la.matmul(F, src.augmentation, src.gens[0])
    Y = la.solve(F, dst.augmentation, rhs)
    if Y is None:
        raise AssertionError("augmentation of the target complex is not onto")
    maps = [src.extend(0, dst.modules[0], Y)]
    for n in range(1, upto + 1):
        rhs = la.matmul(F, maps[n - 1], la.matmul(F, src.diff(n), src.gens[n]))
        Y = la.solve(F, dst.diff(n), rhs)
        if Y is None:
            raise AssertionError(f"comparison lift fails in degree {n}; target complex not exact")
        maps.append(src.extend(n, dst.modules[n], Y))
    return maps


def pull_back(x: ExtClass, along: np.ndarray, src: FreeComplex) -> ExtClass:
    """Compose a cocycle on x.complex with a chain map component src_n -> x.complex_n."""
    F = src.alg.field
    full = x.complex.extend(x.degree, x.coeff, x.values)
    vals = la.matmul(F, full, la.matmul(F, along, src.gens[x.degree]))
    return ExtClass(src, x.degree, x.coeff, vals)
