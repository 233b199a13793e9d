"""The bimodule resolution Q of A, the functors phi_Delta and psi^M, and the maps Phi and Psi.

A^e is the truncated algebra on y_1..y_r (left slot) and z_1..z_r (right slot);
the element u (x) v sits at index u * p^r + v.  Q_n is free over A^e on the
generators sigma_j, |j| = n, with d(sigma_j) = sum_i (+-) (y_i - z_i)^k sigma_{j - e_i},
k = 1 for odd j_i and p - 1 for even j_i, using the Koszul signs of the
standard resolution of k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import AlgebraCtx, Hopf
from .complexes import (ExtClass, FreeComplex, _generator_columns, comparison_maps,
                        coboundary_witness, is_cocycle, pull_back, tensor_complex, theta_on)
from .modules import ModuleRep, free_module, tensor
from .resolution import (CohClass, Resolution, coef_matrix, koszul_sign, monomial_name,
                         multidegrees, trivial_resolution)


def a_bimodule(alg: AlgebraCtx) -> ModuleRep:
    """A as an A^e-module: y_i and z_i both act by multiplication by x_i."""
    return ModuleRep(alg.tensor_square, alg.gen_mats + alg.gen_mats)


def y_minus_z(alg: AlgebraCtx, i: int, k: int) -> np.ndarray:
    T = alg.tensor_square
    diff = T.sub(T.gen(i), T.gen(alg.r + i))
    return T.power(diff, k)


def bimodule_resolution(alg: AlgebraCtx, d_max: int) -> Resolution:
    T = alg.tensor_square
    F = alg.field
    p, r = alg.p, alg.r
    lin = [y_minus_z(alg, i, 1) for i in range(r)]
    top = [y_minus_z(alg, i, p - 1) for i in range(r)]
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
        diffs.append(coef_matrix(T, c, len(labels[n - 1]), len(labels[n])))
    return Resolution(T, a_bimodule(alg), tuple(len(l) for l in labels), tuple(diffs),
                      alg.mult_map, tuple(labels), tuple(coefs))


def phi_functor(h: Hopf, M: ModuleRep) -> ModuleRep:
    """phi_Delta(M) = M (x) A: y_i through the coproduct, z_i by right multiplication."""
    alg = M.alg
    F = alg.field
    Areg = free_module(alg)
    ys = tensor(h, M, Areg).gens
    zs = tuple(la.kron(F, la.identity(M.dim), g) for g in alg.gen_mats)
    return ModuleRep(alg.tensor_square, ys + zs)


def _right_mult_tensor(alg: AlgebraCtx) -> list:
    """Matrices of t -> t * (1 (x) x^v) on A (x) A, for every monomial v."""
    T = alg.tensor_square
    return [T.left_mult(alg.embed_right(alg.monomial(alg.exps[v]))) for v in range(alg.dim)]


def iota(h: Hopf, alg: AlgebraCtx) -> np.ndarray:
    """A^e -> phi_Delta(A), alpha (x) beta -> sum alpha_1 (x) alpha_2 beta."""
    F = alg.field
    D = alg.coproduct_matrix(h)
    d = alg.dim
    right = _right_mult_tensor(alg)
    out = la.zeros(d * d, d * d)
    for u in range(d):
        for v in range(d):
            out[:, u * d + v] = la.matvec(F, right[v], D[:, u])
    return out


def iota_inv(h: Hopf, alg: AlgebraCtx) -> np.ndarray:
    """phi_Delta(A) -> A^e, alpha (x) beta -> sum alpha_1 (x) sigma(alpha_2) beta."""
    F = alg.field
    D = alg.coproduct_matrix(h)
    S = alg.antipode_matrix(h)
    d = alg.dim
    twist = la.matmul(F, la.kron(F, la.identity(d), S), D)
    right = _right_mult_tensor(alg)
    out = la.zeros(d * d, d * d)
    for u in range(d):
        for v in range(d):
            out[:, u * d + v] = la.matvec(F, right[v], twist[:, u])
    return out


def kappa_weight(h: Hopf, alg: AlgebraCtx, j) -> np.ndarray:
    """w_j = prod over odd j_i of (1 + x_i) for Gr, and 1 for Lie."""
    w = alg.one()
    if h is Hopf.GR:
        for i, x in enumerate(j):
            if x % 2:
                w = alg.mul(w, alg.add(alg.one(), alg.gen(i)))
    return w


@dataclass(eq=False)
class Kappa:
    """The chain map Q -> phi_Delta(P) on generators: sigma_j -> e_j (x) w_j."""

    h: Hopf
    alg: AlgebraCtx
    P: Resolution
    Q: Resolution | None  # only needed to check the chain-map squares
    images: list  # images[n] : dim phi(P_n) x rank_n

    def modules(self, n: int) -> ModuleRep:
        return phi_functor(self.h, self.P.module(n))


def kappa(h: Hopf, alg: AlgebraCtx, d_max: int, P: Resolution | None = None,
          Q: Resolution | None = None) -> Kappa:
    P = P if P is not None and P.length >= d_max else trivial_resolution(alg, d_max)
    Q = Q if Q is not None and Q.length >= d_max else None
    d = alg.dim
    images = []
    for n in range(d_max + 1):
        s = P.ranks[n]
        img = la.zeros(s * d * d, s)
        for t, j in enumerate(P.labels[n]):
            img[(t * d) * d:(t * d + 1) * d, t] = kappa_weight(h, alg, j)
        images.append(img)
    return Kappa(h, alg, P, Q, images)


def check_kappa(K: Kappa, upto: int) -> dict:
    """Chain-map squares on generators and the augmentation square."""
    alg = K.alg
    F = alg.field
    d = alg.dim
    Q = K.Q if K.Q is not None and K.Q.length >= upto else bimodule_resolution(alg, upto)
    out = {}
    # augmentation: phi(eps) kappa_0(sigma_0) must be 1 in k (x) A = A
    aug = la.kron(F, K.P.augmentation, la.identity(d))
    out["augmentation"] = bool((la.matvec(F, aug, K.images[0][:, 0]) == alg.one()).all())
    for n in range(1, upto + 1):
        lhs = la.matmul(F, la.kron(F, K.P.diff(n), la.identity(d)), K.images[n])
        mod = K.modules(n - 1)
        rhs = la.zeros(*lhs.shape)
        for (s, t), a in Q.coefs[n - 1].items():
            rhs[:, t] = F.add(rhs[:, t], mod.apply(a, K.images[n - 1][:, s]))
        out[f"square_{n}"] = bool((lhs == rhs).all())
    return out


@dataclass(frozen=True)
class HHClass:
    """A functional Q_n -> A on the generators sigma_j, with values in A."""

    alg: AlgebraCtx
    degree: int
    values: tuple  # ((j, A-element as tuple), ...) sorted, nonzero only

    @classmethod
    def make(cls, alg, degree, mapping: dict) -> "HHClass":
        vals = tuple(sorted((tuple(j), tuple(int(x) for x in a)) for j, a in mapping.items()
                            if np.asarray(a).any()))
        return cls(alg, degree, vals)

    def value(self, j) -> np.ndarray:
        for jj, a in self.values:
            if jj == tuple(j):
                return np.array(a, dtype=np.int64)
        return self.alg.zero()

    def is_zero(self) -> bool:
        return not self.values

    def mul_chi(self, other: "HHClass") -> "HHClass":
        """Product on the sign-free chi-subring (all multidegrees even)."""
        for j, _ in self.values + other.values:
            if any(x % 2 for x in j):
                raise ValueError("product implemented only for classes supported on chi-monomials")
        alg = self.alg
        out: dict = {}
        for j, a in self.values:
            for k, b in other.values:
                jk = tuple(x + y for x, y in zip(j, k))
                prod = alg.mul(np.array(a), np.array(b))
                out[jk] = alg.add(out.get(jk, alg.zero()), prod)
        return HHClass.make(alg, self.degree + other.degree, out)

    def format(self) -> str:
        if self.is_zero():
            return "0"
        alg = self.alg
        parts = []
        for j, a in self.values:
            mono = monomial_name(alg.p, j, eta="d", zeta="chi")
            coef = alg.format(np.array(a))
            if mono == "1":
                parts.append(coef)
            elif coef == "1":
                parts.append(mono)
            else:
                if " + " in coef:
                    coef = f"({coef.replace(' ', '')})"
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts)

    def __str__(self):
        return self.format()


def phi_map(h: Hopf, c: CohClass, alg: AlgebraCtx, K: Kappa | None = None) -> HHClass:
    """Phi_Delta(c): pull phi_Delta(theta_c) back along kappa, read in phi(k) = A."""
    F = alg.field
    n = c.degree
    K = K if K is not None and K.h is h and len(K.images) > n else kappa(h, alg, n)
    P = K.P
    d = alg.dim
    theta = la.zeros(1, P.dim(n))
    theta[0, np.arange(P.ranks[n]) * d] = c.vector(P.labels[n])
    phi_theta = la.kron(F, theta, la.identity(d))
    vals = la.matmul(F, phi_theta, K.images[n])
    return HHClass.make(alg, n, {j: vals[:, t] for t, j in enumerate(P.labels[n])})


def bimodule_tensor_complex(Q: Resolution, M: ModuleRep) -> FreeComplex:
    """Q (x)_A M, a free resolution of A (x)_A M = M over A (left slot)."""
    alg = M.alg
    F = alg.field
    d, m = alg.dim, M.dim
    rho = M.monomial_actions
    Lx = [alg.left_mult(alg.monomial(alg.exps[u])) for u in range(d)]

    def act(a):
        out = la.zeros(d * m, d * m)
        for idx in np.nonzero(a)[0]:
            u, v = divmod(int(idx), d)
            out = F.add(out, F.mul(la.kron(F, Lx[u], rho[v]), int(a[idx])))
        return out

    mods, gens, diffs = [], [], []
    for n in range(Q.length + 1):
        s = Q.ranks[n]
        fr = free_module(alg, s)
        mods.append(ModuleRep(alg, tuple(la.kron(F, g, la.identity(m)) for g in fr.gens)))
        g = la.zeros(s * d * m, s * m)
        g[_generator_columns(s, d, m), np.arange(s * m)] = 1
        gens.append(g)
        if n:
            D = la.zeros(Q.ranks[n - 1] * d * m, s * d * m)
            blk = d * m
            for (a, b), coef in Q.coefs[n - 1].items():
                D[a * blk:(a + 1) * blk, b * blk:(b + 1) * blk] = act(coef)
            diffs.append(D)
    aug = np.concatenate(rho, axis=1)
    return FreeComplex(alg, M, mods, diffs, aug, gens)


def psi_map(M: ModuleRep, hc: HHClass, C: FreeComplex) -> ExtClass:
    """Psi^M(hc): the cocycle sigma_j (x) m -> hc(sigma_j) m on Q (x)_A M."""
    F = M.field
    labels = multidegrees(M.alg.r, hc.degree)
    blocks = [M.action(hc.value(j)) for j in labels]
    vals = np.concatenate(blocks, axis=1) if blocks else la.zeros(M.dim, 0)
    return ExtClass(C, hc.degree, M, vals)


@dataclass
class FactorizationReport:
    h: Hopf
    cls: str
    module_dim: int
    checks: dict = field(default_factory=dict)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def verify_factorization(h: Hopf, c: CohClass, M: ModuleRep, phi_hopf: Hopf | None = None,
                         P: Resolution | None = None, Q: Resolution | None = None) -> FactorizationReport:
    """Check Theta^M(c) = Psi^M(Phi(c)) in Ext^n(M, M).

    Theta lives on P (x) M and Psi on Q (x)_A M; a comparison chain map
    Q (x)_A M -> P (x) M over id_M transports Theta, and the difference must be a
    coboundary.  ``phi_hopf`` substitutes another structure's Phi for negative tests.
    """
    alg = M.alg
    n = c.degree
    phi_hopf = phi_hopf or h
    P = P if P is not None and P.length >= n + 1 else trivial_resolution(alg, n + 1)
    Q = Q if Q is not None and Q.length >= n + 1 else bimodule_resolution(alg, n + 1)
    rep = FactorizationReport(h, c.format(), M.dim)
    PM = tensor_complex(h, P, M)
    QM = bimodule_tensor_complex(Q, M)
    theta = theta_on(PM, c, P)
    hc = phi_map(phi_hopf, c, alg, kappa(phi_hopf, alg, n, P, Q))
    psi = psi_map(M, hc, QM)
    rep.checks["theta_cocycle"] = is_cocycle(theta)
    rep.checks["psi_cocycle"] = is_cocycle(psi)
    C = comparison_maps(QM, PM, n)
    pulled = pull_back(theta, C[n], QM)
    diff = ExtClass(QM, n, M, M.field.sub(pulled.values, psi.values))
    G = coboundary_witness(diff)
    rep.checks["difference_is_coboundary"] = G is not None
    if G is None:
        nz = np.argwhere(diff.values)
        rep.detail = f"first nonzero entry of the difference at {tuple(nz[0])}" if len(nz) else ""
    return rep
