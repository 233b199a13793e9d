"""Explicit isomorphisms L_zeta (x)_Gr M -> L_zeta (x)_Lie M for zeta in S.

Both tensor products P_n (x) M are untwisted to P_n (x) M with A acting on the
left factor only (x^b e (x) m -> sum x_1 e (x) sigma(x_2) m).  In that form the
two differentials differ by the units (1 + z_i)^{+-1}, which the rescaling
e_j (x) m -> e_j (x) w_j^{-1} m absorbs.  The composite chain isomorphism

    x^b e_t (x) m  ->  sum_Gr sum_Lie  x_1' e_t (x) x_1'' w_t^{-1} sigma_Gr(x_2) m

carries L_zeta (x) M into itself when zeta is supported on even multidegrees.
On P_n (x) M it has the form sum_c kron(T_c, rho_M(x^c)), so restricting to
L_zeta (x) M and every check below reduce to Kronecker sums that are decided
without forming the large matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import linalg as la
from .algebra import AlgebraCtx, Hopf
from .hochschild import kappa_weight
from .modules import ModuleRep, tensor
from .resolution import LZeta


@lru_cache(maxsize=32)
def _untwist_retwist(alg: AlgebraCtx, src: Hopf, dst: Hopf) -> np.ndarray:
    """Columns b: sum x_1' (x) x_1'' sigma_src(x_2) in A (x) A (index v * d + c)."""
    F = alg.field
    d = alg.dim
    I = la.identity(d)
    G = la.matmul(F, la.kron(F, I, alg.antipode_matrix(src)), alg.coproduct_matrix(src))
    Dd = alg.coproduct_matrix(dst)
    out = la.zeros(d * d, d)
    # (Delta_dst (x) id) then multiply the last two slots, one left monomial at a time
    for u in range(d):
        right = G[u * d:(u + 1) * d, :]  # sigma_src(x_2) parts paired with x_1 = x^u
        if not right.any():
            continue
        for v in range(d):
            coeffs = Dd[v * d:(v + 1) * d, u]  # x^u -> sum x^v (x) (coeffs . x^c)
            if coeffs.any():
                blk = la.matmul(F, alg.left_mult(coeffs), right)
                out[v * d:(v + 1) * d, :] = F.add(out[v * d:(v + 1) * d, :], blk)
    return out


def _transfer_tensor(alg: AlgebraCtx, src: Hopf, dst: Hopf, w) -> np.ndarray:
    F = alg.field
    return la.matmul(F, la.kron(F, la.identity(alg.dim), alg.left_mult(w)), _untwist_retwist(alg, src, dst))


def transfer_blocks(L: LZeta, src: Hopf = Hopf.GR, dst: Hopf = Hopf.LIE) -> list:
    """T_c on P_{d-1} for every monomial c (list indexed by c)."""
    alg = L.res.alg
    d = alg.dim
    n = L.cls.degree - 1
    labels = L.res.labels[n]
    s = len(labels)
    T = [la.zeros(s * d, s * d) for _ in range(d)]
    for t, j in enumerate(labels):
        w = kappa_weight(Hopf.GR, alg, j)
        # src Gr: multiply by w^{-1}; the reverse direction multiplies by w
        w = alg.inverse_unit(w) if src is Hopf.GR else w
        tau = _transfer_tensor(alg, src, dst, w)
        blk = slice(t * d, (t + 1) * d)
        for c in range(d):
            T[c][blk, blk] = tau[np.arange(d) * d + c, :]
    return T


@dataclass
class WitnessReport:
    preserves: bool
    linear: bool
    invertible: bool
    blocks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.preserves and self.linear and self.invertible


def restricted_blocks(L: LZeta, T: list) -> tuple[list, list]:
    """S_c = (T_c B)[rows] and the residuals T_c B - B S_c."""
    F = L.res.alg.field
    B, rows = L.basis, L.rows
    S, R = [], []
    for Tc in T:
        TB = la.matmul(F, Tc, B)
        Sc = TB[rows, :]
        S.append(Sc)
        R.append(F.sub(TB, la.matmul(F, B, Sc)))
    return S, R


def _group_products(F, alg, left: list, right: list):
    """sum_{c, c'} kron(left_c' right_c, rho_{c + c'}) grouped by monomial index."""
    out = {}
    for c in range(alg.dim):
        if not right[c].any():
            continue
        for c2 in range(alg.dim):
            if not left[c2].any():
                continue
            idx = int(alg.mul_index[c2, c])
            if idx < 0:
                continue
            prod = la.matmul(F, left[c2], right[c])
            out[idx] = F.add(out[idx], prod) if idx in out else prod
    return out


def tensor_s_witness(L: LZeta, M: ModuleRep) -> WitnessReport:
    """Build W : L (x)_Gr M -> L (x)_Lie M and certify it with Kronecker-sum identities."""
    alg = L.res.alg
    F = alg.field
    rho = M.monomial_actions
    T = transfer_blocks(L, Hopf.GR, Hopf.LIE)
    S, R = restricted_blocks(L, T)
    preserves = la.kron_sum_is_zero(F, [(Rc, rho[c]) for c, Rc in enumerate(R) if Rc.any()])
    Lg = L.module.gens
    linear = True
    for i in range(alg.r):
        terms = []
        for c, Sc in enumerate(S):
            if not Sc.any():
                continue
            SL = la.matmul(F, Sc, Lg[i])
            LS = la.matmul(F, Lg[i], Sc)
            terms.append((F.sub(SL, LS), rho[c]))
            terms.append((SL, la.matmul(F, rho[c], M.gens[i])))
        if not la.kron_sum_is_zero(F, [t for t in terms if t[0].any()]):
            linear = False
            break
    Tinv = transfer_blocks(L, Hopf.LIE, Hopf.GR)
    Sinv, Rinv = restricted_blocks(L, Tinv)
    grouped = _group_products(F, alg, Sinv, S)
    terms = [(v, rho[idx]) for idx, v in grouped.items()]
    terms.append((F.neg(la.identity(L.dim)), la.identity(M.dim)))
    invertible = la.kron_sum_is_zero(F, terms)
    return WitnessReport(preserves, linear, invertible, S)


def witness_matrix(S: list, M: ModuleRep) -> np.ndarray:
    F = M.field
    out = None
    for c, Sc in enumerate(S):
        if Sc.any():
            term = la.kron(F, Sc, M.monomial_actions[c])
            out = term if out is None else F.add(out, term)
    return out


def is_module_iso(F, Mg: ModuleRep, Ml: ModuleRep, W: np.ndarray) -> bool:
    if W is None or W.shape != (Ml.dim, Mg.dim):
        return False
    ok = all((la.matmul(F, W, X) == la.matmul(F, Y, W)).all() for X, Y in zip(Mg.gens, Ml.gens))
    return ok and la.is_invertible(F, W)


def swap_permutation(a: int, b: int) -> np.ndarray:
    """Matrix of V (x) U -> U (x) V for dim V = a, dim U = b."""
    P = la.zeros(a * b, a * b)
    i, j = np.meshgrid(np.arange(a), np.arange(b), indexing="ij")
    P[(j * a + i).ravel(), (i * b + j).ravel()] = 1
    return P


def multi_factor_witness(Ls: list, last: ModuleRep) -> tuple[np.ndarray, ModuleRep, ModuleRep]:
    """Witness for L_1 (x) ... (x) L_k (x) N, Gr versus Lie, with every L_i over S.

    Peels factors from the left: W = (I (x) W_rest) o W_1, where W_1 is the
    single-factor witness for L_1 against the Gr tensor of the remaining factors.
    """
    F = last.field
    if not Ls:
        return la.identity(last.dim), last, last
    W_rest, rest_gr, rest_lie = multi_factor_witness(Ls[1:], last)
    rep = tensor_s_witness(Ls[0], rest_gr)
    if not rep.ok:
        raise AssertionError("single-factor witness failed")
    W1 = witness_matrix(rep.blocks, rest_gr)
    W = la.matmul(F, la.kron(F, la.identity(Ls[0].dim), W_rest), W1)
    return W, tensor(Hopf.GR, Ls[0].module, rest_gr), tensor(Hopf.LIE, Ls[0].module, rest_lie)
