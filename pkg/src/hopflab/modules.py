"""Finite-dimensional modules over the truncated algebra as commuting nilpotent matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg as la
from .algebra import AlgebraCtx, Hopf


class ModuleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ModuleRep:
    alg: AlgebraCtx
    gens: tuple

    def __post_init__(self):
        gens = tuple(np.array(g, dtype=np.int64) for g in self.gens)
        object.__setattr__(self, "gens", gens)
        if len(gens) != self.alg.r:
            raise ModuleError(f"expected {self.alg.r} generator matrices, got {len(gens)}")
        d = gens[0].shape[0] if gens else 0
        for g in gens:
            if g.shape != (d, d):
                raise ModuleError("generator matrices must be square of equal size")
        for g in gens:
            g.setflags(write=False)

    @classmethod
    def make(cls, alg: AlgebraCtx, gens) -> "ModuleRep":
        """Validated constructor: commuting and p-nilpotent generators."""
        M = cls(alg, tuple(gens))
        F = alg.field
        q = alg.field.q
        for g in M.gens:
            if g.size and (g.min() < 0 or g.max() >= q):
                raise ModuleError("matrix entries out of range for " + repr(F))
        for i, a in enumerate(M.gens):
            if la.mat_power(F, a, alg.p).any():
                raise ModuleError(f"generator x{i + 1} does not satisfy x^p = 0")
            for j in range(i + 1, len(M.gens)):
                b = M.gens[j]
                if (la.matmul(F, a, b) != la.matmul(F, b, a)).any():
                    raise ModuleError(f"generators x{i + 1} and x{j + 1} do not commute")
        return M

    @property
    def dim(self) -> int:
        return self.gens[0].shape[0]

    @property
    def field(self):
        return self.alg.field

    @cached_property
    def monomial_actions(self) -> list:
        """rho(x^b) for every basis monomial b, in monomial order."""
        alg, F = self.alg, self.field
        out = [None] * alg.dim
        out[0] = la.identity(self.dim)
        for b in range(1, alg.dim):
            e = alg.exps[b].copy()
            i = int(np.nonzero(e)[0][-1])
            e[i] -= 1
            out[b] = la.matmul(F, self.gens[i], out[alg.index(e)])
        return out

    def action(self, a) -> np.ndarray:
        """Matrix by which the algebra element a acts."""
        F = self.field
        out = la.zeros(self.dim, self.dim)
        for b in np.nonzero(np.asarray(a))[0]:
            out = F.add(out, F.mul(self.monomial_actions[b], int(a[b])))
        return out

    def apply(self, a, V) -> np.ndarray:
        """a acting on the columns of V, without forming every monomial matrix."""
        alg, F = self.alg, self.field
        a = np.asarray(a)
        V = np.asarray(V, dtype=np.int64)
        if V.ndim == 1:
            return self.apply(a, V[:, None])[:, 0]
        imgs = [None] * alg.dim
        imgs[0] = V
        out = F.mul(V, int(a[0]))
        for b in range(1, alg.dim):
            e = alg.exps[b].copy()
            i = int(np.nonzero(e)[0][-1])
            e[i] -= 1
            imgs[b] = la.matmul(F, self.gens[i], imgs[alg.index(e)])
            if a[b]:
                out = F.add(out, F.mul(imgs[b], int(a[b])))
        return out

    @cached_property
    def socle_element_action(self) -> np.ndarray:
        return self.monomial_actions[-1]

    def __repr__(self):
        return f"ModuleRep(dim={self.dim}, r={self.alg.r}, {self.field!r})"


# --- constructors -------------------------------------------------------------

def trivial_module(alg: AlgebraCtx) -> ModuleRep:
    return ModuleRep(alg, tuple(la.zeros(1, 1) for _ in range(alg.r)))


def zero_module(alg: AlgebraCtx) -> ModuleRep:
    return ModuleRep(alg, tuple(la.zeros(0, 0) for _ in range(alg.r)))


def free_module(alg: AlgebraCtx, rank: int = 1) -> ModuleRep:
    """A^rank with generator t spanning coordinates t*p^r .. (t+1)*p^r - 1."""
    I = la.identity(rank)
    return ModuleRep(alg, tuple(la.kron(alg.field, I, g) for g in alg.gen_mats))


def direct_sum(*mods: ModuleRep) -> ModuleRep:
    alg = mods[0].alg
    return ModuleRep(alg, tuple(la.block_diag([m.gens[i] for m in mods]) for i in range(alg.r)))


def tensor(h: Hopf, M: ModuleRep, N: ModuleRep) -> ModuleRep:
    """Tensor product over k with the action through the chosen coproduct."""
    if M.alg != N.alg:
        raise ModuleError("modules over different algebras")
    F = M.field
    Im, In = la.identity(M.dim), la.identity(N.dim)
    gens = []
    for X, Y in zip(M.gens, N.gens):
        g = F.add(la.kron(F, X, In), la.kron(F, Im, Y))
        if h is Hopf.GR:
            g = F.add(g, la.kron(F, X, Y))
        gens.append(g)
    return ModuleRep(M.alg, tuple(gens))


def submodule(M: ModuleRep, basis: np.ndarray, rows=None) -> ModuleRep:
    """Submodule spanned by the columns of ``basis`` (an image_basis output).

    ``rows`` are the coordinates where ``basis`` is the identity; when omitted
    the basis is brought into that form first.
    """
    F = M.field
    if rows is None:
        basis, rows = la.image_basis(F, basis)
    if basis.shape[1] == 0:
        return zero_module(M.alg)
    gens = tuple(la.matmul(F, X, basis)[rows, :] for X in M.gens)
    return ModuleRep(M.alg, gens)


def quotient(M: ModuleRep, sub_basis: np.ndarray):
    """M / U; returns (module, projection matrix, section matrix)."""
    F = M.field
    d = M.dim
    if sub_basis.shape[1]:
        R, piv = la.row_space(F, sub_basis.T)
    else:
        R, piv = la.zeros(0, d), []
    free = [c for c in range(d) if c not in set(piv)]
    # reduce v modulo U: v - sum_i v[piv_i] * R_i, then read the free coordinates
    reduce_mat = la.identity(d)
    if piv:
        reduce_mat = F.sub(reduce_mat, la.matmul(F, R.T, la.identity(d)[piv, :]))
    proj = reduce_mat[free, :]
    section = la.identity(d)[:, free]
    gens = tuple(la.matmul(F, proj, la.matmul(F, X, section)) for X in M.gens)
    return ModuleRep(M.alg, gens), proj, section


def radical_basis(M: ModuleRep) -> np.ndarray:
    if M.dim == 0:
        return la.zeros(0, 0)
    return la.image_basis(M.field, np.concatenate(M.gens, axis=1))[0]


def minimal_generators(M: ModuleRep) -> np.ndarray:
    """Standard basis vectors complementing rad M (deterministic choice)."""
    F = M.field
    rad = radical_basis(M)
    if rad.shape[1]:
        _, piv = la.rref(F, rad.T)
    else:
        piv = []
    # pivots of the reduced radical basis are the coordinates it already covers
    comp = [c for c in range(M.dim) if c not in set(piv)]
    return la.identity(M.dim)[:, comp]


def cover_map(M: ModuleRep, gens: np.ndarray) -> np.ndarray:
    """Matrix of A^s -> M sending the t-th free generator to gens[:, t]."""
    F = M.field
    s = gens.shape[1]
    d = M.alg.dim
    out = la.zeros(M.dim, s * d)
    for b, rho in enumerate(M.monomial_actions):
        out[:, np.arange(s) * d + b] = la.matmul(F, rho, gens)
    return out


def extend_from_generators(target: ModuleRep, images: np.ndarray) -> np.ndarray:
    """Images of all basis vectors x^b e_t of A^s under the A-map e_t -> images[:, t]."""
    return cover_map(target, images)


def socle_basis(M: ModuleRep) -> np.ndarray:
    return la.kernel_basis(M.field, np.concatenate(M.gens, axis=0))


# --- homomorphisms --------------------------------------------------------------

def hom_space(M: ModuleRep, N: ModuleRep) -> list:
    """Basis of Hom_A(M, N) as dim(N) x dim(M) matrices.

    Solved on a presentation of M: a map is fixed by the images of minimal
    generators, subject to the minimal relations among them.
    """
    if M.alg != N.alg:
        raise ModuleError("modules over different algebras")
    F = M.field
    if M.dim == 0 or N.dim == 0:
        return []
    alg = M.alg
    d = alg.dim
    G = minimal_generators(M)
    s = G.shape[1]
    pi = cover_map(M, G)
    K = la.kernel_basis(F, pi)
    if K.shape[1]:
        free_s = free_module(alg, s)
        radK = np.concatenate([la.matmul(F, X, K) for X in free_s.gens], axis=1)
        _, piv = la.rref(F, np.concatenate([radK, K], axis=1))
        rels = K[:, [c - radK.shape[1] for c in piv if c >= radK.shape[1]]]
    else:
        rels = K
    n = N.dim
    if rels.shape[1]:
        system = la.zeros(rels.shape[1] * n, s * n)
        for b, rho in enumerate(N.monomial_actions):
            Kb = rels[np.arange(s) * d + b, :]
            if Kb.any():
                system = F.add(system, la.kron(F, Kb.T, rho))
        sols = la.kernel_basis(F, system)
    else:
        sols = la.identity(s * n)
    _, cols = la.rref(F, pi)
    pinv = la.inverse(F, pi[:, cols])
    out = []
    for v in sols.T:
        images = v.reshape(s, n).T
        Z = cover_map(N, images)
        out.append(la.matmul(F, Z[:, cols], pinv))
    return out


def is_module_map(M: ModuleRep, N: ModuleRep, f: np.ndarray) -> bool:
    F = M.field
    return all((la.matmul(F, f, X) == la.matmul(F, Y, f)).all() for X, Y in zip(M.gens, N.gens))


def _combine(F, basis, coeffs):
    out = la.zeros(*basis[0].shape)
    for c, b in zip(coeffs, basis):
        if c:
            out = F.add(out, F.mul(b, int(c)))
    return out


# --- invariants -------------------------------------------------------------------

@dataclass(frozen=True)
class JordanType:
    multiplicities: tuple

    @property
    def dim(self) -> int:
        return sum((b + 1) * m for b, m in enumerate(self.multiplicities))

    def __str__(self):
        parts = [f"[{b + 1}]^{m}" for b, m in enumerate(self.multiplicities) if m]
        return " ".join(reversed(parts)) if parts else "0"


def jordan_type(F, N: np.ndarray, p: int) -> JordanType:
    """Block multiplicities of a nilpotent matrix with N^p = 0."""
    ranks = [N.shape[0]]
    P = N
    for k in range(p):
        ranks.append(la.rank(F, P))
        if k < p - 1:
            P = la.matmul(F, P, N)
    ranks.append(0)
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, p + 2)]
    mult = tuple(at_least[b] - at_least[b + 1] for b in range(p))
    return JordanType(mult)


def restrict_along(M: ModuleRep, alpha) -> tuple[np.ndarray, JordanType]:
    F = M.field
    alpha = [int(a) for a in alpha]
    if not any(alpha):
        raise ModuleError("restriction point must be nonzero")
    N = la.zeros(M.dim, M.dim)
    for a, X in zip(alpha, M.gens):
        if a:
            N = F.add(N, F.mul(X, a))
    return N, jordan_type(F, N, M.alg.p)


def radical_layers(M: ModuleRep) -> tuple:
    """dim rad^k M for k = 0, 1, ... until zero."""
    F = M.field
    dims = [M.dim]
    cur = la.identity(M.dim)
    while cur.shape[1]:
        cur = la.image_basis(F, np.concatenate([la.matmul(F, X, cur) for X in M.gens], axis=1))[0]
        dims.append(cur.shape[1])
    return tuple(dims)


def socle_layers(M: ModuleRep) -> tuple:
    """dim soc^k M for k = 1, 2, ... until everything."""
    F = M.field
    dims = []
    k = 1
    cur = None
    while True:
        mats = [m for m, e in zip(M.monomial_actions, M.alg.degrees) if e == k]
        if not mats:
            dims.append(M.dim)
            break
        cur = la.kernel_basis(F, np.concatenate(mats, axis=0))
        dims.append(cur.shape[1])
        if cur.shape[1] == M.dim:
            break
        k += 1
    return tuple(dims)


def invariant_profile(M: ModuleRep, points=None) -> dict:
    """Cheap isomorphism invariants, all exact."""
    F = M.field
    prof = {"dim": M.dim}
    if M.dim == 0:
        return prof
    prof["ranks"] = tuple(la.rank(F, X) for X in M.gens)
    prof["radical_layers"] = radical_layers(M)
    prof["socle_layers"] = socle_layers(M)
    r = M.alg.r
    pts = list(points) if points is not None else [tuple(int(i == j) for j in range(r)) for i in range(r)]
    prof["jordan"] = tuple((pt, str(restrict_along(M, pt)[1])) for pt in pts)
    return prof


# --- isomorphism ------------------------------------------------------------------

@dataclass
class Verdict:
    outcome: str  # "yes" | "no" | "inconclusive"
    witness: np.ndarray | None = None
    reason: str = ""

    def __bool__(self):
        return self.outcome == "yes"


def is_isomorphic(M: ModuleRep, N: ModuleRep, trials: int = 128, seed: int = 0,
                  use_hom_dims: bool = True) -> Verdict:
    """Sound isomorphism test: a witness for yes, a differing invariant for no."""
    F = M.field
    if M.dim != N.dim:
        return Verdict("no", reason=f"dimensions differ ({M.dim} vs {N.dim})")
    if M.dim == 0:
        return Verdict("yes", la.zeros(0, 0), "zero modules")
    pm, pn = invariant_profile(M), invariant_profile(N)
    for key in pm:
        if pm[key] != pn[key]:
            return Verdict("no", reason=f"invariant {key} differs: {pm[key]} vs {pn[key]}")
    if all((X == Y).all() for X, Y in zip(M.gens, N.gens)):
        return Verdict("yes", la.identity(M.dim), "identical matrices")
    H = hom_space(M, N)
    if use_hom_dims:
        hmm = len(hom_space(M, M))
        if hmm != len(H):
            return Verdict("no", reason=f"dim Hom(M,N)={len(H)} but dim Hom(M,M)={hmm}")
        hnn = len(hom_space(N, N))
        if hnn != len(H):
            return Verdict("no", reason=f"dim Hom(M,N)={len(H)} but dim Hom(N,N)={hnn}")
    if not H:
        return Verdict("no", reason="no nonzero homomorphisms")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        f = _combine(F, H, rng.integers(0, F.q, len(H)))
        if la.is_invertible(F, f):
            if not is_module_map(M, N, f):
                raise AssertionError("hom_space produced a non-module map")
            return Verdict("yes", f, "invertible homomorphism found")
    return Verdict("inconclusive", reason=f"no invertible map in {trials} random trials")


# --- free summands ------------------------------------------------------------------

@dataclass
class StripResult:
    core: ModuleRep
    free_rank: int
    basis_change: np.ndarray  # columns: free part basis then core basis


def strip_free_summands(M: ModuleRep) -> StripResult:
    """Split M = core + A^f using the socle element x_1^{p-1}...x_r^{p-1}.

    A-span of vectors whose socle images are independent is free and, A being
    self-injective, a direct summand; the complement is the kernel of a
    retraction built from Frobenius functionals.
    """
    F = M.field
    alg = M.alg
    d = alg.dim
    if M.dim == 0:
        return StripResult(M, 0, la.zeros(0, 0))
    Nmat = M.socle_element_action
    _, piv = la.rref(F, Nmat)
    f = len(piv)
    if f == 0:
        return StripResult(M, 0, la.identity(M.dim))
    V = la.identity(M.dim)[:, piv]
    Fb = cover_map(M, V)  # columns (t, b) = x^b v_t
    # functionals phi_i with phi_i(x^b v_t) = 1 iff t = i and b is the top monomial
    target = la.zeros(f, f * d)
    target[np.arange(f), np.arange(f) * d + (d - 1)] = 1
    Phi = la.solve(F, Fb.T, target.T)
    if Phi is None:
        raise AssertionError("free part is not independent")
    Phi = Phi.T
    # core = { m : phi_i(x^b m) = 0 for all i, b }
    rows = np.concatenate([la.matmul(F, Phi, rho) for rho in M.monomial_actions], axis=0)
    C = la.kernel_basis(F, rows)
    core = submodule(M, C)
    Cb, _ = la.image_basis(F, C)
    change = np.concatenate([Fb, Cb], axis=1)
    return StripResult(core, f, change)


def is_stably_isomorphic(M: ModuleRep, N: ModuleRep, trials: int = 128, seed: int = 0) -> Verdict:
    cm = strip_free_summands(M).core
    cn = strip_free_summands(N).core
    return is_isomorphic(cm, cn, trials, seed)


# --- decomposition ------------------------------------------------------------------

@dataclass
class Summand:
    module: ModuleRep
    certified: bool
    note: str = ""


def _krylov_minpoly(F, phi, v):
    """Monic minimal polynomial of v under phi, coefficients constant first."""
    n = phi.shape[0]
    vecs = [v]
    for _ in range(n):
        vecs.append(la.matvec(F, phi, vecs[-1]))
        K = np.stack(vecs[:-1], axis=1)
        sol = la.solve(F, K, vecs[-1])
        if sol is not None:
            return [int(c) for c in F.neg(sol)] + [1]
    raise AssertionError("Krylov sequence did not terminate")


def _poly_roots(F, coeffs):
    xs = F.elements()
    val = np.zeros_like(xs)
    for c in reversed(coeffs):
        val = F.add(F.mul(val, xs), c)
    return [int(x) for x in xs[val == 0]]


def _fitting_split(M: ModuleRep, phi: np.ndarray):
    """For phi - lam not nilpotent but singular, return (ker, im) of its stable power."""
    F = M.field
    n = M.dim
    P = phi
    k = 1
    while k < n:
        P = la.matmul(F, P, P)
        k *= 2
    K = la.kernel_basis(F, P)
    I, _ = la.image_basis(F, P)
    return K, I


def _local_certificate(M: ModuleRep, E: list, rng, trials: int):
    """Either a splitting endomorphism or a proof that End(M) is local.

    Returns ("split", K, I) or ("local", None, None) or ("unknown", None, None).
    """
    F = M.field
    n = M.dim
    lams = []
    candidates = [(e, True) for e in E] + [(None, False)] * trials
    for phi, is_basis in candidates:
        if phi is None:
            phi = _combine(F, E, rng.integers(0, F.q, len(E)))
        v = rng.integers(0, F.q, n)
        if not v.any():
            v[0] = 1
        roots = _poly_roots(F, _krylov_minpoly(F, phi, v))
        if not roots:
            if is_basis:
                lams = None
            continue
        lam = roots[0]
        shifted = F.sub(phi, F.mul(la.identity(n), lam))
        if la.mat_power(F, shifted, n).any():
            K, I = _fitting_split(M, shifted)
            return "split", K, I
        if is_basis and lams is not None:
            lams.append(lam)
    if lams is None or len(lams) != len(E):
        return "unknown", None, None
    # J = span{phi_t - lam_t}; End(M) is local iff J is a nilpotent ideal of codim 1
    J = [F.sub(e, F.mul(la.identity(n), lam)) for e, lam in zip(E, lams)]
    Jflat = np.stack([j.ravel() for j in J], axis=1)
    Jb, _ = la.image_basis(F, Jflat)
    if Jb.shape[1] != len(E) - 1:
        return "unknown", None, None
    prods = []
    for j in J:
        for e in E:
            prods.append(la.matmul(F, j, e).ravel())
            prods.append(la.matmul(F, e, j).ravel())
    if la.rank(F, np.concatenate([Jb, np.stack(prods, axis=1)], axis=1)) != Jb.shape[1]:
        return "unknown", None, None
    # nilpotent ideal: every element of J is nilpotent since J^n spans products of n elements
    power = [j for j in J]
    for _ in range(n):
        nxt = []
        basis, _ = la.image_basis(F, np.stack([x.ravel() for x in power], axis=1))
        if basis.shape[1] == 0:
            return "local", None, None
        mats = [basis[:, c].reshape(n, n) for c in range(basis.shape[1])]
        for a in mats:
            for j in J:
                nxt.append(la.matmul(F, a, j))
        power = nxt
    basis, _ = la.image_basis(F, np.stack([x.ravel() for x in power], axis=1))
    return ("local" if basis.shape[1] == 0 else "unknown"), None, None


def decompose(M: ModuleRep, seed: int = 0, trials: int = 64) -> list:
    """Indecomposable summands with multiplicity (Fitting splittings)."""
    rng = np.random.default_rng(seed)
    out: list[Summand] = []
    stack = [M]
    alg = M.alg
    while stack:
        X = stack.pop()
        if X.dim == 0:
            continue
        st = strip_free_summands(X)
        for _ in range(st.free_rank):
            out.append(Summand(free_module(alg), True, "free"))
        X = st.core
        if X.dim == 0:
            continue
        if X.dim == 1:
            out.append(Summand(X, True, "one-dimensional"))
            continue
        E = hom_space(X, X)
        verdict, K, I = _local_certificate(X, E, rng, trials)
        if verdict == "split":
            stack.append(submodule(X, I))
            stack.append(submodule(X, K))
        else:
            out.append(Summand(X, verdict == "local", "local endomorphism ring" if verdict == "local"
                               else "no splitting found"))
    return out


def random_module(alg: AlgebraCtx, dim: int, rng, max_gens: int = 2) -> ModuleRep:
    """Random quotient of A^s of the requested dimension.

    Socle vectors of the current quotient are killed one at a time, so each
    step lowers the dimension by exactly one.
    """
    F = alg.field
    d = alg.dim
    s = int(rng.integers(1, max_gens + 1))
    while s * d < dim:
        s += 1
    Fs = free_module(alg, s)
    U = la.zeros(s * d, 0)
    # keep generators minimal: never kill top-layer vectors while avoidable
    while s * d - U.shape[1] > dim:
        Q, proj, section = quotient(Fs, U)
        soc = socle_basis(Q)
        coeffs = rng.integers(0, F.q, soc.shape[1])
        if not coeffs.any():
            coeffs[0] = 1
        v = la.matvec(F, soc, coeffs)
        lifted = la.matvec(F, section, v)
        U = la.image_basis(F, np.concatenate([U, lifted[:, None]], axis=1))[0]
    Q, _, _ = quotient(Fs, U)
    return Q
