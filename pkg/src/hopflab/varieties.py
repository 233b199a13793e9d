"""Rank varieties by point enumeration and the support of a module cut out by S.

Points of P^{r-1} over the module's field are enumerated with the first nonzero
coordinate normalised to 1.  A class sum_a c_a zeta^a of S is evaluated at
alpha by zeta_i -> alpha_i^p: restriction along t -> sum alpha_i x_i sends
zeta_i to alpha_i^p times the generator, the Frobenius twist relating the two
varieties.  At p = 2 this is alpha_i^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import linalg as la
from .algebra import AlgebraCtx, Hopf
from .complexes import annihilator_basis, is_coboundary, tensor_complex, theta_on
from .field import FieldCtx
from .modules import (ModuleRep, direct_sum, is_stably_isomorphic, restrict_along, tensor)
from .resolution import CohClass, Resolution, l_zeta, multidegrees, syzygy, trivial_resolution


def projective_points(F: FieldCtx, r: int) -> list[tuple]:
    pts = []
    for lead in range(r):
        for tail in product(range(F.q), repeat=r - lead - 1):
            pts.append((0,) * lead + (1,) + tuple(tail))
    return pts


def is_free_restriction(M: ModuleRep, alpha) -> bool:
    F = M.field
    p = M.alg.p
    if M.dim % p:
        return False
    N, _ = restrict_along(M, alpha)
    return la.rank(F, la.mat_power(F, N, p - 1)) == M.dim // p


def rank_variety_points(M: ModuleRep) -> list[tuple]:
    return [a for a in projective_points(M.field, M.alg.r) if not is_free_restriction(M, a)]


def s_labels(r: int, degree: int) -> list[tuple]:
    return [j for j in multidegrees(r, degree) if all(x % 2 == 0 for x in j)]


def evaluate(F: FieldCtx, labels, coeffs, alpha, exponent: int | None = None) -> int:
    """Value of sum c_j zeta^(j/2) at alpha under zeta_i -> alpha_i^exponent (default p)."""
    e = F.p if exponent is None else exponent
    total = 0
    for j, c in zip(labels, coeffs):
        if not c:
            continue
        term = int(c)
        for a, x in zip(alpha, j):
            term = int(F.mul(term, F.power(a, e * (x // 2))))
        total = int(F.add(total, term))
    return total


def annihilates_exact(h: Hopf, c: CohClass, M: ModuleRep, res: Resolution | None = None) -> bool:
    """Theta^M(c) = 0 in Ext(M, M), decided by a coboundary solve."""
    res = res if res is not None and res.length >= c.degree else trivial_resolution(alg_of(M), c.degree)
    return is_coboundary(theta_on(tensor_complex(h, res, M), c, res))


def alg_of(M: ModuleRep) -> AlgebraCtx:
    return M.alg


def annihilates(h: Hopf, c: CohClass, M: ModuleRep, trials: int = 128, seed: int = 0) -> str:
    """Splitting criterion: L_c (x) M stably isomorphic to Omega^d(M) + Omega^1(M).

    Returns "yes", "no" or "unknown" (an inconclusive isomorphism search).
    """
    if c.is_zero() or c.degree < 1:
        raise ValueError("annihilation test needs a nonzero class of positive degree")
    L = l_zeta(M.alg, c)
    lhs = tensor(h, L, M)
    rhs = direct_sum(syzygy(M, c.degree), syzygy(M, 1))
    v = is_stably_isomorphic(lhs, rhs, trials, seed)
    return {"yes": "yes", "no": "no"}.get(v.outcome, "unknown")


def annihilator_in_S(h: Hopf, M: ModuleRep, degree: int, res: Resolution) -> tuple[list, np.ndarray]:
    """Basis (columns over the S-monomials of the degree) of the S-part of the annihilator."""
    labels = s_labels(M.alg.r, degree)
    if M.dim == 0:
        return labels, la.identity(len(labels))
    C = tensor_complex(h, res, M)
    return labels, annihilator_basis(C, res, degree, labels)


@dataclass
class SupportResult:
    hopf: Hopf
    points: list
    generators: dict = field(default_factory=dict)  # degree -> (labels, basis)


def support_on_S(h: Hopf, M: ModuleRep, D: int, res: Resolution | None = None) -> SupportResult:
    """Common zero locus of the annihilator of Ext(M, M) in S up to degree D."""
    if D < 2 or D % 2:
        raise ValueError("degree bound must be even and at least 2")
    res = res if res is not None and res.length >= D else trivial_resolution(M.alg, D)
    F = M.field
    out = SupportResult(h, [])
    for d in range(2, D + 1, 2):
        out.generators[d] = annihilator_in_S(h, M, d, res)
    for a in projective_points(F, M.alg.r):
        if all(evaluate(F, labels, B[:, k], a) == 0
               for labels, B in out.generators.values() for k in range(B.shape[1])):
            out.points.append(a)
    return out


@dataclass
class VarietyReport:
    field: str
    rank: list
    support: dict  # Hopf -> list of points
    points: list

    @property
    def equal(self) -> bool:
        return all(set(v) == set(self.rank) for v in self.support.values())

    @property
    def hopf_independent(self) -> bool:
        vals = [set(v) for v in self.support.values()]
        return all(v == vals[0] for v in vals)

    @property
    def passed(self) -> bool:
        return self.equal and self.hopf_independent

    def table(self, F: FieldCtx) -> str:
        def fmt(pt):
            return "[" + ":".join(F.format(x) for x in pt) + "]"

        lines = [f"field {self.field}", "point rank " + " ".join(f"supp_{h}" for h in self.support)]
        for pt in self.points:
            row = [fmt(pt), "1" if pt in self.rank else "0"]
            row += ["1" if pt in v else "0" for v in self.support.values()]
            lines.append(" ".join(row))
        return "\n".join(lines)


def check_variety_equality(M: ModuleRep, D: int, res: Resolution | None = None) -> VarietyReport:
    res = res if res is not None and res.length >= D else trivial_resolution(M.alg, D)
    rank = rank_variety_points(M)
    support = {h: support_on_S(h, M, D, res).points for h in Hopf}
    return VarietyReport(repr(M.field), rank, support, projective_points(M.field, M.alg.r))
