"""Seeded experiments and verification grids behind the command-line interface.

Each runner returns a :class:`Report`: deterministic plain-text lines plus a
list of failures.  Trial ``t`` of a run with master seed ``s`` draws from
``numpy.random.default_rng([s, t])``, so results do not depend on trial order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import AlgebraCtx, Hopf, verify_hopf_axioms
from .field import FieldCtx, field_create
from .hochschild import (bimodule_resolution, check_kappa, iota, iota_inv, kappa, phi_map,
                         verify_factorization)
from .modules import (JordanType, ModuleRep, decompose, is_isomorphic, random_module, restrict_along,
                      tensor)
from .resolution import (CohClass, check_resolution, l_zeta_data, omega_k, random_class,
                         rank_formula, trivial_resolution)
from .varieties import rank_variety_points
from .witness import is_module_iso, multi_factor_witness, tensor_s_witness

EXIT_OK, EXIT_MATH, EXIT_PARSE, EXIT_INVARIANT = 0, 2, 3, 4


@dataclass
class Report:
    title: str
    lines: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def add(self, line: str = "") -> None:
        self.lines.append(line)

    def fail(self, line: str) -> None:
        self.failures.append(line)
        self.lines.append("FAIL " + line)

    def check(self, ok: bool, label: str) -> bool:
        if ok:
            self.lines.append("pass " + label)
        else:
            self.fail(label)
        return ok

    @property
    def status(self) -> int:
        return EXIT_MATH if self.failures else EXIT_OK

    def text(self) -> str:
        out = [f"# {self.title}"] + self.lines
        out.append(f"result: {'FAIL' if self.failures else 'PASS'}"
                   + (f" ({len(self.failures)} failure{'s' if len(self.failures) != 1 else ''})"
                      if self.failures else ""))
        return "\n".join(out) + "\n"


def trial_rng(seed: int, trial: int):
    return np.random.default_rng([seed, trial])


def _hopfs(sel: str) -> list:
    return list(Hopf) if sel == "both" else [Hopf.parse(sel)]


# --- verification grids ----------------------------------------------------------------

def verify_hopf_grid(grid) -> Report:
    rep = Report("verify hopf-axioms")
    for p, r in grid:
        alg = AlgebraCtx(field_create(p), r)
        for h in Hopf:
            res = verify_hopf_axioms(alg, h)
            detail = " ".join(f"{k}={'ok' if v else 'FAILED'}" for k, v in res.checks.items())
            rep.check(res.passed, f"p={p} r={r} {h}: {detail}")
    return rep


def verify_resolutions_grid(grid, d_max: int, q_max: int = 4) -> Report:
    rep = Report("verify resolutions")
    for p, r in grid:
        alg = AlgebraCtx(field_create(p), r)
        res = trivial_resolution(alg, d_max)
        chk = check_resolution(res)
        ranks_ok = list(res.ranks) == [rank_formula(r, d) for d in range(d_max + 1)]
        rep.check(all(chk.values()) and ranks_ok,
                  f"P  p={p} r={r} d<={d_max}: exact={chk['exact']} minimal={chk['minimal']} "
                  f"ranks={list(res.ranks)}")
        qd = min(d_max, q_max)
        if alg.dim ** 2 * rank_formula(r, qd) <= 4000:
            Q = bimodule_resolution(alg, qd)
            chk = check_resolution(Q)
            rep.check(all(chk.values()), f"Q  p={p} r={r} d<={qd}: exact={chk['exact']} "
                                         f"minimal={chk['minimal']}")
        if p == 2 and r == 2 and d_max >= 2:
            rep.check(omega_k(alg, 2, res).dim == 5, "dim Omega^2(k) = 5 at p=2 r=2")
    return rep


def verify_phi_grid(grid, trials: int, deg: int, seed: int, kappa_deg: int = 4) -> Report:
    rep = Report("verify phi")
    for p, r in grid:
        F = field_create(p)
        alg = AlgebraCtx(F, r)
        one_plus = [alg.add(alg.one(), alg.gen(i)) for i in range(r)]
        kd = kappa_deg if alg.dim <= 9 else 2
        P = trivial_resolution(alg, max(deg, kd))
        Q = bimodule_resolution(alg, kd)
        for h in Hopf:
            rep.check((la.matmul(F, iota(h, alg), iota_inv(h, alg)) == la.identity(alg.dim ** 2)).all()
                      and (la.matmul(F, iota_inv(h, alg), iota(h, alg)) == la.identity(alg.dim ** 2)).all(),
                      f"p={p} r={r} {h}: iota and its inverse compose to the identity")
            K = kappa(h, alg, kd, P, Q)
            sq = check_kappa(K, kd)
            rep.check(all(sq.values()), f"p={p} r={r} {h}: kappa chain map through degree {kd}")
            for i in range(r):
                eta = phi_map(h, CohClass.eta(F, r, i), alg, K)
                want = one_plus[i] if h is Hopf.GR else alg.one()
                ej = tuple(int(k == i) for k in range(r))
                ok = len(eta.values) == 1 and (eta.value(ej) == want).all()
                rep.check(ok, f"p={p} r={r} Phi_{h}(e{i + 1}) = {eta}")
                zeta = phi_map(h, CohClass.zeta(F, r, i), alg, K)
                zj = tuple(2 * int(k == i) for k in range(r))
                ok = len(zeta.values) == 1 and (zeta.value(zj) == alg.one()).all()
                rep.check(ok, f"p={p} r={r} Phi_{h}(z{i + 1}) = {zeta}")
        agree = 0
        for t in range(trials):
            rng = trial_rng(seed, t)
            d = int(rng.choice(np.arange(2, deg + 1, 2)))
            c = random_class(F, r, d, rng, in_S=True)
            if phi_map(Hopf.GR, c, alg, kappa(Hopf.GR, alg, d, P)) == phi_map(Hopf.LIE, c, alg, kappa(Hopf.LIE, alg, d, P)):
                agree += 1
            else:
                rep.fail(f"p={p} r={r} trial {t}: Phi_Gr and Phi_Lie differ on {c}")
        rep.add(f"p={p} r={r}: Phi_Gr = Phi_Lie on {agree}/{trials} random classes of S (degree <= {deg})")
    return rep


def verify_factorization_grid(p: int, r: int, trials: int, deg: int, dim_max: int, seed: int,
                              hopf: str = "both") -> Report:
    rep = Report("verify factorization")
    F = field_create(p)
    alg = AlgebraCtx(F, r)
    P = trivial_resolution(alg, deg + 1)
    Q = bimodule_resolution(alg, deg + 1)
    hs = _hopfs(hopf)
    for t in range(trials):
        rng = trial_rng(seed, t)
        h = hs[int(rng.integers(len(hs)))]
        d = int(rng.integers(1, deg + 1))
        c = random_class(F, r, d, rng)
        M = random_module(alg, int(rng.integers(1, dim_max + 1)), rng)
        res = verify_factorization(h, c, M, P=P, Q=Q)
        label = f"trial {t}: {h} c = {c} (degree {d}) dim M = {M.dim}"
        rep.check(res.passed, label + ("" if res.passed else f": {res.checks} {res.detail}"))
    return rep


# --- Example badhopf -------------------------------------------------------------------

def _fmt_vec(F: FieldCtx, v, names) -> str:
    parts = []
    for c, name in zip(v, names):
        if not c:
            continue
        cs = F.format(int(c))
        cs = f"({cs})" if "+" in cs else cs
        parts.append(name if c == 1 else f"{cs}{name}")
    return " + ".join(parts) if parts else "0"


def badhopf(alpha: int, seed: int = 0) -> Report:
    F = field_create(2, 2)
    alg = AlgebraCtx(F, 2)
    if alpha in (0, 1) or not 0 <= alpha < F.q:
        raise ValueError("alpha must be an element of GF(4) other than 0 and 1")
    rep = Report("badhopf")
    a2 = int(F.mul(alpha, alpha))
    c = CohClass.eta(F, 2, 0) - CohClass.eta(F, 2, 1, alpha)
    rep.add(f"field GF(4), t^2 = t+1, alpha = {F.format(alpha)}, alpha^2 = {F.format(a2)}")
    rep.add(f"zeta = {c}")
    L = l_zeta_data(alg, c)
    rep.check(L.dim == 2, f"dim L_zeta = {L.dim}")
    u, v = L.basis[:, 0], L.basis[:, 1]
    rep.add(f"u = {alg.format(u)}, v = {alg.format(v)} in P_0 = A")
    for i, X in enumerate(L.module.gens):
        rep.add(f"x{i + 1} u = {_fmt_vec(F, X[:, 0], ['u', 'v'])}, x{i + 1} v = {_fmt_vec(F, X[:, 1], ['u', 'v'])}")
    TG = tensor(Hopf.GR, L.module, L.module)
    TL = tensor(Hopf.LIE, L.module, L.module)
    rep.check(TG.dim == TL.dim == 4, "both tensor squares have dimension 4")
    names = ["(u(x)u)", "(u(x)v)", "(v(x)u)", "(v(x)v)"]
    target = np.zeros(4, dtype=np.int64)
    for i in range(2):
        g, l = TG.gens[i][:, 0], TL.gens[i][:, 0]
        rep.add(f"Gr:  x{i + 1}(u(x)u) = {_fmt_vec(F, g, names)}")
        rep.add(f"Lie: x{i + 1}(u(x)u) = {_fmt_vec(F, l, names)}")
    diff = F.sub(TG.gens[1][:, 0], TL.gens[1][:, 0])
    target[3] = a2
    a2s = F.format(a2)
    a2s = f"({a2s})" if "+" in a2s else a2s
    rep.check((diff == target).all(),
              f"identity x2(u(x)u) [Gr] = x2(u(x)u) [Lie] + alpha^2(v(x)v) with alpha^2 = {a2s}")
    parts_lie = decompose(TL, seed=seed)
    parts_gr = decompose(TG, seed=seed)
    rep.add(f"Lie tensor square: summand dimensions {[s.module.dim for s in parts_lie]}")
    rep.add(f"Gr tensor square:  summand dimensions {[s.module.dim for s in parts_gr]}")
    iso = [is_isomorphic(s.module, L.module, seed=seed).outcome for s in parts_lie]
    rep.check(len(parts_lie) == 2 and iso == ["yes", "yes"], "Lie: L_zeta (x) L_zeta = L_zeta + L_zeta")
    rep.check(len(parts_gr) == 1 and parts_gr[0].certified,
              "Gr: L_zeta (x) L_zeta indecomposable (End is local: certified)")
    v = is_isomorphic(TG, TL, seed=seed)
    rep.check(v.outcome == "no", f"Gr and Lie tensor squares not isomorphic: {v.reason}")
    return rep


# --- tensor products with L_zeta for zeta in S ------------------------------------------

def _verdict_line(Mg: ModuleRep, Ml: ModuleRep, seed: int):
    v = is_isomorphic(Mg, Ml, seed=seed)
    return v.outcome, v.reason


def tensor_s(p: int, n: int, r: int, trials: int, deg: int, dim_max: int, seed: int,
             three_factor: int = 0) -> Report:
    F = field_create(p, n)
    alg = AlgebraCtx(F, r)
    rep = Report("tensor-s")
    rep.add(f"p={p} field {F!r} r={r} trials={trials} degree<={deg} dim M<={dim_max} seed={seed}")
    res = trivial_resolution(alg, deg)
    degrees = np.arange(2, deg + 1, 2)
    tally = {"yes": 0, "no": 0, "inconclusive": 0}
    for t in range(trials):
        rng = trial_rng(seed, t)
        d = int(rng.choice(degrees))
        c = random_class(F, r, d, rng, in_S=True)
        M = random_module(alg, int(rng.integers(1, dim_max + 1)), rng)
        L = l_zeta_data(alg, c, res)
        w = tensor_s_witness(L, M)
        if w.ok:
            outcome, how = "yes", "explicit isomorphism verified"
        else:
            outcome, how = _verdict_line(tensor(Hopf.GR, L.module, M), tensor(Hopf.LIE, L.module, M), seed)
        tally[outcome] += 1
        line = f"trial {t}: c = {c} dim L = {L.dim} dim M = {M.dim}: {outcome} ({how})"
        if outcome == "no":
            rep.fail(line)
        else:
            rep.add(line)
    for t in range(three_factor):
        rng = trial_rng(seed, 10_000 + t)
        cs = [random_class(F, r, 2, rng, in_S=True) for _ in range(2)]
        last = random_class(F, r, 1, rng)
        Ls = [l_zeta_data(alg, c, res) for c in cs]
        N = l_zeta_data(alg, last, res).module
        W, Mg, Ml = multi_factor_witness(Ls, N)
        ok = is_module_iso(F, Mg, Ml, W)
        outcome = "yes" if ok else "inconclusive"
        if not ok:
            outcome, _ = _verdict_line(Mg, Ml, seed)
        tally[outcome] += 1
        line = (f"three-factor {t}: L({cs[0]}) (x) L({cs[1]}) (x) L({last}) dim {Mg.dim}: {outcome}"
                + (" (composite isomorphism verified)" if ok else ""))
        if outcome == "no":
            rep.fail(line)
        else:
            rep.add(line)
    rep.add(f"verdicts: yes={tally['yes']} no={tally['no']} inconclusive={tally['inconclusive']}")
    return rep


# --- replay of the random-class experiment ----------------------------------------------

def _fmt_point(F: FieldCtx, a) -> str:
    return "[" + ":".join(F.format(int(x)) for x in a) + "]"


def _restricted_type(M: ModuleRep, alpha) -> str:
    """Jordan type of sum alpha_i x_i on M; at p = 2 the rank alone determines it."""
    F = M.field
    if M.alg.p != 2:
        return str(restrict_along(M, alpha)[1])
    N = la.zeros(M.dim, M.dim)
    for a, X in zip(alpha, M.gens):
        if a:
            N = F.add(N, F.mul(X, int(a)))
    k = la.rank(F, N)
    return str(JordanType((M.dim - 2 * k, k)))


def magma_replay(p: int, n: int, r: int, deg: int, trials: int, seed: int) -> Report:
    """Random pairs of degree-deg classes; compare L_1 (x) L_2 under both structures.

    Even trials force the first class into S, where isomorphism is guaranteed;
    odd trials draw both classes uniformly (almost never in S).
    """
    F = field_create(p, n)
    alg = AlgebraCtx(F, r)
    res = trivial_resolution(alg, deg)
    rep = Report("magma-replay")
    rep.add(f"p={p} field {F!r} r={r} degree={deg} trials={trials} seed={seed}")
    stats = {"S_yes": 0, "nonS_no": 0, "nonS_inconclusive": 0, "nonS_yes": 0}
    for t in range(trials):
        rng = trial_rng(seed, t)
        g1 = random_class(F, r, deg, rng, in_S=(t % 2 == 0))
        g2 = random_class(F, r, deg, rng)
        s1, s2 = g1.in_S(), g2.in_S()
        L1, L2 = l_zeta_data(alg, g1, res), l_zeta_data(alg, g2, res)
        head = f"trial {t}: g1 in S={'y' if s1 else 'n'} g2 in S={'y' if s2 else 'n'} dim {L1.dim}x{L2.dim}"
        if s1 or s2:
            A_, B_ = (L1, L2) if s1 else (L2, L1)
            w = tensor_s_witness(A_, B_.module)
            if w.ok:
                stats["S_yes"] += 1
                rep.add(f"{head}: iso=yes (explicit isomorphism{'' if s1 else ' after swapping factors'})")
            else:
                rep.fail(f"{head}: witness for a class in S failed")
            continue
        # both products restrict to free modules off V(L_1) and V(L_2), so only
        # the common rational points of the two rank varieties can tell them apart
        cands = sorted(set(rank_variety_points(L1.module)) & set(rank_variety_points(L2.module)))
        Mg = tensor(Hopf.GR, L1.module, L2.module)
        Ml = tensor(Hopf.LIE, L1.module, L2.module)
        outcome = "inconclusive"
        why = (f"Jordan types agree at the {len(cands)} common rational point{'s' if len(cands) > 1 else ''}" if cands
               else "the rank varieties share no rational point")
        for a in cands:
            jg, jl = _restricted_type(Mg, a), _restricted_type(Ml, a)
            if jg != jl:
                outcome = "no"
                why = f"Jordan type at {_fmt_point(F, a)}: Gr {jg} vs Lie {jl}"
                break
        stats["nonS_" + outcome] += 1
        rep.add(f"{head}: iso={outcome} ({why})")
    nons = stats["nonS_no"] + stats["nonS_inconclusive"] + stats["nonS_yes"]
    rep.add(f"with a class in S: {stats['S_yes']} of {stats['S_yes'] + len(rep.failures)} trials gave isomorphic products")
    rep.add(f"converse statistics: {stats['nonS_no']} of {nons} trials with neither class in S proved non-isomorphic; "
            f"{stats['nonS_inconclusive']} inconclusive")
    return rep
