"""Command-line entry point: ``hopflab <verb> ...``.

Exit codes: 0 success, 2 a mathematical check failed, 3 malformed input
(arguments, class expressions, module files), 4 an input violates a module
invariant (non-commuting or non-nilpotent matrices, zero class, ...).

Class expressions use e<i> for eta_i (degree 1) and z<i> for zeta_i (degree 2),
joined by '*', '^', '+' and '-', with integer or "(polynomial in t)" scalars,
for example  "z1 + 2*z2"  or  "(t+1)*e1*e2 + z1".
"""

from __future__ import annotations

import argparse
import sys

from .algebra import AlgebraCtx, Hopf
from .experiments import (EXIT_INVARIANT, EXIT_MATH, EXIT_OK, EXIT_PARSE, Report, badhopf,
                          magma_replay, tensor_s, verify_factorization_grid, verify_hopf_grid,
                          verify_phi_grid, verify_resolutions_grid)
from .expr import ExprError, parse_class, parse_scalar
from .field import FieldError, field_create
from .io import FormatError, module_to_text, read_module
from .modules import (ModuleError, decompose, invariant_profile, is_isomorphic, restrict_along,
                      tensor)
from .resolution import ClassError, l_zeta
from .varieties import check_variety_equality, projective_points, support_on_S


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


# --- configuration ---------------------------------------------------------------------

def _config(args):
    if args.p is not None and args.p not in (2, 3, 5):
        raise UsageError("--p must be 2, 3 or 5")
    if args.r is not None and not 1 <= args.r <= 3:
        raise UsageError("--r must be 1, 2 or 3")
    if args.n is not None and args.n < 1:
        raise UsageError("--n must be positive")
    if args.trials is not None and args.trials < 0:
        raise UsageError("--trials must be non-negative")
    if args.deg is not None and args.deg < 1:
        raise UsageError("--deg must be positive")


def _alg(args) -> AlgebraCtx:
    p = 2 if args.p is None else args.p
    r = 2 if args.r is None else args.r
    return AlgebraCtx(field_create(p, args.n or 1), r)


def _grid(args, ps, rs):
    ps = [args.p] if args.p is not None else ps
    rs = [args.r] if args.r is not None else rs
    return [(p, r) for p in ps for r in rs]


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _finish(rep: Report, args) -> int:
    _emit(rep.text(), args.out)
    return rep.status


# --- verbs -----------------------------------------------------------------------------

def cmd_verify(args) -> int:
    _config(args)
    t = args.target
    if t == "hopf-axioms":
        rep = verify_hopf_grid(_grid(args, [2, 3, 5], [1, 2]))
    elif t == "resolutions":
        rep = verify_resolutions_grid(_grid(args, [2, 3], [1, 2, 3]), args.deg or 6)
    elif t == "phi":
        rep = verify_phi_grid(_grid(args, [2, 3, 5], [1, 2]), 25 if args.trials is None else args.trials,
                              args.deg or 6, args.seed)
    else:
        grid = _grid(args, [2, 3], [2])
        trials = 20 if args.trials is None else args.trials
        rep = Report("verify factorization")
        for k, (p, r) in enumerate(grid):
            share = trials // len(grid) + (k < trials % len(grid))
            sub = verify_factorization_grid(p, r, share, args.deg or 4, 6, args.seed, args.hopf)
            rep.add(f"## p={p} r={r}")
            rep.lines += sub.lines
            rep.failures += sub.failures
    return _finish(rep, args)


def cmd_badhopf(args) -> int:
    F = field_create(2, 2)
    alpha = parse_scalar(args.alpha, F)
    if alpha in (0, 1):
        raise UsageError("alpha must differ from 0 and 1")
    return _finish(badhopf(int(alpha), args.seed), args)


def cmd_tensor_s(args) -> int:
    _config(args)
    p = 2 if args.p is None else args.p
    r = 2 if args.r is None else args.r
    trials = 50 if args.trials is None else args.trials
    rep = tensor_s(p, args.n or 1, r, trials, args.deg or 6, args.dim, args.seed, args.factors)
    return _finish(rep, args)


def cmd_magma_replay(args) -> int:
    _config(args)
    p = 2 if args.p is None else args.p
    r = 3 if args.r is None else args.r
    n = args.n or {2: 3, 3: 2}.get(p, 1)
    deg = args.deg or (4 if p == 2 else 2)
    trials = 20 if args.trials is None else args.trials
    return _finish(magma_replay(p, n, r, deg, trials, args.seed), args)


def _fmt_point(F, a) -> str:
    return "[" + ":".join(F.format(int(x)) for x in a) + "]"


def _show_text(M) -> str:
    F = M.field
    prof = invariant_profile(M)
    lines = [f"field {F!r}", f"r {M.alg.r}", f"dim {M.dim}"]
    for i in range(M.alg.r):
        a = [int(k == i) for k in range(M.alg.r)]
        lines.append(f"jordan type of x{i + 1}: {restrict_along(M, a)[1]}" if M.dim else
                     f"jordan type of x{i + 1}: 0")
    lines.append(f"radical layers {list(prof.get('radical_layers', (0,)))}")
    lines.append(f"socle layers {list(prof.get('socle_layers', ()))}")
    return "\n".join(lines) + "\n"


def cmd_module(args) -> int:
    op = args.op
    if op == "lzeta":
        _config(args)
        alg = _alg(args)
        c = parse_class(args.cls, alg.field, alg.r)
        text = module_to_text(l_zeta(alg, c))
        _emit(text, args.out)
        return EXIT_OK
    if op in ("read", "write", "show", "decompose", "rankvariety", "support"):
        if len(args.files) != 1:
            raise UsageError(f"module {op} takes exactly one file")
    elif op == "tensor" and len(args.files) != 2:
        raise UsageError("module tensor takes two files")
    mods = [read_module(f) for f in args.files]
    M = mods[0]
    if op == "read":
        _emit(f"ok: dim {M.dim} over {M.field!r} with r = {M.alg.r}\n", args.out)
    elif op == "write":
        _emit(module_to_text(M), args.out)
    elif op == "show":
        _emit(_show_text(M), args.out)
    elif op == "tensor":
        N = mods[1]
        if M.alg != N.alg:
            raise ModuleError("modules over different algebras")
        if args.hopf == "both":
            v = is_isomorphic(tensor(Hopf.GR, M, N), tensor(Hopf.LIE, M, N), seed=args.seed)
            _emit(f"Gr and Lie tensor products isomorphic: {v.outcome} ({v.reason})\n", args.out)
        else:
            _emit(module_to_text(tensor(Hopf.parse(args.hopf), M, N)), args.out)
    elif op == "decompose":
        parts = decompose(M, seed=args.seed)
        lines = [f"dim {M.dim}: {len(parts)} summand{'s' if len(parts) != 1 else ''}"]
        for k, s in enumerate(parts):
            tag = "indecomposable (certified)" if s.certified else "not certified"
            lines.append(f"summand {k}: dim {s.module.dim} {tag}" + (f" {s.note}" if s.note else ""))
        _emit("\n".join(lines) + "\n", args.out)
    elif op == "rankvariety":
        _check_enumerable(M)
        F = M.field
        lines = [f"field {F!r}", "point jordan-type in-variety"]
        for a in projective_points(F, M.alg.r):
            jt = restrict_along(M, a)[1] if M.dim else "0"
            free = M.dim % M.alg.p == 0 and str(jt) == (f"[{M.alg.p}]^{M.dim // M.alg.p}" if M.dim else "0")
            lines.append(f"{_fmt_point(F, a)} {jt} {'0' if free else '1'}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _check_enumerable(M)
        D = args.deg or 4
        if D % 2:
            raise UsageError("--deg must be even for support computations")
        if args.hopf == "both":
            vr = check_variety_equality(M, D)
            text = vr.table(M.field) + f"\nequal to rank variety: {vr.equal}\nsame for Gr and Lie: {vr.hopf_independent}\n"
            _emit(text, args.out)
            return EXIT_OK if vr.passed else EXIT_MATH
        res = support_on_S(Hopf.parse(args.hopf), M, D)
        lines = [f"support of Ext(M,M) over S, degrees <= {D}, {res.hopf}"]
        lines += [_fmt_point(M.field, a) for a in res.points]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _check_enumerable(M) -> None:
    if M.field.q > 64:
        raise UsageError("field too large for point enumeration (p^n must be at most 64)")


# --- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--p", type=int, default=None, help="characteristic: 2, 3 or 5")
    g.add_argument("--n", type=int, default=None, help="field degree, the field is GF(p^n) (default 1)")
    g.add_argument("--r", type=int, default=None, help="number of generators, at most 3")
    g.add_argument("--seed", type=int, default=0, help="master RNG seed")
    g.add_argument("--trials", type=int, default=None, help="number of random trials")
    g.add_argument("--deg", type=int, default=None, help="degree bound")
    g.add_argument("--hopf", choices=["gr", "lie", "both"], default="both",
                   help="coproduct: group-like (gr), primitive (lie) or both")
    g.add_argument("--out", default=None, help="write the report or module here instead of stdout")

    top = _Parser(prog="hopflab", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="run a verification grid")
    v.add_argument("target", choices=["hopf-axioms", "resolutions", "phi", "factorization"])
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("badhopf", parents=[common],
                       help="tensor square of L_zeta over GF(4) for zeta = e1 - alpha*e2")
    b.add_argument("--alpha", default="t", help="element of GF(4) = GF(2)[t]/(t^2+t+1), e.g. t or (t+1)")
    b.set_defaults(func=cmd_badhopf)

    t = sub.add_parser("tensor-s", parents=[common], help="compare L_c (x) M under both coproducts, c in S")
    t.add_argument("--dim", type=int, default=5, help="largest dimension of the random module M")
    t.add_argument("--factors", type=int, default=0, metavar="K",
                   help="additionally run K three-factor trials")
    t.set_defaults(func=cmd_tensor_s)

    m = sub.add_parser("magma-replay", parents=[common],
                       help="random pairs of classes (default p=2, r=3, GF(8), degree 4; "
                            "with --p 3 the default is GF(9), degree 2)")
    m.set_defaults(func=cmd_magma_replay)

    mod = sub.add_parser("module", parents=[common], help="module files and module operations")
    mod.add_argument("op", choices=["read", "write", "show", "tensor", "decompose", "lzeta",
                                    "rankvariety", "support"])
    mod.add_argument("files", nargs="*", help="module files")
    mod.add_argument("--class", dest="cls", default=None, help="class expression for lzeta")
    mod.set_defaults(func=cmd_module)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "module" and args.op == "lzeta" and not args.cls:
        parser.error("module lzeta needs --class")
    try:
        return args.func(args)
    except (UsageError, FormatError, ExprError, FieldError) as e:
        print(f"hopflab: error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (ModuleError, ClassError) as e:
        print(f"hopflab: invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except OSError as e:
        print(f"hopflab: error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
