"""Canonical text formats for modules, classes and resolutions.

A module file is a JSON document with the keys field, r, dim, generators in
that order; every matrix entry is the list of its n polynomial-basis
coordinates.  The writer is the only producer of canonical bytes, so
``write(read(f)) == f`` for any file the writer produced.
"""

from __future__ import annotations

import json

import numpy as np

from .algebra import AlgebraCtx
from .field import FieldCtx, FieldError
from .modules import ModuleError, ModuleRep
from .resolution import CohClass, Resolution


class FormatError(ValueError):
    """Malformed input; the message names the offending location."""


def _entry(F: FieldCtx, v: int) -> str:
    return "[" + ", ".join(str(c) for c in F.decode(int(v))) + "]"


def _matrix_lines(F: FieldCtx, X: np.ndarray, indent: str) -> list[str]:
    if X.shape[0] == 0:
        return [indent + "[]"]
    rows = [indent + "  [" + ", ".join(_entry(F, v) for v in row) + "]" for row in X]
    return [indent + "["] + [r + ("," if i < len(rows) - 1 else "") for i, r in enumerate(rows)] + [indent + "]"]


def module_to_text(M: ModuleRep) -> str:
    F = M.field
    fld = json.dumps({"p": F.p, "n": F.n, "modulus": list(F.modulus)})
    lines = ["{", f'  "field": {fld},', f'  "r": {M.alg.r},', f'  "dim": {M.dim},', '  "generators": [']
    for i, X in enumerate(M.gens):
        block = _matrix_lines(F, X, "    ")
        if i < len(M.gens) - 1:
            block[-1] += ","
        lines += block
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def _require(cond, msg):
    if not cond:
        raise FormatError(msg)


def module_from_text(text: str) -> ModuleRep:
    """Parse and validate; FormatError for malformed input, ModuleError for bad matrices."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    _require(isinstance(doc, dict), "top level must be an object")
    _require(list(doc.keys()) == ["field", "r", "dim", "generators"],
             f"keys must be field, r, dim, generators in this order; found {list(doc.keys())}")
    fd = doc["field"]
    _require(isinstance(fd, dict) and list(fd.keys()) == ["p", "n", "modulus"],
             "field must have keys p, n, modulus")
    try:
        F = FieldCtx(int(fd["p"]), int(fd["n"]), tuple(int(c) for c in fd["modulus"]))
    except (FieldError, TypeError, ValueError) as e:
        raise FormatError(f"field: {e}") from None
    r, dim, gens = doc["r"], doc["dim"], doc["generators"]
    _require(isinstance(r, int) and r >= 1, "r must be a positive integer")
    _require(isinstance(dim, int) and dim >= 0, "dim must be a non-negative integer")
    _require(isinstance(gens, list) and len(gens) == r, f"generators must be a list of {r} matrices")
    mats = []
    for g, X in enumerate(gens):
        where = f"generators[{g}]"
        _require(isinstance(X, list) and len(X) == dim, f"{where} must have {dim} rows")
        out = np.zeros((dim, dim), dtype=np.int64)
        for i, row in enumerate(X):
            _require(isinstance(row, list) and len(row) == dim, f"{where}[{i}] must have {dim} entries")
            for j, e in enumerate(row):
                loc = f"{where}[{i}][{j}]"
                _require(isinstance(e, list) and len(e) == F.n and all(isinstance(c, int) for c in e),
                         f"{loc} must be a list of {F.n} integers")
                try:
                    out[i, j] = F.encode(e)
                except FieldError as err:
                    raise FormatError(f"{loc}: {err}") from None
        mats.append(out)
    return ModuleRep.make(AlgebraCtx(F, r), mats)


def read_module(path) -> ModuleRep:
    with open(path, encoding="utf-8") as fh:
        return module_from_text(fh.read())


def write_module(M: ModuleRep, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(module_to_text(M))


def class_to_text(c: CohClass) -> str:
    F = c.field
    sup = ", ".join("[" + json.dumps(list(j)) + ", " + _entry(F, v) + "]" for j, v in c.terms)
    return f'{{"degree": {c.degree}, "support": [{sup}]}}'


def resolution_to_text(res: Resolution) -> str:
    F = res.alg.field
    lines = ["{", f'  "ranks": {json.dumps(list(res.ranks))},', '  "differentials": [']
    for n in range(1, res.length + 1):
        block = _matrix_lines(F, res.diff(n), "    ")
        if n < res.length:
            block[-1] += ","
        lines += block
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


__all__ = ["FormatError", "ModuleError", "module_to_text", "module_from_text", "read_module",
           "write_module", "class_to_text", "resolution_to_text"]
