import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopflab.algebra import AlgebraCtx
from hopflab.field import field_create
from hopflab.io import (FormatError, class_to_text, module_from_text, module_to_text, read_module,
                        resolution_to_text, write_module)
from hopflab.modules import ModuleError, random_module
from hopflab.resolution import CohClass, trivial_resolution


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (2, 2), (3, 2), (2, 3)]), st.integers(1, 3),
       st.integers(0, 6), st.integers(0, 2**32 - 1))
def test_round_trip(pn, r, dim, seed):
    A = AlgebraCtx(field_create(*pn), r)
    M = random_module(A, dim, np.random.default_rng(seed)) if dim else None
    if M is None:
        return
    text = module_to_text(M)
    N = module_from_text(text)
    assert all((X == Y).all() for X, Y in zip(M.gens, N.gens))
    assert module_to_text(N) == text


def test_file_round_trip(tmp_path):
    A = AlgebraCtx(field_create(3, 2), 2)
    M = random_module(A, 4, np.random.default_rng(0))
    path = tmp_path / "m.mod"
    write_module(M, path)
    first = path.read_bytes()
    write_module(read_module(path), path)
    assert path.read_bytes() == first


def _doc(**over):
    doc = {"field": {"p": 2, "n": 1, "modulus": [0, 1]}, "r": 1, "dim": 2,
           "generators": [[[[0], [0]], [[1], [0]]]]}
    doc.update(over)
    return json.dumps(doc)


def test_valid_small_document():
    M = module_from_text(_doc())
    assert M.dim == 2 and M.gens[0][1, 0] == 1


@pytest.mark.parametrize("text,fragment", [
    ("{", "invalid JSON at line 1"),
    (_doc(r=2), "generators must be a list of 2 matrices"),
    (_doc(dim=3), "generators[0] must have 3 rows"),
    (_doc(generators=[[[[0], [0]], [[5], [0]]]]), "generators[0][1][0]"),
    (_doc(generators=[[[[0], [0]], [[1, 0], [0]]]]), "generators[0][1][0] must be a list of 1 integers"),
    (_doc(field={"p": 2, "n": 2, "modulus": [1, 0, 1]}), "field:"),
    ('{"r": 1, "field": {}, "dim": 0, "generators": []}', "keys must be field, r, dim, generators"),
])
def test_malformed_documents(text, fragment):
    with pytest.raises(FormatError) as err:
        module_from_text(text)
    assert fragment in str(err.value)


def test_invariant_violation_is_module_error():
    with pytest.raises(ModuleError):
        module_from_text(_doc(generators=[[[[1], [0]], [[0], [0]]]]))


def test_class_and_resolution_text():
    F = field_create(3)
    c = CohClass.zeta(F, 2, 0) + CohClass.eta(F, 2, 0) * CohClass.eta(F, 2, 1)
    doc = json.loads(class_to_text(c))
    assert doc["degree"] == 2 and len(doc["support"]) == 2
    res = trivial_resolution(AlgebraCtx(F, 1), 2)
    assert json.loads(resolution_to_text(res))["ranks"] == [1, 1, 1]
