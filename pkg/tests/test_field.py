import numpy as np
import pytest
from hypothesis import given, strategies as st

from hopflab.field import FieldCtx, FieldError, Scalar, field_create, is_irreducible, smallest_irreducible

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2)]


def test_default_moduli():
    assert smallest_irreducible(2, 2) == (1, 1, 1)
    assert smallest_irreducible(2, 3) == (1, 0, 1, 1)  # low-degree coefficients compared first
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert not is_irreducible([1, 0, 1], 2)  # x^2 + 1 = (x + 1)^2


@pytest.mark.parametrize("p,n", FIELDS)
def test_field_axioms_exhaustive(p, n):
    F = field_create(p, n)
    a = F.elements()[:, None, None]
    b = F.elements()[None, :, None]
    c = F.elements()[None, None, :]
    assert (F.add(F.add(a, b), c) == F.add(a, F.add(b, c))).all()
    assert (F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))).all()
    assert (F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))).all()
    assert (F.mul(a, b) == F.mul(b, a)).all()
    nz = F.elements()[1:]
    assert (F.mul(nz, F.inv(nz)) == 1).all()
    assert (F.add(F.elements(), F.neg(F.elements())) == 0).all()


@pytest.mark.parametrize("p,n", FIELDS)
def test_frobenius_is_additive_and_primitive_element(p, n):
    F = field_create(p, n)
    frob = np.array([F.power(int(x), p) for x in F.elements()])
    a, b = np.meshgrid(F.elements(), F.elements())
    lhs = np.array([F.power(int(v), p) for v in F.add(a, b).ravel()])
    assert (lhs == F.add(frob[a.ravel()], frob[b.ravel()])).all()
    g = F.primitive_element()
    assert len({F.power(g, k) for k in range(F.q - 1)}) == F.q - 1


def test_format_and_encoding():
    F = field_create(2, 2)
    assert F.format(2) == "t"
    assert F.format(3) == "t+1"
    assert F.mul(2, 2) == 3  # t^2 = t + 1
    assert F.decode(F.encode([1, 1])) == [1, 1]
    assert repr(F) == "GF(2^2)" and repr(field_create(3)) == "GF(3)"


def test_invalid_fields_rejected():
    with pytest.raises(FieldError):
        field_create(4)
    with pytest.raises(FieldError):
        FieldCtx(2, 2, (1, 0, 1))
    with pytest.raises(FieldError):
        field_create(2, 2).encode([2, 0])


@given(st.integers(0, 8), st.integers(1, 8), st.integers(0, 30))
def test_scalar_arithmetic(a, b, e):
    F = field_create(3, 2)
    x, y = Scalar(a, F), Scalar(b, F)
    assert (x * y) / y == x
    assert x - x == Scalar(0, F)
    assert (y ** e) * (y ** 2) == y ** (e + 2)
