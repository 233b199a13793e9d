import pytest
from hypothesis import given, settings, strategies as st

from hopflab.expr import ExprError, parse_class, parse_scalar
from hopflab.field import field_create
from hopflab.resolution import CohClass, random_class

F3, F4, F9 = field_create(3), field_create(2, 2), field_create(3, 2)


def test_basic_expressions():
    z1, z2 = CohClass.zeta(F3, 2, 0), CohClass.zeta(F3, 2, 1)
    e1, e2 = CohClass.eta(F3, 2, 0), CohClass.eta(F3, 2, 1)
    assert parse_class("z1 + 2*z2", F3, 2) == z1 + z2.scale(2)
    assert parse_class("e1*e2 - z1", F3, 2) == e1 * e2 - z1
    assert parse_class("z1^2", F3, 2) == z1 * z1
    assert parse_class("-e2*e1", F3, 2) == e1 * e2
    assert parse_class("1", F3, 2) == CohClass.unit(F3, 2)


def test_polynomial_scalars():
    c = parse_class("(t+1)*z1 + t*z2", F4, 2)
    assert parse_class("2t*z1", F9, 1).coeff((2,)) == F9.encode([0, 2])
    assert c.coeff((2, 0)) == 3 and c.coeff((0, 2)) == 2
    assert parse_scalar("t+1", F4) == 3
    assert parse_scalar("(2t+1)", F9) == F9.encode([1, 2])
    assert parse_scalar("5", F3) == 2


@pytest.mark.parametrize("text,pos", [
    ("z1 + e1", 5),
    ("z3", 0),
    ("z1 +", 4),
    ("z1 $ z2", 3),
    ("", 0),
    ("(t^2)*z1", 1),
    ("t^2*z1", 0),
])
def test_errors_report_positions(text, pos):
    with pytest.raises(ExprError) as err:
        parse_class(text, F4, 2)
    assert err.value.pos == pos
    assert f"at position {pos}" in str(err.value)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1), st.sampled_from([F3, F4, F9]), st.integers(1, 3))
def test_format_parse_round_trip(deg, seed, F, r):
    import numpy as np
    c = random_class(F, r, deg, np.random.default_rng(seed))
    assert parse_class(str(c), F, r) == c
