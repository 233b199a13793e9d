import numpy as np
import pytest

from hopflab.algebra import AlgebraCtx, Hopf
from hopflab.field import field_create
from hopflab.modules import free_module, random_module, trivial_module
from hopflab.resolution import CohClass, l_zeta, trivial_resolution
from hopflab.varieties import (annihilates, annihilates_exact, check_variety_equality, evaluate,
                               projective_points, rank_variety_points, s_labels, support_on_S)


def test_projective_point_count():
    for p, n, r in [(2, 2, 2), (3, 2, 2), (2, 1, 3), (2, 3, 2)]:
        F = field_create(p, n)
        assert len(projective_points(F, r)) == (F.q ** r - 1) // (F.q - 1)


def test_rank_varieties_of_basic_modules():
    A = AlgebraCtx(field_create(2, 2), 2)
    pts = projective_points(A.field, 2)
    assert rank_variety_points(trivial_module(A)) == pts
    assert rank_variety_points(free_module(A)) == []


def test_rank_variety_of_l_zeta_is_zero_locus():
    A = AlgebraCtx(field_create(3, 2), 2)
    F = A.field
    c = CohClass.zeta(F, 2, 0) + CohClass.zeta(F, 2, 1)
    got = rank_variety_points(l_zeta(A, c))
    labels = s_labels(2, 2)
    want = [a for a in projective_points(F, 2) if evaluate(F, labels, c.vector(labels), a) == 0]
    assert got == want == [(1, 2)]


def test_frobenius_twist_matters():
    # zeta_1 + zeta_2 over GF(9): alpha^2 picks the wrong points, alpha^3 the right ones
    A = AlgebraCtx(field_create(3, 2), 2)
    F = A.field
    c = CohClass.zeta(F, 2, 0) + CohClass.zeta(F, 2, 1)
    labels = s_labels(2, 2)
    rank = rank_variety_points(l_zeta(A, c))
    squared = [a for a in projective_points(F, 2) if evaluate(F, labels, c.vector(labels), a, 2) == 0]
    assert squared != rank


@pytest.mark.parametrize("p", [2, 3])
def test_splitting_criterion_agrees_with_exact_test(p):
    A = AlgebraCtx(field_create(p), 2)
    F = A.field
    res = trivial_resolution(A, 2)
    rng = np.random.default_rng(p)
    mods = [trivial_module(A), free_module(A), l_zeta(A, CohClass.zeta(F, 2, 0)),
            random_module(A, 3, rng)]
    classes = [CohClass.zeta(F, 2, 0), CohClass.zeta(F, 2, 1), CohClass.eta(F, 2, 0)]
    for M in mods:
        for c in classes:
            exact = annihilates_exact(Hopf.GR, c, M, res)
            for h in Hopf:
                assert annihilates_exact(h, c, M, res) == exact
                assert annihilates(h, c, M) == ("yes" if exact else "no")


def test_support_needs_even_bound():
    A = AlgebraCtx(field_create(2), 2)
    with pytest.raises(ValueError):
        support_on_S(Hopf.GR, trivial_module(A), 3)


@pytest.mark.parametrize("build", ["k", "A", "L1", "L12", "rand"])
def test_variety_equality_gf4(build):
    A = AlgebraCtx(field_create(2, 2), 2)
    F = A.field
    z1, z2 = CohClass.zeta(F, 2, 0), CohClass.zeta(F, 2, 1)
    M = {"k": lambda: trivial_module(A), "A": lambda: free_module(A),
         "L1": lambda: l_zeta(A, z1), "L12": lambda: l_zeta(A, z1 + z2),
         "rand": lambda: random_module(A, 3, np.random.default_rng(4))}[build]()
    rep = check_variety_equality(M, 4)
    assert rep.passed, rep.table(F)
