import numpy as np
import pytest

from hopflab import linalg as la
from hopflab.algebra import AlgebraCtx, Hopf
from hopflab.field import field_create
from hopflab.hochschild import (HHClass, bimodule_resolution, check_kappa, iota, iota_inv, kappa,
                                phi_map, verify_factorization)
from hopflab.modules import random_module, trivial_module
from hopflab.resolution import CohClass, check_resolution, random_class, trivial_resolution


def alg(p=2, r=2):
    return AlgebraCtx(field_create(p), r)


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 2)])
def test_bimodule_resolution_exact(p, r):
    Q = bimodule_resolution(alg(p, r), 3)
    assert all(check_resolution(Q).values())


@pytest.mark.parametrize("h", list(Hopf))
@pytest.mark.parametrize("p", [2, 3])
def test_iota_and_kappa(h, p):
    A = alg(p, 2)
    F = A.field
    assert (la.matmul(F, iota(h, A), iota_inv(h, A)) == la.identity(A.dim ** 2)).all()
    assert all(check_kappa(kappa(h, A, 3), 3).values())


@pytest.mark.parametrize("p", [2, 3, 5])
def test_phi_on_generators(p):
    A = alg(p, 2)
    F = A.field
    for i in range(2):
        eta = CohClass.eta(F, 2, i)
        gr, lie = phi_map(Hopf.GR, eta, A), phi_map(Hopf.LIE, eta, A)
        assert str(gr) == f"(1+x{i + 1})*d{i + 1}"
        assert str(lie) == f"d{i + 1}"
        for h in Hopf:
            assert str(phi_map(h, CohClass.zeta(F, 2, i), A)) == f"chi{i + 1}"


def test_phi_agrees_on_S_and_is_multiplicative_there():
    A = alg(3, 2)
    F = A.field
    rng = np.random.default_rng(0)
    P = trivial_resolution(A, 4)
    for _ in range(5):
        c1 = random_class(F, 2, 2, rng, in_S=True)
        c2 = random_class(F, 2, 2, rng, in_S=True)
        prod = c1 * c2
        gr = phi_map(Hopf.GR, prod, A, kappa(Hopf.GR, A, 4, P))
        assert gr == phi_map(Hopf.LIE, prod, A, kappa(Hopf.LIE, A, 4, P))
        assert gr == phi_map(Hopf.GR, c1, A).mul_chi(phi_map(Hopf.GR, c2, A))


def test_hh_class_product_restricted_to_chi():
    A = alg(3, 1)
    d = phi_map(Hopf.LIE, CohClass.eta(A.field, 1, 0), A)
    with pytest.raises(ValueError):
        d.mul_chi(d)
    assert HHClass.make(A, 2, {}).is_zero()


@pytest.mark.parametrize("p", [2, 3])
def test_factorization_random(p):
    A = alg(p, 2)
    F = A.field
    P, Q = trivial_resolution(A, 4), bimodule_resolution(A, 4)
    rng = np.random.default_rng(p)
    for t in range(6):
        h = list(Hopf)[t % 2]
        c = random_class(F, 2, int(rng.integers(1, 4)), rng)
        M = random_module(A, int(rng.integers(1, 5)), rng)
        rep = verify_factorization(h, c, M, P=P, Q=Q)
        assert rep.passed, (str(c), rep.checks)


def test_factorization_on_trivial_module():
    A = alg(2, 2)
    c = CohClass.zeta(A.field, 2, 0)
    assert verify_factorization(Hopf.GR, c, trivial_module(A)).passed


def test_wrong_phi_is_detected():
    A = alg(3, 2)
    F = A.field
    eta = CohClass.eta(F, 2, 0)
    outcomes = []
    for s in range(4):
        M = random_module(A, int(np.random.default_rng([5, s]).integers(2, 5)), np.random.default_rng([5, s]))
        outcomes.append(verify_factorization(Hopf.GR, eta, M, phi_hopf=Hopf.LIE).passed)
    assert not all(outcomes)
