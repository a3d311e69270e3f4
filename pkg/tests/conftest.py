"""Shared fixtures: base fields, rings, and small matrix factorizations."""

import pytest

from mfcat.fields import DEFAULT_PRIME, PrimeField, RationalField
from mfcat.mf import MFContext
from mfcat.ring import GradedRing
from mfcat.suite import (a1_u_factorization, a1_v_factorization,
                         affine_a1_context, projective_context,
                         unit_e0_factorization)


@pytest.fixture(scope="session")
def Fp():
    return PrimeField(DEFAULT_PRIME)


@pytest.fixture(scope="session")
def QQ():
    return RationalField()


@pytest.fixture(scope="session")
def ring_p1(Fp):
    return GradedRing(Fp, ["x0", "x1"])


@pytest.fixture(scope="session")
def ring_p2(Fp):
    return GradedRing(Fp, ["x0", "x1", "x2"])


@pytest.fixture(scope="session")
def ctx_a1():
    return affine_a1_context()


@pytest.fixture(scope="session")
def ctx_p1():
    # P^1 with W = x0
    return projective_context(1, w_index=0)


@pytest.fixture(scope="session")
def ctx_p2():
    # P^2 with W = x2
    return projective_context(2)


@pytest.fixture(scope="session")
def E_u(ctx_a1):
    return a1_u_factorization(ctx_a1)


@pytest.fixture(scope="session")
def E_v(ctx_a1):
    return a1_v_factorization(ctx_a1)


@pytest.fixture(scope="session")
def E_unit_p1(ctx_p1):
    return unit_e0_factorization(ctx_p1)


@pytest.fixture(scope="session")
def E_unit_p2(ctx_p2):
    return unit_e0_factorization(ctx_p2)
