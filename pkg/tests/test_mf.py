"""Matrix factorizations: verification, constructions, strict morphisms,
the mapping complex, and homotopies."""

import pytest

from mfcat.fields import PrimeField
from mfcat.mf import (MatrixFactorization, MFContext, SheafMap,
                      StrictMorphism, TwistSum, cone, cycle_from_strict,
                      direct_sum_mf, is_nullhomotopic, mapping_complex,
                      shift_mf, solve_homotopy, strict_from_cycle,
                      strictness_violation, twist_mf, verify_mf, zero_mf)
from mfcat.ring import GradedRing
from mfcat.suite import rank_one_mf


class TestVerify:
    def test_good(self, E_u, E_v, E_unit_p2):
        for E in (E_u, E_v, E_unit_p2):
            assert verify_mf(E)["ok"]

    def test_bad_composite_rejected(self, ctx_a1):
        ring = ctx_a1.ring
        E1, E0 = TwistSum([-1]), TwistSum([0])
        e1 = SheafMap(ring, E1, E0, [[ring.poly("u")]])
        e0 = SheafMap(ring, E0, E1.twist(2), [[ring.poly("u")]])  # u*u != uv
        with pytest.raises(ValueError):
            MatrixFactorization(ctx_a1, e1, e0)

    def test_verify_reports_entry(self, ctx_a1):
        ring = ctx_a1.ring
        E1, E0 = TwistSum([-1]), TwistSum([0])
        e1 = SheafMap(ring, E1, E0, [[ring.poly("u")]])
        e0 = SheafMap(ring, E0, E1.twist(2), [[ring.poly("u")]])
        E = MatrixFactorization(ctx_a1, e1, e0, check=False)
        rep = verify_mf(E)
        assert not rep["ok"] and rep["violations"]

    def test_inhomogeneous_map_rejected(self, ctx_a1):
        ring = ctx_a1.ring
        with pytest.raises(ValueError):
            SheafMap(ring, TwistSum([-1]), TwistSum([0]),
                     [[ring.poly("u + u*v")]])


class TestConstructions:
    def test_twist_and_shift_verify(self, E_u):
        assert verify_mf(twist_mf(E_u, -2))["ok"]
        assert verify_mf(shift_mf(E_u))["ok"]

    def test_shift_twice_is_twist(self, E_u):
        EE = shift_mf(shift_mf(E_u))
        ET = twist_mf(E_u, E_u.ctx.d)
        assert EE.describe() == ET.describe()

    def test_direct_sum(self, E_u, E_v):
        S = direct_sum_mf(E_u, E_v)
        assert verify_mf(S)["ok"]
        assert S.E1.rank == 2 and S.E0.rank == 2

    def test_zero_object(self, ctx_a1):
        Z = zero_mf(ctx_a1)
        assert Z.is_zero_object()

    def test_component_and_diff_periodicity(self, E_u):
        d = E_u.ctx.d
        for r in range(-3, 4):
            assert E_u.component_at(r + 2) == E_u.component_at(r).twist(d)


class TestStrictMorphisms:
    def test_identity_and_compose(self, E_u):
        i = StrictMorphism.identity(E_u)
        assert i.compose(i).describe() == i.describe()

    def test_non_strict_rejected(self, E_u, E_v):
        ring = E_u.ctx.ring
        g1 = SheafMap.scalar(ring, ring.one(), E_u.E1, E_v.E1)
        g0 = SheafMap.zero(ring, E_u.E0, E_v.E0)
        f = StrictMorphism(E_u, E_v, g1, g0, check=False)
        assert strictness_violation(f)
        with pytest.raises(ValueError):
            StrictMorphism(E_u, E_v, g1, g0)

    def test_multiplication_endomorphism(self, E_u):
        # multiplication by u on both components is a strict endomorphism
        ring = E_u.ctx.ring
        u = ring.poly("u")
        f = StrictMorphism(
            E_u, twist_mf(E_u, 1),
            SheafMap.scalar(ring, u, E_u.E1, E_u.E1.twist(1)),
            SheafMap.scalar(ring, u, E_u.E0, E_u.E0.twist(1)))
        assert not f.is_zero()

    def test_cone_verifies(self, E_u, E_v):
        C = cone(StrictMorphism.zero(E_u, E_v))
        assert verify_mf(C)["ok"]
        assert C.E1.rank == E_u.E0.rank + E_v.E1.rank

    def test_cone_of_identity_contractible(self, E_u):
        C = cone(StrictMorphism.identity(E_u))
        assert verify_mf(C)["ok"]
        idC = StrictMorphism.identity(C)
        assert is_nullhomotopic(idC)


class TestMappingComplex:
    def test_squares_to_w_twist(self, E_u, E_v):
        C = mapping_complex(E_u, E_v)
        # d^2 = 0 in the twisted periodic sense
        assert C.diff(0).compose(C.diff(-1)).is_zero()
        assert C.diff(-1).twist(C.ctx.d).compose(C.diff(0)).is_zero()

    def test_gamma_differential_composes_to_zero(self, E_u, E_v, ctx_a1):
        from mfcat.cohomology import GlobalSections
        gs = GlobalSections(ctx_a1)
        C = mapping_complex(E_u, E_v)
        Dm1 = gs.sheafmap_matrix(C.diff(-1))
        D0 = gs.sheafmap_matrix(C.diff(0))
        assert D0.matmul(Dm1).is_zero()

    def test_cycle_strict_roundtrip(self, E_u):
        i = StrictMorphism.identity(E_u)
        polys = cycle_from_strict(i)
        f = strict_from_cycle(E_u, E_u, polys)
        assert f.describe() == i.describe()


class TestHomotopy:
    def test_zero_morphism_nullhomotopic(self, E_u, E_v):
        assert is_nullhomotopic(StrictMorphism.zero(E_u, E_v))

    def test_identity_not_nullhomotopic(self, E_u):
        assert solve_homotopy(StrictMorphism.identity(E_u)) is None

    def test_unit_e0_identity_nullhomotopic(self, E_unit_p1):
        assert is_nullhomotopic(StrictMorphism.identity(E_unit_p1))


class TestContext:
    def test_affine_mode_allows_degree_two(self, ctx_a1):
        assert ctx_a1.is_affine and ctx_a1.d == 2

    def test_projective_requires_degree_one(self, ring_p1):
        with pytest.raises(ValueError):
            MFContext(ring_p1, ring_p1.poly("x0^2"))

    def test_nonregular_w_flagged(self):
        F = PrimeField(32003)
        ring = GradedRing(F, ["x", "y", "z"], ideal_strings=["x*y"])
        # x is a zero divisor on R/(xy); regular sections keep the flag set
        assert not MFContext(ring, ring.poly("x")).w_regular
        assert MFContext(ring, ring.poly("x + y")).w_regular

    def test_rank_one_builder(self, ctx_p2):
        E = rank_one_mf(ctx_p2, "x2", "1", 0)
        assert verify_mf(E)["ok"]
        assert list(E.E1) == [-1] and list(E.E0) == [0]
