"""Hom-sets in the naive and stabilized homotopy categories, contractibility
predicates, and the local-triviality report."""

import pytest

from mfcat.homcat import (StabilizedClass, class_coords, compose_h, hom_H,
                          hom_naive, is_contractible, locally_contractible,
                          prop28_report, stabilize, weak_equivalence)
from mfcat.mf import (StrictMorphism, cone, direct_sum_mf, shift_mf, twist_mf,
                      zero_mf)
from mfcat.suite import generate_suite


class TestHomNaive:
    def test_endomorphisms_of_u(self, E_u):
        hs = hom_naive(E_u, E_u)
        assert hs.dimension == 1
        assert len(hs.basis) == 1
        cls = hs.basis[0]
        assert cls.src is E_u and cls.dst is E_u

    def test_u_to_v_vanishes(self, E_u, E_v):
        assert hom_naive(E_u, E_v).dimension == 0

    def test_additive_over_direct_sum(self, E_u, E_v):
        S = direct_sum_mf(E_u, E_v)
        lhs = hom_naive(S, E_u).dimension
        rhs = hom_naive(E_u, E_u).dimension + hom_naive(E_v, E_u).dimension
        assert lhs == rhs
        lhs2 = hom_naive(E_u, S).dimension
        rhs2 = hom_naive(E_u, E_u).dimension + hom_naive(E_u, E_v).dimension
        assert lhs2 == rhs2

    def test_shift_twice_invariance(self, E_u, E_v):
        a = hom_naive(E_u, E_v).dimension
        b = hom_naive(shift_mf(shift_mf(E_u)),
                      shift_mf(shift_mf(E_v))).dimension
        assert a == b

    def test_basis_members_are_strict(self, E_u):
        for cls in hom_naive(E_u, E_u).basis:
            f = cls.rep
            # constructing through StrictMorphism re-checks strictness
            StrictMorphism(f.src, f.dst, f.g1, f.g0)


class TestStabilization:
    def test_affine_fast_path(self, E_u):
        hs = hom_H(E_u, E_u)
        assert hs.model == "hyper"
        assert hs.tower == ()
        assert hs.dimension == 1

    def test_projective_certificate(self, E_unit_p1):
        Ep, eps, cert = stabilize(E_unit_p1, E_unit_p1)
        assert cert.check()
        assert eps.src is Ep and eps.dst is E_unit_p1
        hs = hom_H(E_unit_p1, E_unit_p1)
        assert hs.certificate is not None and hs.tower == (hs.certificate.j,)

    def test_contractible_target_kills_hom(self, ctx_p1, E_unit_p1):
        E = twist_mf(E_unit_p1, -1)
        hs = hom_H(E, E_unit_p1)
        assert hs.dimension == 0

    def test_naive_cycles_vs_stable_gap(self, E_unit_p1):
        # the unit-e0 object carries nonzero strict endomorphisms (its
        # identity, among others) yet is stably zero
        naive = hom_naive(E_unit_p1, E_unit_p1)
        stable = hom_H(E_unit_p1, E_unit_p1)
        assert naive.cycle_space.ncols >= 1
        assert stable.dimension == 0


class TestComposition:
    def test_unit_laws(self, E_u):
        hs = hom_H(E_u, E_u)
        ident = StabilizedClass.identity(E_u)
        for a in hs.basis:
            left = compose_h(ident, a)
            right = compose_h(a, ident)
            assert class_coords(left) == class_coords(a)
            assert class_coords(right) == class_coords(a)

    def test_associativity(self, E_u):
        S = direct_sum_mf(E_u, E_u)
        hs = hom_H(S, S)
        assert hs.dimension == 4
        cls = hs.basis
        a, b, c = cls[0], cls[1], cls[2]
        lhs = compose_h(compose_h(c, b), a)
        rhs = compose_h(c, compose_h(b, a))
        assert class_coords(lhs) == class_coords(rhs)


class TestContractibility:
    def test_zero_object(self, ctx_a1):
        assert is_contractible(zero_mf(ctx_a1))

    def test_unit_e0_contractible(self, E_unit_p1):
        assert is_contractible(E_unit_p1)

    def test_u_not_contractible(self, E_u):
        assert not is_contractible(E_u)

    def test_cone_of_identity(self, E_u):
        assert is_contractible(cone(StrictMorphism.identity(E_u)))


class TestLocallyContractible:
    def test_affine_u_false(self, E_u):
        assert locally_contractible(E_u) == "false"

    def test_unit_e0_true(self, E_unit_p1):
        assert locally_contractible(E_unit_p1) == "true"

    def test_zero_object_true(self, ctx_p1):
        assert locally_contractible(zero_mf(ctx_p1)) == "true"

    def test_cone_of_zero_on_contractibles(self, E_unit_p1):
        C = cone(StrictMorphism.zero(E_unit_p1, E_unit_p1))
        assert locally_contractible(C) == "true"

    def test_weak_equivalence_identity(self, E_unit_p1):
        f = StrictMorphism.identity(E_unit_p1)
        assert weak_equivalence(f) == "true"


class TestProp28Report:
    def test_global_implies_local(self, E_unit_p1, E_u):
        rep = prop28_report(E_unit_p1)
        assert rep["condition1_contractible"] is True
        assert rep["condition4_locally_free_coker"] == "true"
        rep2 = prop28_report(E_u)
        assert rep2["condition1_contractible"] is False
        assert rep2["condition4_locally_free_coker"] == "false"

    def test_suite_never_violates(self):
        _ctx, objs = generate_suite(3, "a1-affine")
        for E in objs:
            rep = prop28_report(E)
            assert rep["consistent"]
            if rep["condition1_contractible"]:
                assert rep["condition4_locally_free_coker"] == "true"


class TestOracleAgreement:
    def test_hom_h_matches_hypercohomology_p1(self):
        from mfcat.cohomology import cech_hypercohomology
        from mfcat.mf import mapping_complex
        ctx, objs = generate_suite(0, "p1-small")
        for E in objs[:3]:
            for F in objs[:3]:
                hs = hom_H(E, F)
                dim, stable = cech_hypercohomology(mapping_complex(E, F), 0)
                assert stable
                assert hs.dimension == dim
