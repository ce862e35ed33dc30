import math

import numpy as np
import pytest

from specmon.hermite import HermiteFamily, phi
from specmon.numerics import biquadratic_roots, quadratic_roots
from specmon.spectrum import (
    BranchSigns,
    DiracSpinor,
    OscillatorParams,
    SpectralFamily,
    branch_points,
    charge_conjugate,
    dirac_energy,
    dirac_spinor,
    family_polynomial,
    pt_block,
    pt_is_broken,
    sheet_values,
)
from tests.test_numerics import assert_same_multiset

F = SpectralFamily
PP = BranchSigns(1, 1)
PM = BranchSigns(1, -1)
MP = BranchSigns(-1, 1)
MM = BranchSigns(-1, -1)
ALL_SIGNS = (PP, PM, MP, MM)


def params(m=1.0, n=1):
    return OscillatorParams(m, n)


class TestParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            OscillatorParams(0.0, 1)
        with pytest.raises(ValueError):
            OscillatorParams(1.0, -1)

    def test_signs_validation(self):
        with pytest.raises(ValueError):
            BranchSigns(2, 1)
        assert BranchSigns.parse("+,-") == PM
        with pytest.raises(ValueError):
            BranchSigns.parse("+-")


class TestDiracEnergy:
    def test_arithmetic(self):
        assert dirac_energy(params(), PP, 1.5) == 2.0

    def test_n0_is_pm_mass(self):
        for w in (0.0, 0.7, 3.0 + 2.0j):
            assert dirac_energy(params(n=0), PP, w) == 1.0
            assert dirac_energy(params(n=0), MM, w) == -1.0

    def test_decoupling_limit(self):
        assert dirac_energy(params(n=2), MP, 0.0) == -1.0

    def test_defining_relation_all_quadrants(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            w = complex(*rng.normal(scale=3.0, size=2))
            p = params(m=abs(rng.normal()) + 0.3, n=int(rng.integers(0, 5)))
            for signs in ALL_SIGNS:
                e = dirac_energy(p, signs, w)
                rad = p.m ** 2 + signs.inner * 2 * p.n * p.m * w
                assert abs(e * e - rad) <= 1e-12 * max(1.0, abs(rad))
                # outer sign shows up as the principal half-plane
                assert (signs.outer * e).real >= -1e-15 * abs(e)


class TestSheetValues:
    def test_conventional_pair(self):
        assert_same_multiset(sheet_values(F.DIRAC_CONVENTIONAL, params(), 1.5), [2, -2])

    def test_nested_four(self):
        got = sheet_values(F.DIRAC_NESTED_FOUR, params(), 1.0)
        assert_same_multiset(got, [3 ** 0.5, -(3 ** 0.5), 1j, -1j])

    def test_harmonic_reference(self):
        assert sheet_values(F.HARMONIC_TWO_SHEET, params(n=0), 1.0) == [0.5, -0.5]

    def test_canonical_order_at_reference(self):
        # nested order at small positive real omega: (+,+), (+,-), (-,-), (-,+)
        p = params()
        w = 0.25
        vals = sheet_values(F.DIRAC_NESTED_FOUR, p, w)
        expected = [
            dirac_energy(p, PP, w),
            dirac_energy(p, PM, w),
            dirac_energy(p, MM, w),
            dirac_energy(p, MP, w),
        ]
        assert vals == expected

    def test_two_sheet_families_sum_to_zero(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            w = complex(*rng.normal(scale=2.0, size=2))
            p = params(n=int(rng.integers(0, 4)))
            for fam in (F.HARMONIC_TWO_SHEET, F.DIRAC_CONVENTIONAL, F.DIRAC_UNCONVENTIONAL):
                try:
                    a, b = sheet_values(fam, p, w)
                except ValueError:
                    continue  # branch point draw
                assert a + b == 0

    def test_nested_matches_biquadratic_kernel(self):
        # dual route: explicit sign composition vs the generic quartic solver
        rng = np.random.default_rng(40)
        for _ in range(100):
            w = complex(*rng.normal(scale=2.0, size=2))
            p = params(m=abs(rng.normal()) + 0.5, n=int(rng.integers(1, 4)))
            try:
                vals = sheet_values(F.DIRAC_NESTED_FOUR, p, w)
            except ValueError:
                continue
            kernel = biquadratic_roots(
                -2.0 * p.m ** 2, p.m ** 4 - 4.0 * p.n ** 2 * p.m ** 2 * w * w
            )
            assert_same_multiset(vals, kernel, tol=1e-9)

    def test_two_sheet_matches_quadratic_kernel(self):
        p = params(m=1.0, n=2)
        for w in (0.4, 1.3 + 0.2j, -0.7 + 1j):
            vals = sheet_values(F.DIRAC_CONVENTIONAL, p, w)
            kernel = quadratic_roots(0.0, -(p.m ** 2 + 2 * p.n * p.m * w))
            assert_same_multiset(vals, kernel, tol=1e-12)

    def test_unconventional_reality_window(self):
        # real on the positive axis up to m/(2n), complex-pair beyond
        p = params(n=2)  # threshold 0.25
        lo = sheet_values(F.DIRAC_UNCONVENTIONAL, p, 0.2)
        hi = sheet_values(F.DIRAC_UNCONVENTIONAL, p, 0.3)
        assert all(abs(v.imag) == 0 for v in lo)
        assert all(v.real == 0 and v.imag != 0 for v in hi)
        assert pt_is_broken(p, 0.2) is False
        assert pt_is_broken(p, 0.3) is True

    def test_branch_point_rejected_with_location(self):
        with pytest.raises(ValueError, match=r"-0\.5"):
            sheet_values(F.DIRAC_CONVENTIONAL, params(), -0.5)
        with pytest.raises(ValueError):
            sheet_values(F.HARMONIC_TWO_SHEET, params(n=0), 0.0)

    def test_polynomial_membership(self):
        rng = np.random.default_rng(9)
        for _ in range(50):
            w = complex(*rng.normal(scale=2.0, size=2))
            p = params(n=int(rng.integers(0, 4)))
            for fam in F:
                try:
                    vals = sheet_values(fam, p, w)
                except ValueError:
                    continue
                for e in vals:
                    scale = max(1.0, abs(e) ** (4 if fam is F.DIRAC_NESTED_FOUR else 2))
                    assert abs(family_polynomial(fam, p, w, e)) <= 1e-10 * scale


class TestBranchPoints:
    def test_conventional(self):
        pts = branch_points(F.DIRAC_CONVENTIONAL, params())
        assert [(b.location, b.multiplicity) for b in pts] == [(-0.5 + 0j, 1)]

    def test_n0_empty(self):
        for fam in (F.DIRAC_CONVENTIONAL, F.DIRAC_UNCONVENTIONAL, F.DIRAC_NESTED_FOUR):
            assert branch_points(fam, params(n=0)) == []

    def test_nested(self):
        pts = branch_points(F.DIRAC_NESTED_FOUR, params(n=2))
        locs = {(b.location, b.multiplicity) for b in pts}
        assert locs == {(0j, 4), (0.25 + 0j, 1), (-0.25 + 0j, 1)}

    def test_harmonic_coalescing_double(self):
        pts = branch_points(F.HARMONIC_TWO_SHEET, params(n=3))
        assert [(b.location, b.multiplicity) for b in pts] == [(0j, 2)]


class TestDiracSpinor:
    def test_n0_ground(self):
        s = dirac_spinor(params(n=0), PP, 1.0, 0.0)
        assert s == DiracSpinor(2.0 + 0j, 0j)

    def test_n1_node_at_origin(self):
        s = dirac_spinor(params(), PP, 1.5, 0.0)
        assert s.upper == 0
        assert abs(s.lower - 2 * math.sqrt(1.5)) < 1e-14

    def test_unconventional_components(self):
        # upper carries phi_{n-1}^-, lower carries phi_n^- (zero at x=0 for n=1)
        s = dirac_spinor(params(), MM, 0.1, 0.0)
        assert abs(s.upper - 2 * math.sqrt(0.1)) < 1e-15
        assert s.lower == 0

    def test_unconventional_lower_coefficient(self):
        # at x away from the node: lower = (m + sqrt(m^2 - 2 n m w)) phi_1^-(xi)
        w, x = 0.1, 0.7
        xi = math.sqrt(w) * x
        s = dirac_spinor(params(), MM, w, x)
        want = (1 + math.sqrt(0.8)) * phi(HermiteFamily.UNCONVENTIONAL, 1, xi)
        assert abs(s.lower - want) < 1e-14

    def test_vanishing_combinations_rejected(self):
        with pytest.raises(ValueError):
            dirac_spinor(params(n=0), MP, 1.0, 0.0)
        with pytest.raises(ValueError):
            dirac_spinor(params(n=0), PM, 1.0, 0.0)

    def test_n0_unconventional_ground(self):
        s = dirac_spinor(params(n=0), MM, 1.0, 0.3)
        assert s.upper == 0
        assert abs(s.lower - 2 * math.exp(0.5 * 0.3 ** 2)) < 1e-14

    def test_needs_positive_real_omega(self):
        with pytest.raises(ValueError):
            dirac_spinor(params(), PP, -1.0, 0.0)


class TestChargeConjugation:
    def test_sigma_x_swap(self):
        assert charge_conjugate(DiracSpinor(1, 0)) == DiracSpinor(0, 1)

    def test_conjugate_then_swap(self):
        assert charge_conjugate(DiracSpinor(1j, 2)) == DiracSpinor(2, -1j)

    def test_involution(self):
        s = DiracSpinor(0.3 - 0.4j, 1.1 + 2j)
        assert charge_conjugate(charge_conjugate(s)) == s


class TestPTBlock:
    def test_eigenvalues_below_threshold(self):
        vals = pt_block(params(), 0.3).eigenvalues()
        assert_same_multiset(vals, [math.sqrt(0.4), -math.sqrt(0.4)], tol=1e-12)

    def test_exceptional_point(self):
        # the transformed form represents the threshold exactly; the
        # untransformed entries carry sqrt(m|w|) whose square rounds,
        # which moves EP eigenvalues by O(sqrt(eps)) ~ 1.5e-8
        vals = pt_block(params(), 0.5, transformed=True).eigenvalues()
        assert max(abs(v) for v in vals) < 1e-8
        raw = pt_block(params(), 0.5).eigenvalues()
        assert max(abs(v) for v in raw) < 1e-7

    def test_broken_pair(self):
        vals = pt_block(params(), 1.0).eigenvalues()
        assert_same_multiset(vals, [1j, -1j], tol=1e-12)

    def test_both_forms_same_char_poly(self):
        for w in (0.1, 0.5, 2.0, 7.3):
            a = pt_block(params(n=2), w)
            b = pt_block(params(n=2), w, transformed=True)
            assert abs(b.trace()) == 0
            assert abs(a.trace() - b.trace()) <= 1e-12
            assert abs(a.det() - b.det()) <= 1e-12 * max(1.0, abs(a.det()))
            assert abs(a.det() + (1.0 - 2 * 2 * w)) <= 1e-12 * max(1.0, abs(a.det()))

    def test_untransformed_entries(self):
        blk = pt_block(params(), 0.25)
        r = math.sqrt(0.25)
        assert blk.a11 == 1 and blk.a22 == -1
        assert blk.a12 == 1j * r and blk.a21 == 2j * r

    def test_n0_diagonal_embedding(self):
        blk = pt_block(params(n=0), 3.0)
        assert (blk.a11, blk.a12, blk.a21, blk.a22) == (1, 0, 0, -1)

    def test_rejects_nonpositive_modulus(self):
        with pytest.raises(ValueError):
            pt_block(params(), 0.0)


class TestPTBroken:
    def test_threshold(self):
        assert pt_is_broken(params(), 0.4) is False
        assert pt_is_broken(params(), 0.6) is True

    def test_n0_never(self):
        assert pt_is_broken(params(n=0), 1e6) is False

    def test_reality_matches_block(self):
        for n in (1, 2, 3):
            for w in (0.05, 0.2, 0.49, 0.51, 1.0, 4.0):
                broken = pt_is_broken(params(n=n), w)
                vals = pt_block(params(n=n), w).eigenvalues()
                has_complex = any(abs(v.imag) > 1e-14 for v in vals)
                assert broken == has_complex or abs(2 * n * w - 1.0) < 1e-12
