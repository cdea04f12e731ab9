"""Tests for chi10, Petersson norms, and fundamental-domain reduction."""

import math

import pytest

from deginv import (
    AccuracyTarget,
    SiegelPoint2,
    UpperHalfPoint,
    chi10,
    log_abs_eta,
    log_petersson_chi10,
    log_petersson_eta,
    reduce_fundamental_domain,
)
from deginv.degeneration import SeparatingFamily, sep_period_matrix
from deginv.errors import VanishingError

from oracles import log_abs_eta_oracle, random_omega

ACC = AccuracyTarget(1e-13, 64)

# frozen composition of ten box-20 mpmath theta constants (40 digits)
CHI10_OFFDIAG = -4.4281101533232624735e-6  # at [[1.1i, 0.01], [0.01, 1.3i]]
LOG_ABS_ETA_2I = -0.52360226295889747369


class TestChi10:
    def test_vanishes_on_block_diagonal(self):
        value = chi10(SiegelPoint2(1j, 0j, 1.5j), ACC)
        assert abs(value) < 1e-12

    def test_vanishes_on_random_block_diagonals(self, rng):
        for _ in range(20):
            w1, w2 = random_omega(rng), random_omega(rng)
            assert abs(chi10(SiegelPoint2(w1, 0j, w2), ACC)) < 1e-11

    def test_invariant_under_component_swap(self):
        fam = SeparatingFamily(UpperHalfPoint(0, 1), UpperHalfPoint(0, 1.5))
        swapped = SeparatingFamily(UpperHalfPoint(0, 1.5), UpperHalfPoint(0, 1))
        t = 1e-3
        a = chi10(sep_period_matrix(fam, t), ACC)
        b = chi10(sep_period_matrix(swapped, t), ACC)
        assert a == pytest.approx(b, abs=1e-11)

    def test_matches_composition_of_oracles(self):
        value = chi10(SiegelPoint2(1.1j, 0.01 + 0j, 1.3j), ACC)
        assert value.real == pytest.approx(CHI10_OFFDIAG, abs=2 * ACC.eps_abs)
        assert abs(value.imag) < 1e-13


class TestPeterssonEta:
    def test_translation_invariance(self):
        a = log_petersson_eta(UpperHalfPoint(0.2, 0.9), ACC).log_norm
        b = log_petersson_eta(UpperHalfPoint(1.2, 0.9), ACC).log_norm
        assert a == pytest.approx(b, abs=1e-13)

    def test_inversion_invariance(self):
        w = 0.3 + 0.8j
        inv = -1 / w
        a = log_petersson_eta(UpperHalfPoint(w.real, w.imag), ACC).log_norm
        b = log_petersson_eta(UpperHalfPoint(inv.real, inv.imag), ACC).log_norm
        assert a == pytest.approx(b, abs=1e-11)

    def test_value_against_oracle(self):
        value = log_petersson_eta(UpperHalfPoint(0.0, 2.0), ACC).log_norm
        assert value == pytest.approx(0.25 * math.log(2.0) + LOG_ABS_ETA_2I, abs=1e-12)

    def test_invariance_under_random_words(self, rng):
        # 100 random words of length <= 5 in T: w+1 and S: -1/w
        for _ in range(100):
            base = random_omega(rng, im_range=(0.2, 2.0), re_range=(-1.5, 1.5))
            moved = base
            for _ in range(int(rng.integers(1, 6))):
                if rng.random() < 0.5:
                    moved = moved + (1 if rng.random() < 0.5 else -1)
                else:
                    moved = -1 / moved
            a = log_petersson_eta(UpperHalfPoint(base.real, base.imag), ACC).log_norm
            b = log_petersson_eta(UpperHalfPoint(moved.real, moved.imag), ACC).log_norm
            assert abs(a - b) < 1e-10


class TestPeterssonChi10:
    def test_vanishing_on_block_diagonal(self):
        with pytest.raises(VanishingError):
            log_petersson_chi10(SiegelPoint2(1j, 0j, 1.5j), ACC)

    def test_recomposition_from_parts(self):
        point = SiegelPoint2(1.1j, 0.05 + 0j, 1.2j)
        import numpy as np
        expected = (5.0 * math.log(np.linalg.det(point.im_matrix))
                    + math.log(abs(chi10(point, ACC))))
        assert log_petersson_chi10(point, ACC).log_norm == pytest.approx(expected, abs=1e-11)

    def test_finite_on_separating_family(self):
        fam = SeparatingFamily(UpperHalfPoint(0, 1), UpperHalfPoint(0, 1))
        value = log_petersson_chi10(sep_period_matrix(fam, 1e-3), ACC)
        assert math.isfinite(value.log_norm)
        assert not value.vanishing


class TestReduction:
    def test_fixed_point(self):
        w = reduce_fundamental_domain(UpperHalfPoint(0.0, 1.0))
        assert (w.re, w.im) == (0.0, 1.0)

    def test_lands_in_fundamental_region(self):
        w = reduce_fundamental_domain(UpperHalfPoint(0.7, 0.1))
        assert abs(w.re) <= 0.5 + 1e-12
        assert abs(w.value) >= 1.0 - 1e-12

    def test_idempotent(self, rng):
        for _ in range(30):
            base = random_omega(rng, im_range=(0.05, 0.5), re_range=(-3, 3))
            once = reduce_fundamental_domain(UpperHalfPoint(base.real, base.imag))
            twice = reduce_fundamental_domain(once)
            assert (twice.re, twice.im) == pytest.approx((once.re, once.im), abs=1e-12)

    def test_region_membership_random(self, rng):
        for _ in range(50):
            base = random_omega(rng, im_range=(0.05, 0.5), re_range=(-3, 3))
            w = reduce_fundamental_domain(UpperHalfPoint(base.real, base.imag))
            assert abs(w.re) <= 0.5 + 1e-12
            assert abs(w.value) >= 1.0 - 1e-12

    def test_petersson_norm_constant_along_reduction(self, rng):
        for _ in range(50):
            base = random_omega(rng, im_range=(0.05, 0.5), re_range=(-2, 2))
            point = UpperHalfPoint(base.real, base.imag)
            reduced = reduce_fundamental_domain(point)
            assert (log_petersson_eta(point, ACC).log_norm
                    == pytest.approx(log_petersson_eta(reduced, ACC).log_norm, abs=1e-11))

    def test_reduced_point_allows_direct_eta(self, rng):
        # after reduction Im >= sqrt(3)/2, so log_abs_eta converges quickly
        for _ in range(20):
            base = random_omega(rng, im_range=(0.05, 0.3), re_range=(-2, 2))
            reduced = reduce_fundamental_domain(UpperHalfPoint(base.real, base.imag))
            assert reduced.im >= math.sqrt(3) / 2 - 1e-12
            value = log_abs_eta(reduced, ACC)
            assert value == pytest.approx(
                log_abs_eta_oracle(reduced.value), abs=2 * ACC.eps_abs)
