import math

import numpy as np
import pytest
from scipy import special as sps

from dirac_levinson.special import (
    double_factorial,
    modified_i,
    modified_k,
    reduced_j,
    spherical_j,
    spherical_j_zero,
    spherical_y,
)


def scipy_j(n, x):
    return sps.spherical_jn(n, x)


def scipy_y(n, x):
    return sps.spherical_yn(n, x)


def scipy_i(n, x):
    return np.sqrt(np.pi / (2 * x)) * sps.iv(n + 0.5, x)


def scipy_k(n, x):
    return np.sqrt(np.pi / (2 * x)) * sps.kv(n + 0.5, x)


class TestPointValues:
    def test_j0_at_pi(self):
        assert abs(spherical_j(0, math.pi)) < 1e-14

    def test_j0_at_one(self):
        assert spherical_j(0, 1.0) == pytest.approx(0.8414709848, abs=1e-10)

    def test_j1_small_argument(self):
        # series x/3 - x^3/30 at x = 1e-3
        x = 1e-3
        expected = x / 3.0 - x**3 / 30.0
        assert spherical_j(1, x) == pytest.approx(expected, rel=1e-12)

    def test_y0_at_half_pi(self):
        assert abs(spherical_y(0, math.pi / 2)) < 1e-14

    def test_y0_at_one(self):
        assert spherical_y(0, 1.0) == pytest.approx(-0.5403023059, abs=1e-10)

    def test_y1_at_one(self):
        # y1(x) = -cos x/x^2 - sin x/x
        assert spherical_y(1, 1.0) == pytest.approx(-1.3817732906760363, rel=1e-12)

    def test_i0_at_one(self):
        assert modified_i(0, 1.0) == pytest.approx(1.1752011936, abs=1e-10)

    def test_i0_small_limit(self):
        assert modified_i(0, 1e-8) == pytest.approx(1.0, abs=1e-12)

    def test_i1_at_two(self):
        # i1(x) = cosh x/x - sinh x/x^2
        expected = math.cosh(2.0) / 2.0 - math.sinh(2.0) / 4.0
        assert expected == pytest.approx(0.9743827435800609, rel=1e-12)
        assert modified_i(1, 2.0) == pytest.approx(expected, rel=1e-12)

    def test_k0_at_one(self):
        assert modified_k(0, 1.0) == pytest.approx((math.pi / 2) * math.exp(-1.0), rel=1e-12)
        assert modified_k(0, 1.0) == pytest.approx(0.5778636749, abs=1e-9)

    def test_k0_at_ten(self):
        assert modified_k(0, 10.0) == pytest.approx((math.pi / 2) * math.exp(-10.0) / 10.0, rel=1e-12)

    def test_k1_at_one(self):
        expected = (math.pi / 2) * math.exp(-1.0) * (1.0 + 1.0)
        assert modified_k(1, 1.0) == pytest.approx(expected, rel=1e-12)
        assert modified_k(1, 1.0) == pytest.approx(1.1557273498, abs=1e-9)


@pytest.mark.parametrize("n", range(7))
def test_j_matches_reference(n):
    x = np.geomspace(1e-3, 50.0, 400)
    ours = spherical_j(n, x)
    ref = scipy_j(n, x)
    scale = np.maximum(np.abs(ref), 1e-280)
    assert np.max(np.abs(ours - ref) / scale) < 1e-10


@pytest.mark.parametrize("n", range(7))
def test_y_matches_reference(n):
    x = np.geomspace(1e-3, 50.0, 400)
    ours = spherical_y(n, x)
    ref = scipy_y(n, x)
    assert np.max(np.abs(ours - ref) / np.abs(ref)) < 1e-10


@pytest.mark.parametrize("n", range(7))
def test_i_matches_reference(n):
    x = np.geomspace(1e-3, 50.0, 400)
    ours = modified_i(n, x)
    ref = scipy_i(n, x)
    assert np.max(np.abs(ours - ref) / np.abs(ref)) < 1e-10


@pytest.mark.parametrize("n", range(7))
def test_k_matches_reference(n):
    x = np.geomspace(1e-3, 50.0, 400)
    ours = modified_k(n, x)
    ref = scipy_k(n, x)
    assert np.max(np.abs(ours - ref) / np.abs(ref)) < 1e-10


@pytest.mark.parametrize("n", range(1, 7))
def test_wronskian_identity(n):
    x = np.geomspace(1e-3, 50.0, 400)
    w = spherical_j(n, x) * spherical_y(n - 1, x) - spherical_j(n - 1, x) * spherical_y(n, x)
    assert np.max(np.abs(w * x * x - 1.0)) < 1e-10


@pytest.mark.parametrize("n", range(7))
def test_small_argument_limit(n):
    x = 1e-4
    val = spherical_j(n, x) * double_factorial(2 * n + 1) / x**n
    assert val == pytest.approx(1.0, abs=1e-6)


class TestReducedJ:
    def test_matches_j_for_positive_z(self):
        for n in range(4):
            for x in (0.5, 2.0, 7.3, 20.0):
                assert reduced_j(n, x * x) == pytest.approx(
                    spherical_j(n, x) / x**n, rel=1e-12)

    def test_matches_i_for_negative_z(self):
        for n in range(4):
            for x in (0.5, 2.0, 7.3):
                assert reduced_j(n, -x * x) == pytest.approx(
                    modified_i(n, x) / x**n, rel=1e-12)

    def test_value_at_zero(self):
        for n in range(5):
            assert reduced_j(n, 0.0) == pytest.approx(1.0 / double_factorial(2 * n + 1), rel=1e-14)

    def test_continuity_across_zero(self):
        for n in range(4):
            lo = reduced_j(n, -1e-12)
            hi = reduced_j(n, 1e-12)
            assert lo == pytest.approx(hi, rel=1e-10)


class TestValidation:
    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            spherical_j(0, float("nan"))

    def test_nonpositive_rejected(self):
        for fn in (spherical_j, spherical_y, modified_i, modified_k):
            with pytest.raises(ValueError):
                fn(0, 0.0)
            with pytest.raises(ValueError):
                fn(1, -1.0)

    def test_i_overflow_reported(self):
        with pytest.raises(OverflowError):
            modified_i(0, 800.0)

    def test_k_underflow_allowed(self):
        assert modified_k(0, 760.0) == 0.0

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            spherical_j(-1, 1.0)


class TestZeros:
    def test_first_zero_of_j0(self):
        assert spherical_j_zero(0, 1) == pytest.approx(math.pi, rel=1e-12)

    def test_first_zero_of_j1(self):
        # tan x = x
        assert spherical_j_zero(1, 1) == pytest.approx(4.493409457909064, rel=1e-10)

    def test_second_zero_of_j0(self):
        assert spherical_j_zero(0, 2) == pytest.approx(2 * math.pi, rel=1e-12)

    def test_zeros_interlace(self):
        z0 = [spherical_j_zero(1, k) for k in (1, 2, 3)]
        z1 = [spherical_j_zero(2, k) for k in (1, 2, 3)]
        assert z0[0] < z1[0] < z0[1] < z1[1] < z0[2] < z1[2]


def test_double_factorial():
    assert double_factorial(-1) == 1.0
    assert double_factorial(1) == 1.0
    assert double_factorial(3) == 3.0
    assert double_factorial(5) == 15.0
    assert double_factorial(7) == 105.0
