import math

import numpy as np
import pytest

from dirac_levinson.interior import (
    EnergyPoint,
    ProjectiveRatio,
    closed_form_threshold_ratio,
    integrate_radial,
    interior_ratio,
    interior_rays_batch,
)
from dirac_levinson.kernels import trajectory
from dirac_levinson.potential import AngularChannel, PhysicalScale, square_well
from dirac_levinson.special import modified_i, spherical_j, spherical_j_zero

M = 1.0
R0 = 1.0
SCALE = PhysicalScale(M)


def branch_ratio(lam, kappa, threshold, M=1.0, r0=1.0):
    """Literal three-branch threshold formulas, used as the test oracle.

    The evanescent branch carries the modified-Bessel reduction
    i J_{k+1/2}(i x)/J_{k-1/2}(i x) = -I_{k+1/2}(x)/I_{k-1/2}(x); its sign
    is fixed by two-sided continuity at the regime boundaries (which the
    acceptance suite checks independently).
    """
    jr = lambda x: spherical_j(kappa, x) / spherical_j(kappa - 1, x)
    ir = lambda x: modified_i(kappa, x) / modified_i(kappa - 1, x)
    if threshold == +1:
        if lam >= 0:
            p1 = math.sqrt(lam * (lam + 2 * M))
            if p1 == 0.0:
                return -2 * M * r0 / (2 * kappa + 1)
            return -math.sqrt((2 * M + lam) / lam) * jr(p1 * r0)
        if -2 * M < lam < 0:
            p2 = math.sqrt(abs(lam) * (2 * M - abs(lam)))
            return -math.sqrt((2 * M - abs(lam)) / abs(lam)) * ir(p2 * r0)
        p3 = math.sqrt(abs(lam) * (abs(lam) - 2 * M))
        if p3 == 0.0:
            return 0.0
        return math.sqrt((abs(lam) - 2 * M) / abs(lam)) * jr(p3 * r0)
    else:
        if lam <= 0:
            p1 = math.sqrt(abs(lam) * (abs(lam) + 2 * M))
            if p1 == 0.0:
                return 0.0
            return math.sqrt(abs(lam) / (abs(lam) + 2 * M)) * jr(p1 * r0)
        if 0 < lam < 2 * M:
            p2 = math.sqrt(lam * (2 * M - lam))
            return -math.sqrt(lam / (2 * M - lam)) * ir(p2 * r0)
        p3 = math.sqrt(lam * (lam - 2 * M))
        if p3 == 0.0:
            return -r0 * lam / (2 * kappa + 1)
        return -math.sqrt(lam / (lam - 2 * M)) * jr(p3 * r0)


class TestFreeAnchors:
    @pytest.mark.parametrize("kappa", [1, 2, 3])
    def test_plus_threshold(self, kappa):
        free = square_well(0.0, R0)
        a = interior_ratio(free, AngularChannel(kappa), EnergyPoint(M, M))
        assert a.value == pytest.approx(-2 * M * R0 / (2 * kappa + 1), abs=1e-8)

    @pytest.mark.parametrize("kappa", [1, 2, 3])
    def test_minus_threshold(self, kappa):
        free = square_well(0.0, R0)
        a = interior_ratio(free, AngularChannel(kappa), EnergyPoint(-M, M))
        assert abs(a.value) < 1e-8

    def test_kappa2_value(self):
        free = square_well(0.0, R0)
        a = interior_ratio(free, AngularChannel(2), EnergyPoint(M, M))
        assert a.value == pytest.approx(-0.4, abs=1e-8)


class TestClosedFormOracle:
    @pytest.mark.parametrize("kappa", [1, 2, 3])
    @pytest.mark.parametrize("threshold", [+1, -1])
    def test_matches_branch_formulas(self, kappa, threshold):
        ch = AngularChannel(kappa)
        for lam in np.arange(-5.0, 5.0001, 0.1):
            lam = float(lam)
            cf = closed_form_threshold_ratio(lam, SCALE, R0, ch, threshold)
            if cf.is_infinite:
                continue
            want = branch_ratio(lam, kappa, threshold)
            assert cf.value == pytest.approx(want, rel=1e-9, abs=1e-9), f"lam={lam}"

    @pytest.mark.parametrize("kappa", [1, 2, 3])
    @pytest.mark.parametrize("threshold", [+1, -1])
    def test_matches_integration(self, kappa, threshold):
        ch = AngularChannel(kappa)
        poles = _pole_lambdas(kappa, threshold)
        for lam in np.arange(-5.0, 5.0001, 0.1):
            lam = float(lam)
            if any(abs(lam - lp) < 0.01 for lp in poles):
                continue
            cf = closed_form_threshold_ratio(lam, SCALE, R0, ch, threshold)
            a = interior_ratio(square_well(lam, R0), ch, EnergyPoint(threshold * M, M))
            assert cf.distance(a) < 1e-6, f"lam={lam}"

    def test_pole_is_a_regular_value(self):
        # first pole of the +M ratio at kappa=1: sin(p1 r0) = 0 -> p1 = pi
        lam_star = math.sqrt(1 + math.pi**2) - 1
        cf = closed_form_threshold_ratio(lam_star, SCALE, R0, AngularChannel(1), +1)
        assert abs(cf.g0) < 1e-12
        a = interior_ratio(square_well(lam_star, R0), AngularChannel(1), EnergyPoint(M, M))
        assert abs(a.g0) < 1e-6  # integration hits the same ray

    def test_square_well_cross_oracle_example(self):
        a = interior_ratio(square_well(1.0, R0), AngularChannel(1), EnergyPoint(M, M))
        cf = closed_form_threshold_ratio(1.0, SCALE, R0, AngularChannel(1), +1)
        assert a.distance(cf) < 1e-6


def _pole_lambdas(kappa, threshold):
    zeros = [spherical_j_zero(kappa - 1, k) for k in (1, 2, 3)] if kappa > 1 else \
            [k * math.pi for k in (1, 2, 3)]
    lams = []
    for z in zeros:
        # attractive side: lam (lam + 2M sign bookkeeping) = z^2
        lams.append(-M + math.sqrt(M * M + z * z) if threshold == +1 else
                    M + math.sqrt(M * M + z * z))
        lams.append(-(M + math.sqrt(M * M + z * z)) if threshold == +1 else
                    -(-M + math.sqrt(M * M + z * z)))
    return lams


class TestBranchContinuity:
    @pytest.mark.parametrize("kappa", [1, 2, 3])
    @pytest.mark.parametrize("threshold", [+1, -1])
    @pytest.mark.parametrize("boundary", [0.0, 2.0, -2.0])
    def test_two_sided_limits(self, kappa, threshold, boundary):
        ch = AngularChannel(kappa)
        eps = 1e-9
        lo = closed_form_threshold_ratio(boundary - eps, SCALE, R0, ch, threshold)
        hi = closed_form_threshold_ratio(boundary + eps, SCALE, R0, ch, threshold)
        assert lo.distance(hi) < 1e-6


class TestMonotonicity:
    @pytest.mark.parametrize("kappa", [1, 2, 3])
    @pytest.mark.parametrize("threshold", [+1, -1])
    def test_decreases_between_poles(self, kappa, threshold):
        ch = AngularChannel(kappa)
        lams = np.arange(-5.0, 5.0001, 0.01)
        vals = []
        for lam in lams:
            cf = closed_form_threshold_ratio(float(lam), SCALE, R0, ch, threshold)
            vals.append(cf.value if not cf.is_infinite else math.inf)
        vals = np.array(vals)
        jumps = np.diff(vals)
        # increases are allowed only at pole wraps (value leaps from low to high)
        bad = (jumps > 0) & (np.abs(jumps) < 1e3) & np.isfinite(jumps)
        assert not np.any(bad)


class TestWronskian:
    def test_constant_along_radius(self):
        rng = np.random.default_rng(42)
        for _ in range(20):
            lam = rng.uniform(-5, 5)
            E = rng.uniform(-3, 3)
            kappa = int(rng.integers(1, 4))
            p = square_well(lam, R0)
            _, f1, g1 = trajectory(kappa, E, M, p.seg_ends, p.seg_vals, p.r0, 2048,
                                   f0=1.0, g0=0.0)
            _, f2, g2 = trajectory(kappa, E, M, p.seg_ends, p.seg_vals, p.r0, 2048,
                                   f0=0.0, g0=1.0)
            w = f1 * g2 - f2 * g1
            assert np.max(np.abs(w - w[0])) / abs(w[0]) < 1e-8


class TestConvergence:
    @pytest.mark.parametrize("lam", [0.7, 2.5, -3.3])
    def test_doubling_steps(self, lam):
        ch = AngularChannel(1)
        p = square_well(lam, R0)
        a1 = interior_ratio(p, ch, EnergyPoint(0.5, M), n_steps=4096)
        a2 = interior_ratio(p, ch, EnergyPoint(0.5, M), n_steps=8192)
        assert a1.distance(a2) < 1e-8


class TestProjectiveRatio:
    def test_normalization(self):
        a = ProjectiveRatio(3.0, 4.0)
        assert math.hypot(a.f0, a.g0) == pytest.approx(1.0, abs=1e-12)
        assert a.value == pytest.approx(0.75)

    def test_sign_convention(self):
        a = ProjectiveRatio(-3.0, 4.0)
        assert a.f0 > 0 and a.g0 < 0

    def test_infinity_regular(self):
        a = ProjectiveRatio(-2.0, 0.0)
        assert a.is_infinite
        assert math.isinf(a.value)

    def test_distance_metric(self):
        a = ProjectiveRatio(1.0, 0.0)
        b = ProjectiveRatio(0.0, 1.0)
        assert a.distance(b) == pytest.approx(1.0)
        assert a.distance(a) == 0.0

    def test_zero_ray_rejected(self):
        with pytest.raises(ValueError):
            ProjectiveRatio(0.0, 0.0)


class TestIntegrateRadial:
    def test_rejects_nonpositive_kappa(self):
        with pytest.raises(ValueError):
            integrate_radial(square_well(1.0, R0), AngularChannel(-1), EnergyPoint(M, M))

    def test_rejects_small_step_count(self):
        with pytest.raises(ValueError):
            integrate_radial(square_well(1.0, R0), AngularChannel(1), EnergyPoint(M, M), n_steps=50)

    def test_samples_shape(self):
        s = integrate_radial(square_well(1.0, R0), AngularChannel(1), EnergyPoint(M, M), 256)
        assert len(s.radii) == 257
        assert s.boundary_ray is not None

    def test_scaled_lanes(self):
        base = square_well(1.0, R0)
        f, g = interior_rays_batch(base, AngularChannel(1), np.array([M, M]), M,
                                   512, scales=np.array([0.0, 2.5]))
        free = ProjectiveRatio(float(f[0]), float(g[0]))
        deep = ProjectiveRatio(float(f[1]), float(g[1]))
        assert free.value == pytest.approx(-2 / 3, abs=1e-8)
        want = closed_form_threshold_ratio(2.5, SCALE, R0, AngularChannel(1), +1)
        assert deep.distance(want) < 1e-7
