import json

import pytest

from dirac_levinson.potential import (
    AngularChannel,
    CutoffPotential,
    PhysicalScale,
    potential_from_json,
    potential_to_json,
    reflect,
    square_well,
)


class TestSquareWell:
    def test_free_case(self):
        p = square_well(0.0, 1.0)
        assert p.evaluate(0.5) == 0.0
        assert p.evaluate(2.0) == 0.0

    def test_attractive_sign(self):
        p = square_well(3.0, 1.0)
        assert p.evaluate(0.5) == -3.0
        assert p.evaluate(2.0) == 0.0

    def test_repulsive_sign(self):
        p = square_well(-1.0, 2.0)
        assert p.evaluate(1.0) == 1.0

    def test_boundary_belongs_to_interior(self):
        p = square_well(2.0, 1.0)
        assert p.evaluate(0.3) == -2.0
        assert p.evaluate(1.0) == -2.0
        assert p.evaluate(1.0 + 1e-12) == 0.0

    def test_bad_radius(self):
        with pytest.raises(ValueError):
            square_well(1.0, 0.0)
        with pytest.raises(ValueError):
            square_well(1.0, -2.0)

    def test_well_depth(self):
        assert square_well(2.5, 1.0).well_depth == 2.5


class TestReflect:
    def test_negates_square_well(self):
        p = reflect(square_well(2.0, 1.5))
        assert p.evaluate(1.0) == 2.0
        assert p.r0 == 1.5

    def test_involution(self):
        p = CutoffPotential(((0.5, -1.0), (1.0, 2.0)))
        assert reflect(reflect(p)) == p

    def test_zero_fixed_point(self):
        free = square_well(0.0, 1.0)
        assert reflect(free) == free


class TestEvaluate:
    def test_piecewise_lookup(self):
        p = CutoffPotential(((0.5, -2.0), (1.0, 1.0)))
        assert p.evaluate(0.2) == -2.0
        assert p.evaluate(0.5) == -2.0
        assert p.evaluate(0.7) == 1.0
        assert p.evaluate(1.0) == 1.0
        assert p.evaluate(5.0) == 0.0

    def test_zero_beyond_cutoff_always(self):
        for p in (square_well(4.0, 0.7), CutoffPotential(((1.0, 3.0), (2.0, -1.0)))):
            assert p.evaluate(p.r0 + 1.0) == 0.0

    def test_nonpositive_radius_rejected(self):
        with pytest.raises(ValueError):
            square_well(1.0, 1.0).evaluate(0.0)

    def test_bad_segments(self):
        with pytest.raises(ValueError):
            CutoffPotential(((1.0, 0.5), (0.5, 1.0)))
        with pytest.raises(ValueError):
            CutoffPotential(())


class TestAngularChannel:
    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            AngularChannel(0)

    @pytest.mark.parametrize("kappa,j,l", [(1, 0.5, 1), (2, 1.5, 2), (-1, 0.5, 0), (-2, 1.5, 1)])
    def test_quantum_numbers(self, kappa, j, l):
        ch = AngularChannel(kappa)
        assert ch.j == j
        assert ch.l == l

    def test_mirror(self):
        assert AngularChannel(2).mirror() == AngularChannel(-2)


class TestPhysicalScale:
    def test_positive_mass_required(self):
        with pytest.raises(ValueError):
            PhysicalScale(0.0)
        with pytest.raises(ValueError):
            PhysicalScale(-1.0)


class TestJson:
    def test_round_trip(self):
        p = CutoffPotential(((0.5, -2.0), (1.0, 1.0)))
        assert potential_from_json(potential_to_json(p)) == p

    def test_schema(self):
        text = json.dumps({"segments": [[0.5, -1.0], [1.0, 0.5]], "r0": 1.0})
        p = potential_from_json(text)
        assert p.r0 == 1.0
        assert p.evaluate(0.25) == -1.0

    def test_inconsistent_r0_rejected(self):
        text = json.dumps({"segments": [[1.0, -1.0]], "r0": 2.0})
        with pytest.raises(ValueError):
            potential_from_json(text)
