"""Tests for knot projections, crossings, and the Alexander/Conway chain.

[PAPER] marks textbook invariant values (trefoil: Alexander t - 1 + 1/t,
Conway 1 + z^2, determinant 3, Casson invariant 1); [DERIVED] marks
values frozen from hand computation on the fixture geometry; [TRIVIAL]
marks direct consequences of the definitions.
"""

import pytest

from knotcocycle.conway import (
    alexander_polynomial,
    casson_invariant,
    conway_polynomial,
    crossings,
    determinant_at_minus_one,
)
from knotcocycle.morse import MorseKnot, load_knot_fixture

HUMP = [(0, 0, 0), (2, 0, 3), (1, 0.5, 1), (0, 0, 4)]


class TestCrossings:
    def test_line_has_no_crossings(self):
        # [TRIVIAL] a straight arc projects to a straight arc
        assert crossings(load_knot_fixture("line")) == []

    def test_hump_single_crossing(self):
        # [DERIVED] the (x, t) projection of the hump crosses once: segment
        # 0 passes under segment 2 at parameters s = 4/9 and u = 1/9, and
        # the frame (over tangent, under tangent) is negatively oriented
        (c,) = crossings(MorseKnot(HUMP))
        assert c.under_param == pytest.approx(4 / 9)
        assert c.over_param == pytest.approx(2 + 1 / 9)
        assert c.sign == -1

    def test_trefoil_fixtures_have_four_crossings(self):
        # [DERIVED] both trefoil embeddings project with four double
        # points: the three essential crossings plus one kink, for a
        # writhe of 3 - 1 = 2
        for name in ("trefoil_a", "trefoil_b"):
            cr = crossings(load_knot_fixture(name))
            assert len(cr) == 4
            assert sum(c.sign for c in cr) == 2

    def test_crossing_at_vertex_rejected(self):
        # moving the hump's interior minimum onto the projected crossing
        # point makes the double point land on a vertex
        k = MorseKnot([(0, 0, 0), (2, 0, 3), (8 / 9, 0.5, 4 / 3), (0, 0, 4)])
        with pytest.raises(ValueError, match="cross at a vertex"):
            crossings(k)

    def test_equal_depth_rejected(self):
        # a planar (hence non-embedded) diagram has no over/under data;
        # built unvalidated because the knot validator also rejects it
        flat = MorseKnot([(0, 0, 0), (2, 0, 3), (1, 0, 1), (0, 0, 4)], validate=False)
        with pytest.raises(ValueError, match="equal depth"):
            crossings(flat)


class TestAlexanderConway:
    def test_line_alexander_trivial(self):
        # [TRIVIAL] zero crossings: Alexander polynomial 1
        assert alexander_polynomial(load_knot_fixture("line")) == {0: 1}

    def test_hump_alexander_trivial(self):
        # [DERIVED] one kink is undone by a Reidemeister-I move, so the
        # hump is an unknot: Alexander polynomial 1, Conway 1
        k = load_knot_fixture("hump")
        assert alexander_polynomial(k) == {0: 1}
        assert conway_polynomial(k) == [1]
        assert casson_invariant(k) == 0
        assert determinant_at_minus_one(k) == 1

    @pytest.mark.parametrize("name", ["trefoil_a", "trefoil_b"])
    def test_trefoil_invariants(self, name):
        # [PAPER] trefoil: Alexander t - 1 + 1/t, Conway 1 + z^2,
        # determinant 3, degree-two coefficient 1
        k = load_knot_fixture(name)
        assert alexander_polynomial(k) == {-1: 1, 0: -1, 1: 1}
        assert conway_polynomial(k) == [1, 0, 1]
        assert casson_invariant(k) == 1
        assert determinant_at_minus_one(k) == 3

    def test_alexander_symmetric_normalisation(self):
        # [TRIVIAL] the returned polynomial is centred and evaluates to
        # +1 at t = 1
        alex = alexander_polynomial(load_knot_fixture("trefoil_a"))
        assert alex == {-e: c for e, c in alex.items()}
        assert sum(alex.values()) == 1

    def test_conway_odd_coefficients_vanish(self):
        # [TRIVIAL] the Conway polynomial of a knot is even in z
        coeffs = conway_polynomial(load_knot_fixture("trefoil_b"))
        assert all(c == 0 for c in coeffs[1::2])
