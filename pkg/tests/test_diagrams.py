"""Tests for the diagram algebra.

Oracle values marked [DERIVED] were computed by hand from the defining
combinatorial rules and frozen here; [TRIVIAL] marks structural facts.
"""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotcocycle.diagrams import (
    EMPTY,
    Diagram,
    FormalSum,
    Series,
    SlottedDiagram,
    canonicalize,
    concat,
    diagram_from_json,
    diagram_to_json,
    enumerate_chord_diagrams,
    enumerate_trees,
    enumerate_triangle_vee,
    enumerate_two_vee_diagrams,
    enumerate_v_diagrams,
    lk,
    product,
    series_inv,
    series_mul,
    sigma,
    sigma_sum,
)


# ---------------------------------------------------------------------------
# lk
# ---------------------------------------------------------------------------


class TestLk:
    def test_interleaved_pair(self):
        # [DERIVED] one point of P={2,4} lies strictly inside (1,3)
        assert lk({2, 4}, {1, 3}) == -1

    def test_disjoint_pair(self):
        # [DERIVED] no point of P={5,6} lies inside (1,2)
        assert lk({5, 6}, {1, 2}) == 1

    def test_triple_against_chord(self):
        # [DERIVED] two points of P={1,3,5} lie inside (2,6)
        assert lk({1, 3, 5}, {2, 6}) == 1

    def test_q_must_have_two_points(self):
        with pytest.raises(ValueError):
            lk({1, 2}, {3, 4, 5})

    def test_disjointness_required(self):
        with pytest.raises(ValueError):
            lk({1, 2}, {2, 3})

    def test_symmetric_for_chord_pairs(self):
        # [TRIVIAL] for two 2-sets both orders agree
        for c1, c2 in itertools.combinations(itertools.combinations(range(1, 7), 2), 2):
            if set(c1) & set(c2):
                continue
            assert lk(c1, c2) == lk(c2, c1)


# ---------------------------------------------------------------------------
# sigma
# ---------------------------------------------------------------------------


def vdiag(mid, tips, chords):
    return canonicalize(chords=chords, vees=[(mid, tips[0], tips[1])])


class TestSigma:
    def test_separated_vee_and_chord(self):
        # [DERIVED] no point of the V triple {1,2,3} lies inside (4,5)
        sign, same = sigma(vdiag(2, (1, 3), [(4, 5)]))
        assert sign == 1
        assert same == vdiag(2, (1, 3), [(4, 5)])

    def test_straddling_chord_even(self):
        # [DERIVED] points 3,5 of the triple {1,3,5} lie inside (2,6)
        sign, _ = sigma(vdiag(3, (1, 5), [(2, 6)]))
        assert sign == 1

    def test_straddling_chord_odd(self):
        # [DERIVED] only point 3 of the triple {1,3,5} lies inside (2,4)
        sign, _ = sigma(vdiag(3, (1, 5), [(2, 4)]))
        assert sign == -1

    def test_chord_chord_pairs_counted(self):
        # [DERIVED] crossing chords give one lk=-1 pair
        d = canonicalize(chords=[(1, 3), (2, 4)])
        assert sigma(d)[0] == -1
        nested = canonicalize(chords=[(1, 4), (2, 3)])
        assert sigma(nested)[0] == 1

    def test_rejects_tree_diagrams(self):
        with pytest.raises(ValueError):
            sigma(enumerate_trees()[0])

    @given(st.integers(2, 3), st.randoms())
    @settings(max_examples=50, deadline=None)
    def test_involution(self, m, rng):
        # [TRIVIAL] sigma squares to the identity
        basis = enumerate_v_diagrams(m)
        d = basis[rng.randrange(len(basis))]
        s1, d1 = sigma(d)
        s2, d2 = sigma(d1)
        assert d2 == d and s1 * s2 == 1
        twice = sigma_sum(sigma_sum(FormalSum.single(d, Fraction(3, 7))))
        assert twice == FormalSum.single(d, Fraction(3, 7))


# ---------------------------------------------------------------------------
# canonicalize
# ---------------------------------------------------------------------------


class TestCanonicalize:
    def test_raw_positions_become_ranks(self):
        # [DERIVED] positions {1,2,3,5,9} rank to 1..5
        d = canonicalize(chords=[(2, 3)], vees=[(5, 1, 9)])
        assert d.q == 5
        assert d.chords == ((2, 3),)
        assert d.vees == ((4, 1, 5),)

    def test_idempotent(self):
        d = canonicalize(chords=[(2, 3)], vees=[(5, 1, 9)])
        again = canonicalize(chords=d.chords, vees=d.vees)
        assert again == d

    def test_real_positions_allowed(self):
        d = canonicalize(chords=[(0.5, 2.25)], vees=[(-1.0, 0.0, 7.5)])
        assert d.q == 5
        assert d.vees == ((1, 2, 5),)

    def test_duplicate_position_rejected(self):
        with pytest.raises(ValueError):
            canonicalize(chords=[(1, 2), (2, 3)])

    def test_tree_must_span(self):
        with pytest.raises(ValueError):
            canonicalize(tree=[(1, 2), (1, 3), (2, 3)])

    def test_graph_connectivity_required(self):
        with pytest.raises(ValueError):
            canonicalize(chords=[(5, 6)], graph4=[(1, 2), (1, 2), (3, 4), (3, 4)])

    def test_kind_and_degree_tags(self):
        # [TRIVIAL]
        assert EMPTY.kind == "D0" and EMPTY.degree == 0
        assert canonicalize(chords=[(1, 2)]).degree == 1
        v = canonicalize(vees=[(2, 1, 3)])
        assert v.kind == "D1" and v.degree == 2
        t = enumerate_trees()[0]
        assert t.kind == "D2-tree" and t.degree == 3
        tv = enumerate_triangle_vee()[0]
        assert tv.kind == "D2tilde-triVee" and tv.degree == 5
        two = enumerate_two_vee_diagrams(4)[0]
        assert two.kind == "D2-twoVee" and two.degree == 4


# ---------------------------------------------------------------------------
# enumerations
# ---------------------------------------------------------------------------


class TestEnumerations:
    def test_chord_diagram_counts(self):
        # [DERIVED] double factorials (2m-1)!!
        assert [len(enumerate_chord_diagrams(m)) for m in range(5)] == [1, 1, 3, 15, 105]

    def test_degree2_patterns(self):
        pats = {d.chords for d in enumerate_chord_diagrams(2)}
        assert pats == {((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))}

    def test_v_diagram_counts(self):
        # [DERIVED] C(q,3)*3*(matchings of the rest)
        assert len(enumerate_v_diagrams(2)) == 3
        assert len(enumerate_v_diagrams(3)) == 30
        assert len(enumerate_v_diagrams(4)) == 315

    def test_two_vee_count_degree4(self):
        # [DERIVED] 10 triple splits x 9 mid choices
        assert len(enumerate_two_vee_diagrams(4)) == 90

    def test_sixteen_trees(self):
        trees = enumerate_trees()
        assert len(trees) == 16
        # [TRIVIAL] stars first, by center
        star_edges = [set(t.tree) for t in trees[:4]]
        for center, edges in enumerate(star_edges, start=1):
            expected = {tuple(sorted((center, other))) for other in range(1, 5) if other != center}
            assert edges == expected
        # paths are sorted lexicographically
        path_lists = [t.tree for t in trees[4:]]
        assert path_lists == sorted(path_lists)

    def test_triangle_vee_generators(self):
        gens = enumerate_triangle_vee()
        assert len(gens) == 6
        assert gens[0].triangle_vee == ((4, 5, 6), (1, 2, 3))
        assert gens[3].triangle_vee == ((1, 2, 3), (4, 5, 6))

    def test_enumeration_sorted_and_unique(self):
        for basis in (enumerate_chord_diagrams(3), enumerate_v_diagrams(3)):
            keys = [d.sort_key() for d in basis]
            assert keys == sorted(keys)
            assert len(set(keys)) == len(keys)


# ---------------------------------------------------------------------------
# concat / product / series
# ---------------------------------------------------------------------------


class TestProduct:
    def test_concat_places_blocks_in_order(self):
        left = canonicalize(chords=[(1, 2)])
        mid = canonicalize(vees=[(2, 1, 3)])
        right = canonicalize(chords=[(1, 3), (2, 4)])
        d = concat(left, mid, right)
        assert d.q == 9
        assert d.vees == ((4, 3, 5),)
        assert d.chords == ((1, 2), (6, 8), (7, 9))
        assert d.degree == left.degree + mid.degree + right.degree

    def test_concat_requires_outer_d0(self):
        v = canonicalize(vees=[(2, 1, 3)])
        with pytest.raises(ValueError):
            concat(v, EMPTY, EMPTY)

    def test_product_identity(self):
        v = canonicalize(vees=[(2, 1, 3)])
        assert product(EMPTY, v) == v
        assert product(v, EMPTY) == v

    def test_product_rejects_two_nontrivial_kinds(self):
        v = canonicalize(vees=[(2, 1, 3)])
        with pytest.raises(ValueError):
            product(v, v)

    @given(st.randoms())
    @settings(max_examples=25, deadline=None)
    def test_product_associative(self, rng):
        basis = enumerate_chord_diagrams(2)
        a, b, c = (basis[rng.randrange(len(basis))] for _ in range(3))
        assert product(product(a, b), c) == product(a, product(b, c))


class TestSeries:
    def test_inverse_of_one_plus_cd(self):
        # [DERIVED] (1 + cD)^{-1} = 1 - cD + c^2 D.D  truncated at deg 4
        d = canonicalize(chords=[(1, 3), (2, 4)])
        c = Fraction(2, 3)
        a = Series({0: FormalSum.single(EMPTY, 1), 2: FormalSum.single(d, c)}, 4)
        inv = series_inv(a)
        assert inv.part(0) == FormalSum.single(EMPTY, 1)
        assert inv.part(2) == FormalSum.single(d, -c)
        assert inv.part(4) == FormalSum.single(product(d, d), c * c)
        assert not inv.part(1) and not inv.part(3)

    def test_mul_by_inverse_is_unit(self):
        d1 = canonicalize(chords=[(1, 2)])
        d2 = canonicalize(chords=[(1, 3), (2, 4)])
        a = Series(
            {
                0: FormalSum.single(EMPTY, 1),
                1: FormalSum.single(d1, Fraction(1, 2)),
                2: FormalSum.single(d2, Fraction(-3, 5)),
            },
            3,
        )
        assert series_mul(a, series_inv(a)) == Series.unit(3)
        assert series_mul(series_inv(a), a) == Series.unit(3)

    def test_inv_requires_unit_constant_term(self):
        with pytest.raises(ValueError):
            series_inv(Series({0: FormalSum.single(EMPTY, 2)}, 2))


# ---------------------------------------------------------------------------
# formal sums
# ---------------------------------------------------------------------------


class TestFormalSum:
    def test_zero_coefficients_dropped(self):
        d = canonicalize(chords=[(1, 2)])
        s = FormalSum.single(d, 1) + FormalSum.single(d, -1)
        assert not s and len(s) == 0

    def test_arithmetic(self):
        d1 = canonicalize(chords=[(1, 2)])
        d2 = canonicalize(chords=[(1, 3), (2, 4)])
        s = 2 * FormalSum.single(d1, Fraction(1, 2)) - FormalSum.single(d2, 3)
        assert s[d1] == 1 and s[d2] == -3
        assert s.keys() == [d1, d2]


# ---------------------------------------------------------------------------
# slotted diagrams
# ---------------------------------------------------------------------------


class TestSlottedDiagram:
    def test_doubled_slot_detection(self):
        s = SlottedDiagram(slots=(1, 2, 3, 3, 4), chords=((1, 3),), vees=((4, 2, 5),))
        assert s.doubled_slot() == 3
        assert s.degree == 3

    def test_collapse_forgets_slots(self):
        s = SlottedDiagram(slots=(1, 2, 3, 3, 4), chords=((1, 3),), vees=((4, 2, 5),))
        assert s.collapse() == Diagram(q=5, chords=((1, 3),), vees=((4, 2, 5),))

    def test_distinct_slots_same_collapse(self):
        # [TRIVIAL] slot data distinguishes otherwise equal diagrams
        a = SlottedDiagram(slots=(1, 1, 2, 3), chords=((1, 3), (2, 4)))
        b = SlottedDiagram(slots=(1, 2, 2, 3), chords=((1, 3), (2, 4)))
        assert a != b and a.collapse() == b.collapse()

    def test_validation(self):
        with pytest.raises(ValueError):
            SlottedDiagram(slots=(2, 1), chords=((1, 2),))
        with pytest.raises(ValueError):
            SlottedDiagram(slots=(1, 2, 3), chords=((1, 2),))


# ---------------------------------------------------------------------------
# JSON round-trips
# ---------------------------------------------------------------------------


class TestJson:
    def test_round_trip(self):
        d = canonicalize(chords=[(4, 7)], vees=[(2, 1, 3)], )
        assert diagram_from_json(diagram_to_json(d)) == d
        t = enumerate_trees()[7]
        assert diagram_from_json(diagram_to_json(t)) == t
        tv = enumerate_triangle_vee()[2]
        assert diagram_from_json(diagram_to_json(tv)) == tv

    def test_reader_canonicalizes_raw_positions(self):
        data = {"chords": [[10, 40]], "vees": [[30, 20, 50]]}
        d = diagram_from_json(data)
        assert d.q == 5 and d.chords == ((1, 4),) and d.vees == ((3, 2, 5),)

    def test_free_points_rejected(self):
        with pytest.raises(ValueError):
            diagram_from_json({"q": 6, "chords": [[1, 2]], "vees": [[4, 3, 5]]})
