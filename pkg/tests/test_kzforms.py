"""Tests for the symbolic configuration-space forms.

Origin tags: [PAPER] identities and counts stated in the source text,
[DERIVED] values frozen from independent hand computation or from exhaustive
enumeration, [TRIVIAL] structural assertions.
"""

import itertools
from fractions import Fraction

import pytest

from knotcocycle.diagrams import SlottedDiagram
from knotcocycle.kzforms import (
    Poly,
    arnold_identity,
    curvature_matrix,
    form2_is_zero,
    grouped_two_t_identity,
    lambda_kz,
    omega_kz,
    omega_wedge,
    stacked_diagram,
    tree_form_sign,
)
from knotcocycle.ratlinalg import rank
from knotcocycle.relations import expand_tree
from knotcocycle.diagrams import enumerate_trees


class TestPoly:
    def test_difference_and_product(self):
        # [TRIVIAL] (z1 - z2)(z1 + z2 - ... ) style arithmetic stays exact
        a = Poly.difference(1, 2, 3)
        b = Poly.difference(2, 3, 3)
        prod = a * b
        assert prod.terms == {
            (1, 1, 0): Fraction(1),
            (1, 0, 1): Fraction(-1),
            (0, 2, 0): Fraction(-1),
            (0, 1, 1): Fraction(1),
        }

    def test_cancellation(self):
        a = Poly.difference(1, 2, 2)
        assert not (a - a)
        assert a + (-a) == Poly(2)

    def test_scalar(self):
        a = Poly.difference(1, 2, 2)
        assert (2 * a).terms == {(1, 0): Fraction(2), (0, 1): Fraction(-2)}


def _prufer_tree(seq, p):
    """Labelled tree on 1..p from a Prufer sequence (p-2 entries)."""

    degree = {v: 1 for v in range(1, p + 1)}
    for v in seq:
        degree[v] += 1
    edges = []
    remaining = list(seq)
    for v in seq:
        leaf = min(u for u in degree if degree[u] == 1 and u not in remaining)
        edges.append(tuple(sorted((leaf, v))))
        degree[leaf] -= 1
        degree[v] -= 1
        remaining.pop(0)
    last = sorted(u for u in degree if degree[u] == 1)
    edges.append((last[0], last[1]))
    return edges


class TestTreeFormSign:
    def test_single_edge(self):
        # [PAPER] omega_2 = dz1 - dz2, so the single edge carries +1
        assert tree_form_sign([(1, 2)]) == 1

    def test_path_123(self):
        # [PAPER] the path 1-2-3 carries -1
        assert tree_form_sign([(1, 2), (2, 3)]) == -1

    def test_all_p3_trees(self):
        # [DERIVED] every tree on three points evaluates to -1
        assert tree_form_sign([(1, 2), (1, 3)]) == -1
        assert tree_form_sign([(1, 3), (2, 3)]) == -1

    @pytest.mark.parametrize("p", [2, 3, 4, 5, 6])
    def test_prufer_exhaustive(self, p):
        # [PAPER] the wedge over any spanning tree is +-omega_p; exhaustive
        # over all p^(p-2) labelled trees (1296 at p = 6)
        if p == 2:
            seqs = [()]
        else:
            seqs = itertools.product(range(1, p + 1), repeat=p - 2)
        count = 0
        for seq in seqs:
            edges = _prufer_tree(list(seq), p)
            assert tree_form_sign(edges, p) in (1, -1)
            count += 1
        assert count == p ** max(p - 2, 0)

    def test_non_tree_rejected(self):
        with pytest.raises(ValueError):
            tree_form_sign([(1, 2), (2, 3), (1, 3)], 3)  # cycle, wrong count
        with pytest.raises(ValueError):
            tree_form_sign([(1, 2), (1, 2), (3, 4)], 4)  # duplicate edge
        with pytest.raises(ValueError):
            tree_form_sign([(1, 2), (3, 4), (3, 4)], 4)
        with pytest.raises(ValueError):
            tree_form_sign([(1, 2), (2, 3)], 4)  # does not cover 1..4


class TestArnold:
    @pytest.mark.parametrize("p", [3, 4, 5])
    def test_arnold_identity_all_triples(self, p):
        # [PAPER] omega_ij ^ omega_jk + omega_jk ^ omega_ki + omega_ki ^ omega_ij = 0
        for i, j, k in itertools.combinations(range(1, p + 1), 3):
            assert form2_is_zero(arnold_identity(i, j, k, p))

    @pytest.mark.parametrize("p", [3, 4, 5])
    def test_grouped_identity_all_triples(self, p):
        # [PAPER] omega_ij ^ (omega_jk - omega_ik) = omega_ik ^ omega_jk
        for i, j, k in itertools.permutations(range(1, p + 1), 3):
            assert form2_is_zero(grouped_two_t_identity(i, j, k, p))

    def test_single_wedge_not_zero(self):
        # [TRIVIAL] negative control: one summand alone does not vanish
        assert not form2_is_zero(omega_wedge((1, 2), (2, 3), 3))

    def test_repeated_factor_is_zero(self):
        # [TRIVIAL] omega ^ omega = 0
        assert omega_wedge((1, 2), (2, 1), 4) == {}


class TestKZTermLists:
    def test_omega_terms(self):
        terms = omega_kz(4)
        assert len(terms) == 6
        assert all(t.structure == "chord" and t.word == (t.strands,) for t in terms)
        assert [t.strands for t in terms] == [
            (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)
        ]

    def test_lambda_counts(self):
        # [PAPER] Lambda_3 has 3 terms, Lambda_4 has 12; empty below 3 strands
        assert lambda_kz(2) == []
        assert len(lambda_kz(3)) == 3
        assert len(lambda_kz(4)) == 12

    def test_lambda_structure(self):
        for t in lambda_kz(4):
            e1, e2 = t.word
            assert e1 < e2
            shared = set(e1) & set(e2)
            assert len(shared) == 1
            mid, ta, tb = t.strands
            assert {mid} == shared
            assert ta < tb and {ta, tb} == (set(e1) | set(e2)) - shared
        # each of the four triples appears with each of its three mids
        seen = {(tuple(sorted(t.strands)), t.strands[0]) for t in lambda_kz(4)}
        assert len(seen) == 12


class TestStackedDiagram:
    def test_chord_below_vee(self):
        # [DERIVED] worked example: chord {1,3} under the V with mid 3 on
        # {2,3,4}; the shared strand 3 carries the chord point first
        sd = stacked_diagram([("chord", (1, 3)), ("vee", (3, 2, 4))])
        assert sd.slots == (1, 2, 3, 3, 4)
        assert sd.chords == ((1, 3),)
        assert sd.vees == ((4, 2, 5),)
        assert sd.doubled_slot() == 3

    def test_vee_below_chord(self):
        # [DERIVED] reversing the stacking swaps the order within slot 3
        sd = stacked_diagram([("vee", (3, 2, 4)), ("chord", (1, 3))])
        assert sd.slots == (1, 2, 3, 3, 4)
        assert sd.chords == ((1, 4),)
        assert sd.vees == ((3, 2, 5),)

    def test_three_levels(self):
        # [DERIVED] three stacked chords on three strands
        sd = stacked_diagram(
            [("chord", (1, 2)), ("chord", (1, 3)), ("chord", (2, 3))]
        )
        assert sd.slots == (1, 1, 2, 2, 3, 3)
        assert sd.chords == ((1, 3), (2, 5), (4, 6))

    def test_invalid_structures(self):
        with pytest.raises(ValueError):
            stacked_diagram([("chord", (1, 1))])
        with pytest.raises(ValueError):
            stacked_diagram([("loop", (1, 2))])


class TestCurvatureMatrix:
    def test_shape_and_rank(self):
        # [PAPER] 16 cube-free monomial rows, 72 stacked columns, rank 6
        m, monomials, columns = curvature_matrix(4)
        assert (m.n_rows, m.n_cols) == (16, 72)
        assert rank(m) == 6
        assert len(monomials) == 16
        assert len(columns) == 72 and len(set(columns)) == 72

    def test_monomials_cube_free_degree_three(self):
        _, monomials, _ = curvature_matrix(4)
        for exps in monomials:
            assert sum(exps) == 3 and max(exps) <= 2
        assert monomials == sorted(monomials)

    def test_columns_match_tree_desingularisations(self):
        # [PAPER] the 72 stacked diagrams are exactly the 72 slotted columns
        # of the tree expansions
        _, _, columns = curvature_matrix(4)
        expected = {sl for t in enumerate_trees() for sl, _ in expand_tree(t).items()}
        assert set(columns) == expected

    def test_worked_column(self):
        # [DERIVED] chord {1,3} below Gamma_234: tree edges {13, 23, 34},
        # complement product (z1-z2)(z1-z4)(z2-z4), eps and stacking sign +1
        m, monomials, columns = curvature_matrix(4)
        target = SlottedDiagram(slots=(1, 2, 3, 3, 4), chords=((1, 3),), vees=((4, 2, 5),))
        j = columns.index(target)
        col = {monomials[r]: m.rows[r][j] for r in range(m.n_rows) if j in m.rows[r]}
        assert col == {
            (2, 1, 0, 0): Fraction(1),
            (2, 0, 0, 1): Fraction(-1),
            (1, 0, 0, 2): Fraction(1),
            (1, 2, 0, 0): Fraction(-1),
            (0, 2, 0, 1): Fraction(1),
            (0, 1, 0, 2): Fraction(-1),
        }

    def test_opposite_stacking_negates(self):
        # [DERIVED] swapping Omega ^ Lambda to Lambda ^ Omega keeps the tree
        # and flips the sign, landing in the mirrored column
        m, monomials, columns = curvature_matrix(4)
        below = columns.index(
            SlottedDiagram(slots=(1, 2, 3, 3, 4), chords=((1, 3),), vees=((4, 2, 5),))
        )
        above = columns.index(
            SlottedDiagram(slots=(1, 2, 3, 3, 4), chords=((1, 4),), vees=((3, 2, 5),))
        )
        col_b = {r: m.rows[r].get(below, Fraction(0)) for r in range(m.n_rows)}
        col_a = {r: m.rows[r].get(above, Fraction(0)) for r in range(m.n_rows)}
        assert col_a == {r: -v for r, v in col_b.items()}

    def test_other_strand_counts_rejected(self):
        with pytest.raises(ValueError):
            curvature_matrix(3)
