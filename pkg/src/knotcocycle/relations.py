"""Relation families on diagram spaces.

The families:

* 1T -- a V-diagram containing an isolated ordinary chord (endpoints on
  adjacent positions) is set to zero.
* 2T -- the two ways of attaching an isolated chord at a chord endpoint
  (forming a V) sum to zero.
* classical 4T -- a one-V diagram expands, by splitting its mid, into chord
  diagrams with coefficient (-1)^(mid label) * lk(resulting chord pair); the
  sums V1+V2 and V2+V3 expand to standard four-term relators.
* 16T / 28T -- derived by eliminating the four-edge-graph unknowns from the
  tree-configuration boundary submatrices (see :mod:`knotcocycle.vassiliev`).
* 4x4T -- products of two classical 4T relators on two disjoint triples,
  expanded through two-V desingularisation.

Desingularisations return :class:`~knotcocycle.diagrams.SlottedDiagram`
sums: the split vertex leaves a doubled slot, and distinct split choices
stay distinct even when the underlying ranked diagrams coincide.  Use
``collapse_sum``/``place_slotted`` to land in plain diagram spaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .diagrams import (
    Diagram,
    FormalSum,
    SlottedDiagram,
    canonicalize,
    diagram_from_json,
    diagram_to_json,
    enumerate_chord_diagrams,
    enumerate_trees,
    enumerate_v_diagrams,
    lk,
    sigma_sum,
)
from .ratlinalg import RatMatrix, kernel_basis

__all__ = [
    "RelatorSet",
    "collapse_sum",
    "expand_one_vee",
    "expand_tree",
    "expand_two_vee",
    "find_violated_relator",
    "is_weight_system",
    "place_slotted",
    "relation_matrix",
    "relator_set_from_json",
    "relator_set_to_json",
    "relators_1t",
    "relators_2t",
    "relators_16t_28t",
    "relators_4x4t",
    "split_tree_vertex",
    "standard_4t_relators",
    "two_vee_diagram",
    "weight_system_basis",
]


# ---------------------------------------------------------------------------
# desingularisations
# ---------------------------------------------------------------------------


def _tree_points(d: Diagram) -> List[int]:
    return sorted({p for e in d.tree for p in e})


def split_tree_vertex(
    d: Diagram, k: int, lone_edge: Sequence[int], ordering: str, signs: str = "lk"
) -> Tuple[int, SlottedDiagram]:
    """Split tree vertex ``k``, detaching ``lone_edge`` from the rest.

    The vertex is replaced by two adjacent copies; ``lone_edge`` reattaches
    to the left copy for ``ordering="before"`` and to the right copy for
    ``"after"``, the remaining edges at ``k`` to the other copy.  The move is
    valid only when the remaining edges together with the rest of the tree
    form a V; the detached edge becomes an ordinary chord.

    Returns ``(coefficient, slotted diagram)`` where the coefficient is
    (-1)^(label of k among the tree points) times lk(V triple, new chord).
    With ``signs="literal"`` the lk factor is omitted.
    """

    if d.tree is None:
        raise ValueError("split_tree_vertex expects a tree diagram")
    if ordering not in ("before", "after"):
        raise ValueError("ordering must be 'before' or 'after'")
    if signs not in ("lk", "literal"):
        raise ValueError("signs must be 'lk' or 'literal'")
    lone = tuple(sorted(lone_edge))
    if lone not in d.tree:
        raise ValueError(f"{lone!r} is not a tree edge")
    if k not in lone:
        raise ValueError(f"vertex {k} is not an endpoint of {lone!r}")
    edges_at_k = [e for e in d.tree if k in e]
    if len(edges_at_k) < 2:
        raise ValueError("cannot split a vertex of degree 1")

    rest = [e for e in d.tree if e != lone]
    # after the split the remaining edges live on the second copy of k
    shared = None
    if len(rest) == 2:
        common = set(rest[0]) & set(rest[1])
        if len(common) == 1:
            shared = common.pop()
    if shared is None:
        raise ValueError("the remaining edges do not form a V")

    # raw coordinates: the two copies of k sit at k and k + 0.5
    lone_copy = k if ordering == "before" else k + 0.5
    vee_copy = k + 0.5 if ordering == "before" else k

    def reattach(p: int, copy: float) -> float:
        return copy if p == k else p

    new_chord = tuple(reattach(p, lone_copy) for p in lone)
    new_vee_edges = [tuple(reattach(p, vee_copy) for p in e) for e in rest]
    mid = shared if shared != k else vee_copy
    tips = []
    for e in new_vee_edges:
        tips += [p for p in e if p != mid]
    if len(tips) != 2:
        raise ValueError("the remaining edges do not form a V")

    raw_positions = sorted(
        set(new_chord) | set(tips) | {mid} | {p for c in d.chords for p in c}
    )
    rank = {p: i + 1 for i, p in enumerate(raw_positions)}
    slot_of = {p: int(p) for p in raw_positions}  # copies of k share slot k
    slots = tuple(slot_of[p] for p in raw_positions)
    chords = tuple(
        sorted(
            [tuple(sorted((rank[new_chord[0]], rank[new_chord[1]])))]
            + [tuple(sorted((rank[a], rank[b]))) for a, b in d.chords]
        )
    )
    vee = (rank[mid], rank[tips[0]], rank[tips[1]])
    slotted = SlottedDiagram(slots=slots, chords=chords, vees=(vee,))

    tree_pts = _tree_points(d)
    label = tree_pts.index(k) + 1
    coeff = (-1) ** label
    if signs == "lk":
        triple = {rank[mid], rank[tips[0]], rank[tips[1]]}
        chord_ranked = (rank[new_chord[0]], rank[new_chord[1]])
        coeff *= lk(triple, chord_ranked)
    return coeff, slotted


def expand_tree(d: Diagram, signs: str = "lk") -> FormalSum:
    """All valid tree-vertex splits of ``d`` as a slotted formal sum.

    Star trees admit 6 splits (three lone edges at the center, two orderings
    each); path trees admit 4 (one valid lone edge at each interior vertex).
    """

    if d.tree is None:
        raise ValueError("expand_tree expects a tree diagram")
    out = FormalSum()
    for k in _tree_points(d):
        edges_at_k = [e for e in d.tree if k in e]
        if len(edges_at_k) < 2:
            continue
        for lone in edges_at_k:
            for ordering in ("before", "after"):
                try:
                    coeff, slotted = split_tree_vertex(d, k, lone, ordering, signs=signs)
                except ValueError:
                    continue
                out = out + FormalSum.single(slotted, Fraction(coeff))
    return out


def two_vee_diagram(triple_a: Sequence[int], triple_b: Sequence[int], a: int, b: int) -> Diagram:
    """The two-V diagram with mids the ``a``-th point of ``triple_a`` and the
    ``b``-th point of ``triple_b`` (1-based, by position on the line)."""

    ta, tb = sorted(triple_a), sorted(triple_b)
    mid_a, mid_b = ta[a - 1], tb[b - 1]
    tips_a = [p for p in ta if p != mid_a]
    tips_b = [p for p in tb if p != mid_b]
    return canonicalize(
        vees=[(mid_a, tips_a[0], tips_a[1]), (mid_b, tips_b[0], tips_b[1])]
    )


def _six_point_labels(d: Diagram) -> Dict[int, int]:
    """Labels 1..6 of the two V triples: 1-3 for the triple owning the least
    point, 4-6 for the other, each by position on the line."""

    t1 = sorted(d.vees[0][:3])
    t2 = sorted(d.vees[1][:3])
    first, second = (t1, t2) if min(t1) < min(t2) else (t2, t1)
    labels = {}
    for i, p in enumerate(sorted(first), start=1):
        labels[p] = i
    for i, p in enumerate(sorted(second), start=4):
        labels[p] = i
    return labels


def expand_two_vee(d: Diagram, signs: str = "lk") -> FormalSum:
    """The four desingularisations of a two-V diagram, as a slotted sum.

    Each splits one V's mid into two adjacent copies, each copy keeping one
    of the V's chords; the coefficient is (-1)^(global label 1..6 of the
    split mid) times lk of the two resulting ordinary chords.
    """

    if d.kind != "D2-twoVee":
        raise ValueError("expand_two_vee expects a two-V diagram")
    labels = _six_point_labels(d)
    out = FormalSum()
    for which, vee in enumerate(d.vees):
        mid, ta, tb = vee
        other_vee = d.vees[1 - which]
        for first_tip, second_tip in ((ta, tb), (tb, ta)):
            # the chord to first_tip attaches to the left copy of mid
            chord1 = tuple(sorted((float(mid), first_tip)))
            chord2 = tuple(sorted((mid + 0.5, second_tip)))
            raw_positions = sorted(
                {mid, mid + 0.5, ta, tb}
                | set(other_vee)
                | {p for c in d.chords for p in c}
            )
            rank = {p: i + 1 for i, p in enumerate(raw_positions)}
            slots = tuple(int(p) for p in raw_positions)
            chords = tuple(
                sorted(
                    [
                        tuple(sorted((rank[chord1[0]], rank[chord1[1]]))),
                        tuple(sorted((rank[chord2[0]], rank[chord2[1]]))),
                    ]
                    + [tuple(sorted((rank[a], rank[b]))) for a, b in d.chords]
                )
            )
            om, oa, ob = other_vee
            tips = tuple(sorted((rank[oa], rank[ob])))
            slotted = SlottedDiagram(
                slots=slots, chords=chords, vees=((rank[om], tips[0], tips[1]),)
            )
            coeff = (-1) ** labels[mid]
            if signs == "lk":
                c1 = (rank[chord1[0]], rank[chord1[1]])
                c2 = (rank[chord2[0]], rank[chord2[1]])
                coeff *= lk(c1, c2)
            out = out + FormalSum.single(slotted, Fraction(coeff))
    return out


def expand_one_vee(d: Diagram, signs: str = "lk") -> FormalSum:
    """Classical-4T expansion of a V-diagram into chord diagrams.

    The V's mid splits into two adjacent copies, each keeping one of the V's
    chords (two orderings); the coefficient is (-1)^(label of the mid among
    the V's three points) times lk of the two resulting chords.  Returns a
    slotted sum; collapse to land in the chord-diagram space.
    """

    if d.kind != "D1":
        raise ValueError("expand_one_vee expects a V-diagram")
    mid, ta, tb = d.vees[0]
    label = sorted((mid, ta, tb)).index(mid) + 1
    out = FormalSum()
    for first_tip, second_tip in ((ta, tb), (tb, ta)):
        chord1 = tuple(sorted((float(mid), first_tip)))
        chord2 = tuple(sorted((mid + 0.5, second_tip)))
        raw_positions = sorted({mid, mid + 0.5, ta, tb} | {p for c in d.chords for p in c})
        rank = {p: i + 1 for i, p in enumerate(raw_positions)}
        slots = tuple(int(p) for p in raw_positions)
        chords = tuple(
            sorted(
                [
                    tuple(sorted((rank[chord1[0]], rank[chord1[1]]))),
                    tuple(sorted((rank[chord2[0]], rank[chord2[1]]))),
                ]
                + [tuple(sorted((rank[a], rank[b]))) for a, b in d.chords]
            )
        )
        slotted = SlottedDiagram(slots=slots, chords=chords)
        coeff = (-1) ** label
        if signs == "lk":
            c1 = (rank[chord1[0]], rank[chord1[1]])
            c2 = (rank[chord2[0]], rank[chord2[1]])
            coeff *= lk(c1, c2)
        out = out + FormalSum.single(slotted, Fraction(coeff))
    return out


def collapse_sum(s: FormalSum) -> FormalSum:
    """Forget slot data, summing coefficients on colliding ranked diagrams."""

    return s.map_keys(lambda key: key.collapse() if isinstance(key, SlottedDiagram) else key)


def place_slotted(
    sl: SlottedDiagram,
    slot_positions: Mapping[int, float],
    ambient_chords: Iterable[Sequence[float]] = (),
) -> Diagram:
    """Embed a slotted diagram at given raw positions, adding ambient chords.

    ``slot_positions`` maps each slot id to a raw coordinate; the two points
    of a doubled slot land at that coordinate and just after it, preserving
    their order.
    """

    raw_of_point: Dict[int, float] = {}
    seen: Dict[int, int] = {}
    for idx, s in enumerate(sl.slots, start=1):
        k = seen.get(s, 0)
        raw_of_point[idx] = slot_positions[s] + 0.4 * k
        seen[s] = k + 1
    chords = [(raw_of_point[a], raw_of_point[b]) for a, b in sl.chords] + [
        tuple(c) for c in ambient_chords
    ]
    vees = [(raw_of_point[m], raw_of_point[a], raw_of_point[b]) for m, a, b in sl.vees]
    return canonicalize(chords=chords, vees=vees)


# ---------------------------------------------------------------------------
# relator sets
# ---------------------------------------------------------------------------


@dataclass
class RelatorSet:
    """A family of relators over a canonical diagram basis.

    ``relators`` are formal sums over plain diagrams from ``basis``;
    ``slotted`` optionally keeps the uncollected slot-aware sums whose term
    counts are meaningful (16, 28, ...).
    """

    degree: int
    family: str
    basis: List[Diagram]
    relators: List[FormalSum]
    slotted: Optional[List[FormalSum]] = None

    def matrix(self) -> RatMatrix:
        index = {d: i for i, d in enumerate(self.basis)}
        rows = []
        for rel in self.relators:
            row: Dict[int, Fraction] = {}
            for diag, coeff in rel.items():
                if diag not in index:
                    raise ValueError(f"relator uses a diagram outside the basis: {diag!r}")
                row[index[diag]] = Fraction(coeff)
            rows.append(row)
        return RatMatrix.from_rows(rows, len(self.basis))


def relator_set_to_json(rs: RelatorSet) -> dict:
    index = {d: i for i, d in enumerate(rs.basis)}
    rows = []
    for rel in rs.relators:
        rows.append([[index[diag], str(Fraction(coeff))] for diag, coeff in rel.items()])
    return {
        "degree": rs.degree,
        "family": rs.family,
        "basis": [diagram_to_json(d) for d in rs.basis],
        "rows": rows,
    }


def relator_set_from_json(data: Mapping) -> RelatorSet:
    basis = [diagram_from_json(d) for d in data["basis"]]
    relators = []
    for row in data["rows"]:
        rel = FormalSum()
        for col, coeff in row:
            rel = rel + FormalSum.single(basis[int(col)], Fraction(str(coeff)))
        relators.append(rel)
    return RelatorSet(
        degree=int(data["degree"]),
        family=str(data["family"]),
        basis=basis,
        relators=relators,
    )


def _has_isolated_chord(d: Diagram) -> bool:
    return any(b == a + 1 for a, b in d.chords)


def relators_1t(m: int) -> RelatorSet:
    """Single-diagram relators: V-diagrams with an isolated ordinary chord."""

    basis = enumerate_v_diagrams(m)
    relators = [FormalSum.single(d, Fraction(1)) for d in basis if _has_isolated_chord(d)]
    return RelatorSet(degree=m, family="1T", basis=basis, relators=relators)


def relators_2t(m: int) -> RelatorSet:
    """Two-term relators: both attachments of an isolated chord at a chord
    endpoint (forming a V) sum to zero."""

    basis = enumerate_v_diagrams(m)
    relators = []
    for c_diag in enumerate_chord_diagrams(m - 1):
        for chord in c_diag.chords:
            for endpoint in chord:
                other_end = chord[0] if endpoint == chord[1] else chord[1]
                rest = [c for c in c_diag.chords if c != chord]
                terms = FormalSum()
                for offset in (-0.5, 0.5):
                    d = canonicalize(
                        chords=rest,
                        vees=[(endpoint, other_end, endpoint + offset)],
                    )
                    terms = terms + FormalSum.single(d, Fraction(1))
                relators.append(terms)
    return RelatorSet(degree=m, family="2T", basis=basis, relators=relators)


def standard_4t_relators() -> List[FormalSum]:
    """Degree-2 four-term relators from three-strand horizontal chords.

    For strands {a,b,c} the commutator [t_ab, t_ac + t_bc] vanishes; closing
    the strands into a line (strand order, lower level first) turns each
    monomial into a chord diagram.  This is the independent oracle the
    classical-4T expansion is pinned against.
    """

    def stack(level1: Tuple[int, int], level2: Tuple[int, int]) -> Diagram:
        points = []  # (strand, level)
        for level, pair in ((1, level1), (2, level2)):
            for s in pair:
                points.append((s, level))
        points.sort()
        rank = {pt: i + 1 for i, pt in enumerate(points)}
        chords = [
            tuple(sorted((rank[(level1[0], 1)], rank[(level1[1], 1)]))),
            tuple(sorted((rank[(level2[0], 2)], rank[(level2[1], 2)]))),
        ]
        return canonicalize(chords=chords)

    relators = []
    for a, b, c in ((1, 2, 3), (1, 3, 2), (2, 3, 1)):
        ab, ac, bc = (a, b), (a, c), (b, c)
        rel = FormalSum()
        for other in (ac, bc):
            rel = rel + FormalSum.single(stack(ab, other), Fraction(1))
            rel = rel - FormalSum.single(stack(other, ab), Fraction(1))
        if rel:
            relators.append(rel)
    return relators


def relators_4x4t(triple_a: Sequence[int] = (1, 2, 3)) -> RelatorSet:
    """The four products of classical 4T relators on two disjoint triples.

    ``triple_a`` chooses the interleaving: it must contain position 1; the
    other triple is the complement in 1..6.  Each relator expands the formal
    product (V_a + V_{a+1})(V'_b + V'_{b+1}) through two-V desingularisation
    (16 slotted terms).
    """

    ta = tuple(sorted(triple_a))
    if len(ta) != 3 or ta[0] != 1 or not all(1 <= p <= 6 for p in ta):
        raise ValueError("triple_a must be three positions in 1..6 containing 1")
    tb = tuple(p for p in range(1, 7) if p not in ta)
    basis = enumerate_v_diagrams(4)
    relators, slotted_sums = [], []
    for a0 in (1, 2):
        for b0 in (1, 2):
            total = FormalSum()
            for a in (a0, a0 + 1):
                for b in (b0, b0 + 1):
                    total = total + expand_two_vee(two_vee_diagram(ta, tb, a, b))
            slotted_sums.append(total)
            relators.append(collapse_sum(total))
    return RelatorSet(
        degree=4, family="4x4T", basis=basis, relators=relators, slotted=slotted_sums
    )


def relators_16t_28t() -> Tuple[RelatorSet, RelatorSet]:
    """The three 16T and three 28T relators over the 72 slotted columns.

    Derived by eliminating the four-edge-graph unknowns from the tree
    configuration: combinations of tree rows lying in the transpose kernel
    of M1 are applied to the sign-calibrated splitting matrix.  16T relators
    come from kernel vectors supported on path trees only; 28T relators from
    minimal-support kernel vectors whose star part is a consecutive pair.
    """

    from . import vassiliev

    return vassiliev.derive_16t_28t()


# ---------------------------------------------------------------------------
# relation matrices and weight systems
# ---------------------------------------------------------------------------


def _tree_slot_placements(m: int):
    """All placements of the four tree slots among the pre-split positions
    at degree ``m``, together with the ambient chord matchings."""

    n_ambient = m - 3
    q0 = 4 + 2 * n_ambient
    placements = []
    for slots in itertools.combinations(range(1, q0 + 1), 4):
        rest = [p for p in range(1, q0 + 1) if p not in slots]
        for match in _ambient_matchings(rest):
            placements.append((dict(zip((1, 2, 3, 4), slots)), match))
    return placements


def _ambient_matchings(points: List[int]):
    if not points:
        return [()]
    first, rest = points[0], points[1:]
    out = []
    for i, other in enumerate(rest):
        for sub in _ambient_matchings(rest[:i] + rest[i + 1 :]):
            out.append(((first, other),) + sub)
    return out


@lru_cache(maxsize=None)
def relation_matrix(m: int):
    """The stacked relation matrix at degree ``m`` over the V-diagram basis.

    Returns ``(matrix, basis, row_families)`` where ``row_families`` lists a
    ``(family, index)`` tag per row.  Families included: 1T and 2T for all
    m >= 2, slot-collapsed 16T/28T placements for m >= 3, and 4x4T products
    for m = 4.
    """

    if not 2 <= m <= 4:
        raise ValueError("relation matrices are built for degrees 2..4")
    basis = enumerate_v_diagrams(m)
    index = {d: i for i, d in enumerate(basis)}
    rows: List[Dict[int, Fraction]] = []
    families: List[Tuple[str, int]] = []

    def push(family: str, rel: FormalSum):
        row = {index[diag]: Fraction(coeff) for diag, coeff in rel.items()}
        rows.append(row)
        families.append((family, sum(1 for f, _ in families if f == family)))

    for rel in relators_1t(m).relators:
        push("1T", rel)
    for rel in relators_2t(m).relators:
        push("2T", rel)
    if m >= 3:
        sixteen, twenty_eight = relators_16t_28t()
        for slot_positions, ambient in _tree_slot_placements(m):
            for rs in (sixteen, twenty_eight):
                for slotted_rel in rs.slotted:
                    placed = FormalSum()
                    for sl, coeff in slotted_rel.items():
                        placed = placed + FormalSum.single(
                            place_slotted(sl, slot_positions, ambient), coeff
                        )
                    push(rs.family, placed)
    if m == 4:
        for extra in itertools.combinations(range(2, 7), 2):
            rs = relators_4x4t((1,) + extra)
            for rel in rs.relators:
                push("4x4T", rel)
    matrix = RatMatrix.from_rows(rows, len(basis))
    return matrix, basis, families


def weight_system_basis(m: int) -> List[FormalSum]:
    """A basis of functionals annihilated by every degree-``m`` relator."""

    matrix, basis, _ = relation_matrix(m)
    out = []
    for vec in kernel_basis(matrix):
        w = FormalSum({d: c for d, c in zip(basis, vec) if c != 0})
        out.append(w)
    return out


def _as_vector(w, basis: List[Diagram]) -> List[Fraction]:
    if isinstance(w, FormalSum):
        index = {d: i for i, d in enumerate(basis)}
        vec = [Fraction(0)] * len(basis)
        for diag, coeff in w.items():
            if diag not in index:
                raise ValueError(f"functional uses a diagram outside the basis: {diag!r}")
            vec[index[diag]] = Fraction(coeff)
        return vec
    vec = [Fraction(x) for x in w]
    if len(vec) != len(basis):
        raise ValueError("vector length does not match the basis")
    return vec


def is_weight_system(w, m: int) -> bool:
    """True when ``w`` (a FormalSum or coefficient vector) is annihilated by
    every relator at degree ``m``."""

    return find_violated_relator(w, m) is None


def find_violated_relator(w, m: int):
    """The first relator not annihilated by ``w``: ``(family, index, value)``
    or ``None``."""

    matrix, basis, families = relation_matrix(m)
    vec = _as_vector(w, basis)
    values = matrix.times_vector(vec)
    for (family, idx), val in zip(families, values):
        if val != 0:
            return family, idx, val
    return None
