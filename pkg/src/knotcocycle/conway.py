"""Planar diagrams of PL knots and their Conway/Alexander polynomial.

The knot is projected to the ``(x, t)``-plane (the ``y``-coordinate becomes
the viewing depth; at a crossing the strand with the larger ``y`` passes
over).  From the crossings we read off a Wirtinger presentation of the knot
group, and the Alexander polynomial is computed as a minor of the Fox
Jacobian of that presentation, normalised to the symmetric representative
with value ``1`` at ``t = 1``.  The Conway polynomial is the rewriting of
that representative in the variable ``z`` with ``z^2 = t - 2 + 1/t``.

Everything is exact integer arithmetic; the only floating point enters in
locating the crossings of the projected polygon, which is validated to be
generic (transversal double points away from the projected vertices).

This module is deliberately independent of the numerical integrators — it
serves as the combinatorial cross-check for the degree-two knot invariant
they produce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .morse import MorseKnot

__all__ = [
    "Crossing",
    "crossings",
    "alexander_polynomial",
    "conway_polynomial",
    "casson_invariant",
    "determinant_at_minus_one",
]


# ---------------------------------------------------------------------------
# Crossings of the projected polygon
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Crossing:
    """A transversal double point of the knot projection.

    ``over_param``/``under_param`` are positions along the knot (segment
    index plus fraction); ``sign`` is the local writhe: ``+1`` when the
    frame (over tangent, under tangent) is positively oriented in the
    projection plane.
    """

    over_param: float
    under_param: float
    sign: int


def _project(knot: MorseKnot) -> List[Tuple[float, float, float]]:
    """Vertices as (u, v, depth) with u = x, v = t, depth = y."""

    return [(x, t, y) for x, y, t in knot.vertices]


def crossings(knot: MorseKnot) -> List[Crossing]:
    """All crossings of the projection, or ``ValueError`` if not generic.

    Generic means: every double point is a transversal crossing of the
    interiors of two non-adjacent segments, and no two double points
    coincide.
    """

    verts = _project(knot)
    n = len(verts) - 1
    out: List[Crossing] = []
    for i in range(n):
        for j in range(i + 1, n):
            p0, p1 = verts[i], verts[i + 1]
            q0, q1 = verts[j], verts[j + 1]
            d1 = (p1[0] - p0[0], p1[1] - p0[1])
            d2 = (q1[0] - q0[0], q1[1] - q0[1])
            denom = d1[0] * d2[1] - d1[1] * d2[0]
            if abs(denom) < 1e-12:
                continue  # parallel projections never cross transversally
            rx, ry = q0[0] - p0[0], q0[1] - p0[1]
            s = (rx * d2[1] - ry * d2[0]) / denom
            u = (rx * d1[1] - ry * d1[0]) / denom
            if j == i + 1:
                # adjacent segments share a projected vertex; their
                # interiors must stay clear of each other
                if 1e-9 < s < 1 - 1e-9 and 1e-9 < u < 1 - 1e-9:
                    raise ValueError(
                        f"projection not generic: adjacent segments {i},{j} overlap"
                    )
                continue
            if not (0 <= s <= 1 and 0 <= u <= 1):
                continue
            if min(s, 1 - s, u, 1 - u) < 1e-9:
                raise ValueError(
                    f"projection not generic: segments {i},{j} cross at a vertex"
                )
            depth_i = p0[2] + s * (p1[2] - p0[2])
            depth_j = q0[2] + u * (q1[2] - q0[2])
            if abs(depth_i - depth_j) < 1e-9:
                raise ValueError(
                    f"segments {i},{j} are at equal depth over a double point"
                )
            param_i, param_j = i + s, j + u
            if depth_i > depth_j:
                over, under = param_i, param_j
                over_dir, under_dir = d1, d2
            else:
                over, under = param_j, param_i
                over_dir, under_dir = d2, d1
            cross = over_dir[0] * under_dir[1] - over_dir[1] * under_dir[0]
            out.append(Crossing(over, under, 1 if cross > 0 else -1))
    params = sorted([c.over_param for c in out] + [c.under_param for c in out])
    for a, b in zip(params, params[1:]):
        if b - a < 1e-9:
            raise ValueError("projection not generic: two double points collide")
    return out


# ---------------------------------------------------------------------------
# Integer Laurent polynomials (dict exponent -> coefficient)
# ---------------------------------------------------------------------------

Laurent = Dict[int, int]


def _lp(*pairs: Tuple[int, int]) -> Laurent:
    out: Laurent = {}
    for e, c in pairs:
        out[e] = out.get(e, 0) + c
        if out[e] == 0:
            del out[e]
    return out


def _lp_add(a: Laurent, b: Laurent) -> Laurent:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
        if out[e] == 0:
            del out[e]
    return out


def _lp_mul(a: Laurent, b: Laurent) -> Laurent:
    out: Laurent = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + c1 * c2
            if out[e] == 0:
                del out[e]
    return out


def _lp_neg(a: Laurent) -> Laurent:
    return {e: -c for e, c in a.items()}


def _det(matrix: List[List[Laurent]]) -> Laurent:
    """Determinant by expansion along the first column (small matrices)."""

    size = len(matrix)
    if size == 0:
        return {0: 1}
    if size == 1:
        return matrix[0][0]
    total: Laurent = {}
    for r in range(size):
        if not matrix[r][0]:
            continue
        minor = [row[1:] for k, row in enumerate(matrix) if k != r]
        term = _lp_mul(matrix[r][0], _det(minor))
        if r % 2:
            term = _lp_neg(term)
        total = _lp_add(total, term)
    return total


# ---------------------------------------------------------------------------
# Wirtinger presentation and the Alexander polynomial
# ---------------------------------------------------------------------------


def _arc_structure(cross: Sequence[Crossing]):
    """Arcs of the closed diagram and the per-crossing arc triple.

    The long knot is closed by an arc far from the diagram, so the crossing
    events along the knot are read cyclically.  Arcs are the pieces between
    consecutive under-events; arc ``k`` starts at under-event ``k``.
    Returns a list of ``(over_arc, incoming_arc, outgoing_arc, sign)``.
    """

    unders = sorted(range(len(cross)), key=lambda k: cross[k].under_param)
    n = len(unders)
    under_params = [cross[k].under_param for k in unders]

    def containing_arc(param: float) -> int:
        # arc k covers (under_params[k], under_params[k+1]) cyclically
        lo = 0
        while lo < n and under_params[lo] < param:
            lo += 1
        return (lo - 1) % n

    triples = []
    for pos, k in enumerate(unders):
        c = cross[k]
        incoming = (pos - 1) % n
        outgoing = pos
        over = containing_arc(c.over_param)
        triples.append((over, incoming, outgoing, c.sign))
    return triples


def alexander_polynomial(knot: MorseKnot) -> Laurent:
    """The Alexander polynomial, symmetric and with value ``1`` at ``t=1``.

    Computed from the Fox Jacobian of the Wirtinger presentation of the
    diagram: one relation per crossing, one generator per arc, delete one
    row and one column, take the determinant, and normalise by a unit
    ``±t^k``.  Raises ``ValueError`` if the result fails the structural
    checks satisfied by every knot (symmetry, odd value at ``t = 1``).
    """

    cross = crossings(knot)
    n = len(cross)
    if n == 0:
        return {0: 1}
    rows: List[List[Laurent]] = [[{} for _ in range(n)] for _ in range(n)]
    for r, (over, incoming, outgoing, sign) in enumerate(_arc_structure(cross)):
        if sign > 0:
            # relation  b = o a o^{-1}
            contributions = [(over, _lp((0, 1), (1, -1))), (incoming, _lp((1, 1))), (outgoing, _lp((0, -1)))]
        else:
            # relation  b = o^{-1} a o, Fox row multiplied by the unit t
            contributions = [(over, _lp((1, 1), (0, -1))), (incoming, _lp((0, 1))), (outgoing, _lp((1, -1)))]
        for arc, poly in contributions:
            rows[r][arc] = _lp_add(rows[r][arc], poly)
    minor = [row[: n - 1] for row in rows[: n - 1]]
    det = _det(minor)
    if not det:
        raise ValueError("degenerate Alexander matrix (diagram is not a knot)")

    # normalise: strip units, centre, fix the sign so that the value at 1 is +1
    lo = min(det)
    shifted = {e - lo: c for e, c in det.items()}
    deg = max(shifted)
    if any(shifted.get(e, 0) != shifted.get(deg - e, 0) for e in range(deg + 1)):
        raise ValueError("Alexander polynomial is not palindromic")
    if deg % 2 != 0:
        raise ValueError("Alexander polynomial has odd breadth")
    centred = {e - deg // 2: c for e, c in shifted.items()}
    at_one = sum(centred.values())
    if abs(at_one) != 1:
        raise ValueError(f"Alexander value at 1 is {at_one}, expected ±1")
    if at_one < 0:
        centred = _lp_neg(centred)
    return centred


def conway_polynomial(knot: MorseKnot) -> List[int]:
    """Coefficients ``[c_0, c_1, c_2, ...]`` of the Conway polynomial.

    Obtained from the symmetric Alexander polynomial by substituting
    ``t^k + t^{-k} = S_k(z^2)`` where ``S_0 = 2``, ``S_1 = z^2 + 2`` and
    ``S_{k+1} = (z^2 + 2) S_k - S_{k-1}``.  Odd coefficients vanish.
    """

    alex = alexander_polynomial(knot)
    top = max(abs(e) for e in alex) if alex else 0
    # S_k as polynomials in w = z^2 (list of coefficients, low degree first)
    s_polys: List[List[int]] = [[2], [2, 1]]
    while len(s_polys) <= top:
        prev, last = s_polys[-2], s_polys[-1]
        nxt = [0] * (len(last) + 1)
        for i, c in enumerate(last):
            nxt[i] += 2 * c
            nxt[i + 1] += c
        for i, c in enumerate(prev):
            nxt[i] -= c
        s_polys.append(nxt)
    in_w = [0] * (top + 1)
    in_w[0] += alex.get(0, 0)
    for k in range(1, top + 1):
        coeff = alex.get(k, 0)
        if coeff == 0:
            continue
        for i, c in enumerate(s_polys[k]):
            in_w[i] += coeff * c
    while len(in_w) > 1 and in_w[-1] == 0:
        in_w.pop()
    out: List[int] = []
    for c in in_w:
        out.extend([c, 0])
    out.pop()
    return out


def casson_invariant(knot: MorseKnot) -> int:
    """The degree-two knot invariant: the ``z^2``-coefficient of Conway."""

    coeffs = conway_polynomial(knot)
    return coeffs[2] if len(coeffs) > 2 else 0


def determinant_at_minus_one(knot: MorseKnot) -> int:
    """|Alexander(-1)|, the knot determinant (3 for a trefoil)."""

    alex = alexander_polynomial(knot)
    return abs(sum(c if e % 2 == 0 else -c for e, c in alex.items()))
