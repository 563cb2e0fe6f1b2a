"""Symbolic configuration-space forms of Knizhnik-Zamolodchikov type.

Strand configurations live on complex coordinates z_1..z_p; the basic
1-forms are dlog(z_i - z_j), written ``omega_{ij}`` and symmetric in i, j.
This module provides

* exact exterior/polynomial algebra over the rationals for wedges of such
  forms, every coefficient written over the common denominator
  prod_{i<j} (z_i - z_j);
* the Arnold identity and its two-term grouping, verified symbolically;
* the tree-form lemma: for a spanning tree T on points 1..p, the wedge of
  (dz_min - dz_max) over T's edges in lexicographic order equals
  eps_T * omega_p with omega_p = sum_i (-1)^i dz_1 ... (omit i) ... dz_p;
* the diagram-valued 1- and 2-forms Omega_p (chords) and Lambda_p (V's),
  as term lists with the scalar prefactors 1/(2 i pi) and 1/(2 i pi)^2
  kept implicit;
* the curvature matrix of Omega_4 wedge Lambda_4 - Lambda_4 wedge Omega_4:
  every surviving term is a spanning-tree form eps_T N_T omega_4 / D with
  N_T the product of the three non-tree differences; the matrix lists the
  N_T monomial coefficients (rows: the 16 cube-free degree-3 monomials)
  per stacked diagram column (72 columns).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .diagrams import SlottedDiagram
from .ratlinalg import RatMatrix

__all__ = [
    "KZTerm",
    "Poly",
    "arnold_identity",
    "curvature_matrix",
    "form2_is_zero",
    "grouped_two_t_identity",
    "lambda_kz",
    "omega_kz",
    "omega_wedge",
    "prufer_tree",
    "stacked_diagram",
    "tree_form_sign",
]


# ---------------------------------------------------------------------------
# exact multivariate polynomials
# ---------------------------------------------------------------------------


class Poly:
    """A polynomial over Q in variables z_1..z_n (exponent-tuple keyed)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Mapping[Tuple[int, ...], Fraction]] = None):
        self.n = n
        self.terms: Dict[Tuple[int, ...], Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff != 0:
                    self.terms[tuple(exp)] = coeff

    @classmethod
    def constant(cls, c, n: int) -> "Poly":
        return cls(n, {(0,) * n: Fraction(c)})

    @classmethod
    def difference(cls, i: int, j: int, n: int) -> "Poly":
        """z_i - z_j (1-based variables)."""

        ei = tuple(1 if k == i - 1 else 0 for k in range(n))
        ej = tuple(1 if k == j - 1 else 0 for k in range(n))
        return cls(n, {ei: Fraction(1), ej: Fraction(-1)})

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for exp, c in other.terms.items():
            new = out.get(exp, Fraction(0)) + c
            if new == 0:
                out.pop(exp, None)
            else:
                out[exp] = new
        return Poly(self.n, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.n, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            out: Dict[Tuple[int, ...], Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    exp = tuple(a + b for a, b in zip(e1, e2))
                    new = out.get(exp, Fraction(0)) + c1 * c2
                    if new == 0:
                        out.pop(exp, None)
                    else:
                        out[exp] = new
            return Poly(self.n, out)
        return Poly(self.n, {e: c * Fraction(other) for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.n == other.n and self.terms == other.terms

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Poly({self.n}, {self.terms!r})"


# ---------------------------------------------------------------------------
# exterior algebra on dz symbols
# ---------------------------------------------------------------------------


def _wedge_one(word: Tuple[int, ...], var: int) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Insert dz_var into a sorted wedge word; None when repeated."""

    if var in word:
        return None
    pos = sum(1 for w in word if w < var)
    sign = -1 if (len(word) - pos) % 2 else 1
    return sign, word[:pos] + (var,) + word[pos:]


def _expand_edge_wedge(edges: Sequence[Tuple[int, int]]) -> Dict[Tuple[int, ...], int]:
    """Expansion of wedge_e (dz_min(e) - dz_max(e)) over sorted dz words."""

    acc: Dict[Tuple[int, ...], int] = {(): 1}
    for e in edges:
        a, b = sorted(e)
        nxt: Dict[Tuple[int, ...], int] = {}
        for word, coeff in acc.items():
            for var, s in ((a, 1), (b, -1)):
                ins = _wedge_one(word, var)
                if ins is None:
                    continue
                sign, new_word = ins
                val = nxt.get(new_word, 0) + coeff * s * sign
                if val == 0:
                    nxt.pop(new_word, None)
                else:
                    nxt[new_word] = val
        acc = nxt
    return acc


def _omega_p_components(p: int) -> Dict[Tuple[int, ...], int]:
    """omega_p = sum_i (-1)^i dz_1 ... (omit i) ... dz_p."""

    out = {}
    for i in range(1, p + 1):
        word = tuple(v for v in range(1, p + 1) if v != i)
        out[word] = (-1) ** i
    return out


def _validate_tree(edges: List[Tuple[int, int]], p: int) -> None:
    if len(edges) != p - 1:
        raise ValueError("a spanning tree on p points has p-1 edges")
    if len(set(edges)) != len(edges):
        raise ValueError("duplicate edges")
    pts = {v for e in edges for v in e}
    if pts != set(range(1, p + 1)):
        raise ValueError("edges must cover points 1..p")
    reached = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for a, b in edges:
            if x in (a, b):
                y = b if x == a else a
                if y not in reached:
                    reached.add(y)
                    frontier.append(y)
    if reached != pts:
        raise ValueError("edges do not form a connected tree")


def prufer_tree(seq: Sequence[int], p: int) -> List[Tuple[int, int]]:
    """The labelled tree on 1..p decoded from a Prufer sequence.

    The sequence has ``p - 2`` entries in 1..p; iterating over all
    sequences enumerates all ``p^(p-2)`` labelled trees exactly once.
    """

    if len(seq) != max(p - 2, 0) or any(not 1 <= v <= p for v in seq):
        raise ValueError("a Prufer sequence on 1..p has p-2 entries in range")
    degree = {v: 1 for v in range(1, p + 1)}
    for v in seq:
        degree[v] += 1
    edges: List[Tuple[int, int]] = []
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


def tree_form_sign(edges: Iterable[Sequence[int]], p: Optional[int] = None) -> int:
    """The sign eps_T with wedge_{e in T, lex}(dz_min - dz_max) = eps_T omega_p."""

    edge_list = sorted(tuple(sorted(e)) for e in edges)
    if p is None:
        p = max(v for e in edge_list for v in e)
    _validate_tree(edge_list, p)
    expansion = _expand_edge_wedge(edge_list)
    omega = _omega_p_components(p)
    eps = None
    for word, target in omega.items():
        got = expansion.get(word, 0)
        if eps is None:
            if got % target:
                raise ValueError("expansion is not proportional to omega_p")
            eps = got // target
        if got != eps * target:
            raise ValueError("expansion is not proportional to omega_p")
    if set(expansion) - set(omega) or eps not in (1, -1):
        raise ValueError("expansion is not proportional to omega_p")
    return eps


# ---------------------------------------------------------------------------
# dlog two-form identities over the common denominator
# ---------------------------------------------------------------------------


def _all_pairs(p: int) -> List[Tuple[int, int]]:
    return list(itertools.combinations(range(1, p + 1), 2))


def _complement_product(used: Iterable[Tuple[int, int]], p: int) -> Poly:
    out = Poly.constant(1, p)
    used_set = {tuple(sorted(e)) for e in used}
    for a, b in _all_pairs(p):
        if (a, b) not in used_set:
            out = out * Poly.difference(a, b, p)
    return out


Form2 = Dict[Tuple[int, int], Poly]  # sorted dz pair -> numerator over D_p


def omega_wedge(e1: Sequence[int], e2: Sequence[int], p: int) -> Form2:
    """omega_{e1} wedge omega_{e2} as a 2-form, every dz_i wedge dz_j
    coefficient a polynomial over the common denominator
    D_p = prod_{i<j} (z_i - z_j)."""

    e1, e2 = tuple(sorted(e1)), tuple(sorted(e2))
    if e1 == e2:
        return {}
    numerator = _expand_edge_wedge([e1, e2])
    multiplier = _complement_product([e1, e2], p)
    out: Form2 = {}
    for word, coeff in numerator.items():
        out[word] = Fraction(coeff) * multiplier
    return out


def form2_add(*forms: Form2) -> Form2:
    out: Dict[Tuple[int, int], Poly] = {}
    for f in forms:
        for word, poly in f.items():
            if word in out:
                out[word] = out[word] + poly
            else:
                out[word] = poly
    return {w: poly for w, poly in out.items() if poly}


def form2_scale(c, f: Form2) -> Form2:
    return {w: poly * c for w, poly in f.items() if poly * c}


def form2_is_zero(f: Form2) -> bool:
    return all(not poly for poly in f.values())


def arnold_identity(i: int, j: int, k: int, p: int) -> Form2:
    """omega_ij ^ omega_jk + omega_jk ^ omega_ki + omega_ki ^ omega_ij,
    identically zero."""

    return form2_add(
        omega_wedge((i, j), (j, k), p),
        omega_wedge((j, k), (k, i), p),
        omega_wedge((k, i), (i, j), p),
    )


def grouped_two_t_identity(i: int, j: int, k: int, p: int) -> Form2:
    """omega_ij ^ (omega_jk - omega_ik) - omega_ik ^ omega_jk, identically
    zero; this is the grouping that pairs the two attachments of a chord at
    an endpoint."""

    return form2_add(
        omega_wedge((i, j), (j, k), p),
        form2_scale(-1, omega_wedge((i, j), (i, k), p)),
        form2_scale(-1, omega_wedge((i, k), (j, k), p)),
    )


# ---------------------------------------------------------------------------
# diagram-valued forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KZTerm:
    """One term of a diagram-valued form.

    ``word`` lists the dlog edges (strand pairs) in wedge order;
    ``structure`` is "chord" or "vee"; ``strands`` gives the structure's
    strands ((a, b) for a chord, (mid, tip, tip) for a V).
    """

    word: Tuple[Tuple[int, int], ...]
    structure: str
    strands: Tuple[int, ...]


def omega_kz(p: int) -> List[KZTerm]:
    """Omega_p = (1/(2 i pi)) sum_{i<j} Gamma_ij omega_ij (prefactor
    implicit): one chord term per strand pair."""

    return [KZTerm(((i, j),), "chord", (i, j)) for i, j in _all_pairs(p)]


def lambda_kz(p: int) -> List[KZTerm]:
    """Lambda_p = (1/(2 i pi)^2) sum Gamma_ijk omega_e1 ^ omega_e2 over
    couples of edges sharing exactly one strand, e1 < e2 lexicographically
    (prefactor implicit): one V term per couple, mid the shared strand."""

    out = []
    for e1, e2 in itertools.combinations(_all_pairs(p), 2):
        shared = set(e1) & set(e2)
        if len(shared) != 1:
            continue
        (mid,) = shared
        tips = sorted((set(e1) | set(e2)) - shared)
        out.append(KZTerm((e1, e2), "vee", (mid, tips[0], tips[1])))
    return out


def stacked_diagram(levels: Sequence[Tuple[str, Sequence[int]]]) -> SlottedDiagram:
    """Close strands into a line and stack per-level structures.

    ``levels`` lists (structure, strands) bottom to top.  Each level's
    points land on their strands; points are ranked by (strand, level), so
    within a slot the lower level comes first.
    """

    points = []
    for li, (kind, strands) in enumerate(levels):
        if kind not in ("chord", "vee"):
            raise ValueError(f"unknown structure {kind!r}")
        if len(set(strands)) != len(strands):
            raise ValueError("structure strands must be distinct")
        for s in strands:
            points.append((s, li))
    points.sort()
    rank = {pt: r for r, pt in enumerate(points, start=1)}
    slots = tuple(s for s, _ in points)
    chords, vees = [], []
    for li, (kind, strands) in enumerate(levels):
        if kind == "chord":
            a, b = strands
            chords.append(tuple(sorted((rank[(a, li)], rank[(b, li)]))))
        else:
            m, ta, tb = strands
            tips = sorted((rank[(ta, li)], rank[(tb, li)]))
            vees.append((rank[(m, li)], tips[0], tips[1]))
    return SlottedDiagram(slots=slots, chords=tuple(chords), vees=tuple(vees))


# ---------------------------------------------------------------------------
# curvature matrix
# ---------------------------------------------------------------------------


def curvature_matrix(n_strands: int = 4):
    """The curvature Omega_4 ^ Lambda_4 - Lambda_4 ^ Omega_4 as a matrix.

    Every surviving term pairs a chord with a V sharing exactly one strand;
    its three dlog edges form a spanning tree T, and the form reduces to
    +- eps_T N_T omega_4 / D with N_T the product of the three non-tree
    differences (terms whose edges stay within three strands vanish: a
    repeated dlog factor or the triangle relation kills them; the global
    (2 i pi)^-3 prefactor is dropped).

    Returns ``(matrix, monomials, columns)``: rows are the 16 cube-free
    degree-3 monomials of z_1..z_4 (as exponent tuples, ascending), columns
    the 72 stacked diagrams, entries the signed N_T coefficients.
    """

    if n_strands != 4:
        raise ValueError("the curvature matrix is built for four strands")
    p = 4
    omega4 = _omega_p_components(p)
    column_diagrams: List[SlottedDiagram] = []
    column_polys: List[Dict[Tuple[int, ...], Fraction]] = []
    for vee_term in lambda_kz(p):
        triple = set(vee_term.strands)
        for chord in _all_pairs(p):
            if len(set(chord) & triple) != 1:
                continue
            for chord_below in (True, False):
                word = ((chord,) + vee_term.word) if chord_below else (vee_term.word + (chord,))
                numerator = _expand_edge_wedge(word)
                eps = None
                for dz_word, target in omega4.items():
                    got = numerator.get(dz_word, 0)
                    if eps is None:
                        eps = got // target
                    if got != eps * target:
                        raise ValueError("tree term is not proportional to omega_4")
                if set(numerator) - set(omega4) or eps not in (1, -1):
                    raise ValueError("tree term is not proportional to omega_4")
                n_t = _complement_product(word, p)
                sign = Fraction(eps if chord_below else -eps)
                levels = (
                    [("chord", chord), ("vee", vee_term.strands)]
                    if chord_below
                    else [("vee", vee_term.strands), ("chord", chord)]
                )
                column_diagrams.append(stacked_diagram(levels))
                column_polys.append({e: sign * c for e, c in n_t.terms.items()})
    if len(column_diagrams) != 72 or len(set(column_diagrams)) != 72:
        raise ValueError("expected 72 distinct stacked columns")

    monomials = sorted(
        exps
        for exps in itertools.product(range(4), repeat=4)
        if sum(exps) == 3
    )
    cube_free = [m for m in monomials if max(m) < 3]
    cubes = [m for m in monomials if max(m) == 3]
    for poly in column_polys:
        for cube in cubes:
            if poly.get(cube):
                raise ValueError("a cube monomial appeared in a tree product")
    row_index = {m: i for i, m in enumerate(cube_free)}
    rows: List[Dict[int, Fraction]] = [dict() for _ in cube_free]
    for c, poly in enumerate(column_polys):
        for exp, coeff in poly.items():
            rows[row_index[exp]][c] = coeff
    matrix = RatMatrix.from_rows(rows, len(column_diagrams))
    return matrix, cube_free, column_diagrams
