"""Diagram algebra on the real line: chord, V, and V^2 diagrams.

A diagram is a finite set of points on the oriented real line, considered up
to orientation-preserving homeomorphism, so only the ranks 1..q of the points
matter.  Every point is used by exactly one structure (free points are
forbidden).  The supported structures are:

* ordinary chords -- unordered pairs of points;
* V's -- three points, a mid joined to two tips by the V's two chords;
* a spanning tree on four points (three edges);
* a connected four-edge graph on four points (no multi-edges);
* a triangle together with a disjoint V (six points).

Each diagram carries a ``kind`` tag and a ``degree``: ordinary chords count
1, a V counts 2, a tree counts 3, a four-edge graph counts 4 and a
triangle-plus-V counts 5.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

__all__ = [
    "Diagram",
    "EMPTY",
    "FormalSum",
    "Series",
    "SlottedDiagram",
    "canonicalize",
    "concat",
    "diagram_from_json",
    "diagram_to_json",
    "enumerate_chord_diagrams",
    "enumerate_diagrams",
    "enumerate_trees",
    "enumerate_triangle_vee",
    "enumerate_two_vee_diagrams",
    "enumerate_v_diagrams",
    "lk",
    "product",
    "series_inv",
    "series_mul",
    "sigma",
    "sigma_sum",
]

Edge = Tuple[int, int]
Vee = Tuple[int, int, int]

KIND_D0 = "D0"
KIND_D1 = "D1"
KIND_TWO_VEE = "D2-twoVee"
KIND_TREE = "D2-tree"
KIND_GRAPH4 = "D2tilde-graph4"
KIND_TRI_VEE = "D2tilde-triVee"

_KIND_RANK = {
    KIND_D0: 0,
    KIND_D1: 1,
    KIND_TWO_VEE: 2,
    KIND_TREE: 3,
    KIND_GRAPH4: 4,
    KIND_TRI_VEE: 5,
}


def _norm_edge(edge: Sequence[int]) -> Edge:
    a, b = edge
    if a == b:
        raise ValueError(f"degenerate edge {edge!r}")
    return (a, b) if a < b else (b, a)


def _norm_vee(vee: Sequence[int]) -> Vee:
    mid, ta, tb = vee
    if len({mid, ta, tb}) != 3:
        raise ValueError(f"V must use three distinct points, got {vee!r}")
    return (mid, ta, tb) if ta < tb else (mid, tb, ta)


def _connected(points: Sequence[int], edges: Sequence[Edge]) -> bool:
    points = list(points)
    if not points:
        return True
    seen = {points[0]}
    frontier = [points[0]]
    while frontier:
        here = frontier.pop()
        for a, b in edges:
            other = b if a == here else a if b == here else None
            if other is not None and other not in seen:
                seen.add(other)
                frontier.append(other)
    return seen == set(points)


@dataclass(frozen=True)
class Diagram:
    """An immutable, canonically ranked diagram.

    Instances should be built through :func:`canonicalize`, which accepts
    arbitrary distinct real positions and replaces them by their ranks.
    """

    q: int
    chords: Tuple[Edge, ...] = ()
    vees: Tuple[Vee, ...] = ()
    tree: Optional[Tuple[Edge, ...]] = None
    graph4: Optional[Tuple[Edge, ...]] = None
    triangle_vee: Optional[Tuple[Tuple[int, int, int], Vee]] = None

    @property
    def kind(self) -> str:
        if self.triangle_vee is not None:
            return KIND_TRI_VEE
        if self.graph4 is not None:
            return KIND_GRAPH4
        if self.tree is not None:
            return KIND_TREE
        if len(self.vees) == 2:
            return KIND_TWO_VEE
        if len(self.vees) == 1:
            return KIND_D1
        return KIND_D0

    @property
    def degree(self) -> int:
        deg = len(self.chords) + 2 * len(self.vees)
        if self.tree is not None:
            deg += 3
        if self.graph4 is not None:
            deg += 4
        if self.triangle_vee is not None:
            deg += 5
        return deg

    def points(self) -> List[int]:
        pts: List[int] = []
        for a, b in self.chords:
            pts += [a, b]
        for mid, ta, tb in self.vees:
            pts += [mid, ta, tb]
        if self.tree is not None:
            pts += sorted({p for e in self.tree for p in e})
        if self.graph4 is not None:
            pts += sorted({p for e in self.graph4 for p in e})
        if self.triangle_vee is not None:
            tri, vee = self.triangle_vee
            pts += list(tri) + [vee[0], vee[1], vee[2]]
        return pts

    def sort_key(self) -> tuple:
        return (
            self.q,
            _KIND_RANK[self.kind],
            self.chords,
            self.vees,
            self.tree or (),
            self.graph4 or (),
            self.triangle_vee or (),
        )

    def __lt__(self, other: "Diagram") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        parts = [f"q={self.q}"]
        if self.chords:
            parts.append(f"chords={list(self.chords)}")
        if self.vees:
            parts.append(f"vees={list(self.vees)}")
        if self.tree is not None:
            parts.append(f"tree={list(self.tree)}")
        if self.graph4 is not None:
            parts.append(f"graph4={list(self.graph4)}")
        if self.triangle_vee is not None:
            parts.append(f"triangle_vee={self.triangle_vee}")
        return "Diagram(" + ", ".join(parts) + ")"


def canonicalize(
    chords: Iterable[Sequence[int]] = (),
    vees: Iterable[Sequence[int]] = (),
    tree: Optional[Iterable[Sequence[int]]] = None,
    graph4: Optional[Iterable[Sequence[int]]] = None,
    triangle_vee: Optional[Tuple[Sequence[int], Sequence[int]]] = None,
) -> Diagram:
    """Build a canonical :class:`Diagram` from raw (arbitrary real) positions.

    Positions may be any distinct orderable numbers; they are replaced by
    their ranks 1..q.  Raises ``ValueError`` when a position is used twice,
    when a structural constraint fails (tree not spanning, graph not
    connected, ...), or when more than one of tree/graph4/triangle_vee is
    given.
    """

    chords = [tuple(c) for c in chords]
    vees = [tuple(v) for v in vees]
    tree_edges = None if tree is None else [tuple(e) for e in tree]
    graph_edges = None if graph4 is None else [tuple(e) for e in graph4]
    tri_vee = None
    if triangle_vee is not None:
        tri, vee = triangle_vee
        tri_vee = (tuple(tri), tuple(vee))

    n_structures = sum(x is not None for x in (tree_edges, graph_edges, tri_vee))
    if n_structures > 1:
        raise ValueError("at most one of tree/graph4/triangle_vee may be present")
    if (tree_edges is not None or graph_edges is not None) and vees:
        raise ValueError("tree and graph4 diagrams carry no separate V's")
    if len(vees) > 2:
        raise ValueError("at most two V's are supported")

    positions: List[Any] = []
    for a, b in chords:
        positions += [a, b]
    for mid, ta, tb in vees:
        positions += [mid, ta, tb]
    if tree_edges is not None:
        positions += sorted({p for e in tree_edges for p in e})
    if graph_edges is not None:
        positions += sorted({p for e in graph_edges for p in e})
    if tri_vee is not None:
        tri, vee = tri_vee
        positions += list(tri) + list(vee)

    if len(set(positions)) != len(positions):
        raise ValueError("each position must be used by exactly one structure")
    rank = {p: i + 1 for i, p in enumerate(sorted(positions))}
    q = len(positions)

    new_chords = tuple(sorted(_norm_edge((rank[a], rank[b])) for a, b in chords))
    new_vees = tuple(sorted(_norm_vee((rank[m], rank[a], rank[b])) for m, a, b in vees))

    new_tree = None
    if tree_edges is not None:
        edges = sorted(_norm_edge((rank[a], rank[b])) for a, b in tree_edges)
        if len(set(edges)) != 3 or len(edges) != 3:
            raise ValueError("a tree consists of three distinct edges")
        pts = sorted({p for e in edges for p in e})
        if len(pts) != 4 or not _connected(pts, edges):
            raise ValueError("tree edges must form a spanning tree on four points")
        new_tree = tuple(edges)

    new_graph = None
    if graph_edges is not None:
        edges = sorted(_norm_edge((rank[a], rank[b])) for a, b in graph_edges)
        if len(edges) != 4 or len(set(edges)) != 4:
            raise ValueError("graph4 consists of four distinct edges")
        pts = sorted({p for e in edges for p in e})
        if len(pts) != 4 or not _connected(pts, edges):
            raise ValueError("graph4 must be connected on exactly four points")
        new_graph = tuple(edges)

    new_tri_vee = None
    if tri_vee is not None:
        tri, vee = tri_vee
        if len(set(tri)) != 3:
            raise ValueError("triangle must use three distinct points")
        tri_ranked = tuple(sorted(rank[p] for p in tri))
        vee_ranked = _norm_vee((rank[vee[0]], rank[vee[1]], rank[vee[2]]))
        new_tri_vee = (tri_ranked, vee_ranked)

    return Diagram(
        q=q,
        chords=new_chords,
        vees=new_vees,
        tree=new_tree,
        graph4=new_graph,
        triangle_vee=new_tri_vee,
    )


EMPTY = Diagram(q=0)


# ---------------------------------------------------------------------------
# lk and sigma
# ---------------------------------------------------------------------------


def lk(p: Iterable[int], q_pair: Iterable[int]) -> int:
    """Sign (-1)^(number of points of ``p`` strictly between the two points
    of ``q_pair``).

    ``q_pair`` must contain exactly two points and be disjoint from ``p``.
    """

    p_set = set(p)
    q_set = set(q_pair)
    if len(q_set) != 2:
        raise ValueError("lk: second argument must contain exactly two points")
    if p_set & q_set:
        raise ValueError("lk: arguments must be disjoint")
    lo, hi = sorted(q_set)
    inside = sum(1 for x in p_set if lo < x < hi)
    return -1 if inside % 2 else 1


def sigma(d: Diagram) -> Tuple[int, Diagram]:
    """The involution sign S(d) together with the (unchanged) diagram.

    S(d) is (-1) to the number of pairs with lk = -1, the pairs being all
    unordered chord/chord pairs and all (V triple, chord) pairs.
    """

    if d.tree is not None or d.graph4 is not None or d.triangle_vee is not None:
        raise ValueError("sigma is defined for chord/V diagrams only")
    sign = 1
    for c1, c2 in itertools.combinations(d.chords, 2):
        sign *= lk(c1, c2)
    for vee in d.vees:
        triple = (vee[0], vee[1], vee[2])
        for c in d.chords:
            sign *= lk(triple, c)
    return sign, d


def sigma_sum(s: "FormalSum") -> "FormalSum":
    """Linear extension of :func:`sigma` to formal sums."""

    out = FormalSum()
    for diag, coeff in s.items():
        sgn, same = sigma(diag)
        out = out + FormalSum({same: coeff * sgn})
    return out


# ---------------------------------------------------------------------------
# Formal sums and graded series
# ---------------------------------------------------------------------------


class FormalSum:
    """A finite linear combination of hashable diagram-like keys.

    Coefficients may be any commutative scalars (Fraction, int, float,
    complex).  Zero coefficients are never stored.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Optional[Mapping[Any, Any]] = None):
        self._coeffs: Dict[Any, Any] = {}
        if coeffs:
            for key, val in coeffs.items():
                if val != 0:
                    self._coeffs[key] = val

    @classmethod
    def single(cls, key: Any, coeff: Any = 1) -> "FormalSum":
        return cls({key: coeff})

    def items(self) -> List[Tuple[Any, Any]]:
        def order(key: Any):
            return (type(key).__name__, key.sort_key() if hasattr(key, "sort_key") else key)

        return sorted(self._coeffs.items(), key=lambda kv: order(kv[0]))

    def keys(self) -> List[Any]:
        return [k for k, _ in self.items()]

    def __getitem__(self, key: Any) -> Any:
        return self._coeffs.get(key, 0)

    def __contains__(self, key: Any) -> bool:
        return key in self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __iter__(self) -> Iterator[Any]:
        return iter(self.keys())

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = dict(self._coeffs)
        for key, val in other._coeffs.items():
            new = out.get(key, 0) + val
            if new == 0:
                out.pop(key, None)
            else:
                out[key] = new
        return FormalSum(out)

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-1) * other

    def __neg__(self) -> "FormalSum":
        return (-1) * self

    def __rmul__(self, scalar: Any) -> "FormalSum":
        if scalar == 0:
            return FormalSum()
        return FormalSum({k: scalar * v for k, v in self._coeffs.items()})

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, FormalSum) and self._coeffs == other._coeffs

    def __hash__(self):
        raise TypeError("FormalSum is not hashable")

    def map_keys(self, fn) -> "FormalSum":
        out = FormalSum()
        for key, val in self._coeffs.items():
            out = out + FormalSum({fn(key): val})
        return out

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        if not self._coeffs:
            return "FormalSum(0)"
        bits = [f"{coeff!r}*{key!r}" for key, coeff in self.items()]
        return "FormalSum(" + " + ".join(bits) + ")"


def concat(left: Diagram, mid: Diagram, right: Diagram) -> Diagram:
    """Place ``left``, ``mid`` and ``right`` side by side on the line.

    ``left`` and ``right`` must be plain chord diagrams (kind D0); ``mid``
    may be of any kind.  Degrees add.
    """

    if left.kind != KIND_D0 or right.kind != KIND_D0:
        raise ValueError("concat: outer factors must be chord diagrams (D0)")

    def shifted(d: Diagram, offset: int):
        chords = [(a + offset, b + offset) for a, b in d.chords]
        vees = [(m + offset, a + offset, b + offset) for m, a, b in d.vees]
        tree = None if d.tree is None else [(a + offset, b + offset) for a, b in d.tree]
        graph = None if d.graph4 is None else [(a + offset, b + offset) for a, b in d.graph4]
        tri_vee = None
        if d.triangle_vee is not None:
            tri, vee = d.triangle_vee
            tri_vee = (
                tuple(p + offset for p in tri),
                (vee[0] + offset, vee[1] + offset, vee[2] + offset),
            )
        return chords, vees, tree, graph, tri_vee

    lc, lv, lt, lg, ltv = shifted(left, 0)
    mc, mv, mt, mg, mtv = shifted(mid, left.q)
    rc, rv, rt, rg, rtv = shifted(right, left.q + mid.q)
    trees = [t for t in (lt, mt, rt) if t is not None]
    graphs = [g for g in (lg, mg, rg) if g is not None]
    tri_vees = [t for t in (ltv, mtv, rtv) if t is not None]
    return canonicalize(
        chords=lc + mc + rc,
        vees=lv + mv + rv,
        tree=trees[0] if trees else None,
        graph4=graphs[0] if graphs else None,
        triangle_vee=tri_vees[0] if tri_vees else None,
    )


def product(a: Diagram, b: Diagram) -> Diagram:
    """Concatenation product; at least one factor must be a chord diagram."""

    if a.kind == KIND_D0:
        return concat(a, b, EMPTY)
    if b.kind == KIND_D0:
        return concat(EMPTY, a, b)
    raise ValueError("product: at least one factor must be a chord diagram (D0)")


class Series:
    """A degree-graded series of formal sums, truncated at ``max_degree``.

    The degree-0 part is carried by the empty diagram, so the unit series is
    ``Series.unit(n)``.
    """

    __slots__ = ("max_degree", "parts")

    def __init__(self, parts: Optional[Mapping[int, FormalSum]] = None, max_degree: int = 0):
        self.max_degree = max_degree
        self.parts: Dict[int, FormalSum] = {}
        if parts:
            for deg, s in parts.items():
                if deg <= max_degree and s:
                    self.parts[deg] = s

    @classmethod
    def unit(cls, max_degree: int) -> "Series":
        return cls({0: FormalSum.single(EMPTY, 1)}, max_degree)

    def part(self, deg: int) -> FormalSum:
        return self.parts.get(deg, FormalSum())

    def __add__(self, other: "Series") -> "Series":
        cap = max(self.max_degree, other.max_degree)
        out: Dict[int, FormalSum] = {}
        for deg in range(cap + 1):
            s = self.part(deg) + other.part(deg)
            if s:
                out[deg] = s
        return Series(out, cap)

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, Series)
            and self.max_degree == other.max_degree
            and self.parts == other.parts
        )

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Series({self.parts!r}, max_degree={self.max_degree})"


def series_mul(a: Series, b: Series, max_degree: Optional[int] = None) -> Series:
    """Graded concatenation product of two series."""

    cap = min(a.max_degree, b.max_degree) if max_degree is None else max_degree
    out: Dict[int, FormalSum] = {}
    for deg in range(cap + 1):
        total = FormalSum()
        for da in range(deg + 1):
            pa, pb = a.part(da), b.part(deg - da)
            if not pa or not pb:
                continue
            for ka, ca in pa.items():
                for kb, cb in pb.items():
                    total = total + FormalSum({product(ka, kb): ca * cb})
        if total:
            out[deg] = total
    return Series(out, cap)


def series_inv(a: Series, max_degree: Optional[int] = None) -> Series:
    """Multiplicative inverse of a series with unit constant term."""

    cap = a.max_degree if max_degree is None else max_degree
    if a.part(0) != FormalSum.single(EMPTY, 1):
        raise ValueError("series_inv: constant term must be the unit")
    inv_parts: Dict[int, FormalSum] = {0: FormalSum.single(EMPTY, 1)}
    for deg in range(1, cap + 1):
        acc = FormalSum()
        for j in range(1, deg + 1):
            pa = a.part(j)
            pb = inv_parts.get(deg - j, FormalSum())
            if not pa or not pb:
                continue
            for ka, ca in pa.items():
                for kb, cb in pb.items():
                    acc = acc + FormalSum({product(ka, kb): ca * cb})
        if acc:
            inv_parts[deg] = (-1) * acc
    return Series(inv_parts, cap)


# ---------------------------------------------------------------------------
# Enumerations (canonical order: sorted by Diagram.sort_key)
# ---------------------------------------------------------------------------


def _matchings(points: Sequence[int]) -> Iterator[Tuple[Edge, ...]]:
    points = sorted(points)
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for i, other in enumerate(rest):
        for sub in _matchings(rest[:i] + rest[i + 1 :]):
            yield ((first, other),) + sub


def enumerate_chord_diagrams(m: int) -> List[Diagram]:
    """All chord diagrams of degree ``m`` on 2m points ((2m-1)!! of them)."""

    if m < 0:
        raise ValueError("degree must be non-negative")
    out = [Diagram(q=2 * m, chords=tuple(sorted(match))) for match in _matchings(range(1, 2 * m + 1))]
    return sorted(out, key=Diagram.sort_key)


def enumerate_v_diagrams(m: int) -> List[Diagram]:
    """All V-diagrams of degree ``m``: one V plus m-2 ordinary chords."""

    if m < 2:
        raise ValueError("a V-diagram has degree at least 2")
    q = 3 + 2 * (m - 2)
    out = []
    for triple in itertools.combinations(range(1, q + 1), 3):
        rest = [p for p in range(1, q + 1) if p not in triple]
        for mid in triple:
            tips = tuple(p for p in triple if p != mid)
            for match in _matchings(rest):
                out.append(
                    Diagram(q=q, chords=tuple(sorted(match)), vees=((mid, tips[0], tips[1]),))
                )
    return sorted(out, key=Diagram.sort_key)


def enumerate_two_vee_diagrams(m: int) -> List[Diagram]:
    """All diagrams with two disjoint V's plus m-4 ordinary chords."""

    if m < 4:
        raise ValueError("a two-V diagram has degree at least 4")
    q = 6 + 2 * (m - 4)
    out = []
    for six in itertools.combinations(range(1, q + 1), 6):
        rest = [p for p in range(1, q + 1) if p not in six]
        for tri_a_rest in itertools.combinations(six[1:], 2):
            tri_a = (six[0],) + tri_a_rest
            tri_b = tuple(p for p in six if p not in tri_a)
            for mid_a in tri_a:
                tips_a = tuple(p for p in tri_a if p != mid_a)
                for mid_b in tri_b:
                    tips_b = tuple(p for p in tri_b if p != mid_b)
                    for match in _matchings(rest):
                        out.append(
                            Diagram(
                                q=q,
                                chords=tuple(sorted(match)),
                                vees=tuple(
                                    sorted(
                                        [
                                            (mid_a, tips_a[0], tips_a[1]),
                                            (mid_b, tips_b[0], tips_b[1]),
                                        ]
                                    )
                                ),
                            )
                        )
    return sorted(out, key=Diagram.sort_key)


def _tree_is_star(edges: Sequence[Edge]) -> Optional[int]:
    degree: Dict[int, int] = {}
    for a, b in edges:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    for vertex, deg in degree.items():
        if deg == 3:
            return vertex
    return None


def enumerate_trees() -> List[Diagram]:
    """The 16 spanning trees on points 1..4.

    Order: the four star trees by center 1..4, then the twelve path trees
    sorted lexicographically by edge list.
    """

    all_edges = list(itertools.combinations(range(1, 5), 2))
    stars: List[Diagram] = []
    paths: List[Diagram] = []
    for edges in itertools.combinations(all_edges, 3):
        pts = sorted({p for e in edges for p in e})
        if len(pts) != 4 or not _connected(pts, edges):
            continue
        diag = Diagram(q=4, tree=tuple(sorted(edges)))
        if _tree_is_star(edges) is not None:
            stars.append(diag)
        else:
            paths.append(diag)
    stars.sort(key=lambda d: _tree_is_star(d.tree))
    paths.sort(key=lambda d: d.tree)
    return stars + paths


def enumerate_triangle_vee() -> List[Diagram]:
    """The six triangle-plus-V diagrams on points 1..6 with separated triples.

    The first triple is {1,2,3}; order: V on the first triple with mid 1..3,
    then V on the second triple with mid 4..6.
    """

    tri_a, tri_b = (1, 2, 3), (4, 5, 6)
    out = []
    for mid in tri_a:
        tips = tuple(p for p in tri_a if p != mid)
        out.append(Diagram(q=6, triangle_vee=(tri_b, (mid, tips[0], tips[1]))))
    for mid in tri_b:
        tips = tuple(p for p in tri_b if p != mid)
        out.append(Diagram(q=6, triangle_vee=(tri_a, (mid, tips[0], tips[1]))))
    return out


def enumerate_diagrams(kind: str, degree: int) -> List[Diagram]:
    """Canonical basis enumeration for a diagram kind at a given degree."""

    if degree > 4 and kind in (KIND_D0, KIND_D1, KIND_TWO_VEE):
        raise ValueError("enumeration is supported up to degree 4")
    if kind == KIND_D0:
        return enumerate_chord_diagrams(degree)
    if kind == KIND_D1:
        return enumerate_v_diagrams(degree)
    if kind == KIND_TWO_VEE:
        return enumerate_two_vee_diagrams(degree)
    if kind == KIND_TREE:
        if degree != 3:
            raise ValueError("tree diagrams without chords have degree 3")
        return enumerate_trees()
    if kind == KIND_TRI_VEE:
        if degree != 5:
            raise ValueError("triangle-plus-V diagrams without chords have degree 5")
        return enumerate_triangle_vee()
    if kind == KIND_GRAPH4:
        from . import vassiliev

        if degree != 4:
            raise ValueError("four-edge graph diagrams without chords have degree 4")
        return vassiliev.enumerate_4edge_graphs()
    raise ValueError(f"unknown diagram kind {kind!r}")


# ---------------------------------------------------------------------------
# Slotted diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlottedDiagram:
    """A V-diagram whose ranked points carry slot labels.

    ``slots`` is a nondecreasing tuple giving, for each point rank 1..n, the
    slot it belongs to.  Exactly one slot may be doubled (hold two adjacent
    points); this records which configuration position a desingularisation
    split.  ``chords`` and ``vees`` are as in :class:`Diagram`.
    """

    slots: Tuple[int, ...]
    chords: Tuple[Edge, ...] = ()
    vees: Tuple[Vee, ...] = ()

    def __post_init__(self):
        if any(self.slots[i] > self.slots[i + 1] for i in range(len(self.slots) - 1)):
            raise ValueError("slots must be nondecreasing")
        used = [p for e in self.chords for p in e] + [p for v in self.vees for p in v]
        if sorted(used) != list(range(1, len(self.slots) + 1)):
            raise ValueError("each point must be used by exactly one structure")
        object.__setattr__(self, "chords", tuple(sorted(_norm_edge(e) for e in self.chords)))
        object.__setattr__(self, "vees", tuple(sorted(_norm_vee(v) for v in self.vees)))

    @property
    def degree(self) -> int:
        return len(self.chords) + 2 * len(self.vees)

    def doubled_slot(self) -> Optional[int]:
        seen: Dict[int, int] = {}
        for s in self.slots:
            seen[s] = seen.get(s, 0) + 1
        doubled = [s for s, n in seen.items() if n == 2]
        if any(n > 2 for n in seen.values()):
            raise ValueError("a slot may hold at most two points")
        return doubled[0] if doubled else None

    def collapse(self) -> Diagram:
        """Forget the slot labels, keeping the ranked diagram."""

        return Diagram(q=len(self.slots), chords=self.chords, vees=self.vees)

    def sort_key(self) -> tuple:
        return (self.slots, self.chords, self.vees)

    def __lt__(self, other: "SlottedDiagram") -> bool:
        return self.sort_key() < other.sort_key()


# ---------------------------------------------------------------------------
# JSON serialization (1-based positions, canonical writer, forgiving reader)
# ---------------------------------------------------------------------------


def diagram_to_json(d: Diagram) -> dict:
    out: Dict[str, Any] = {
        "q": d.q,
        "chords": [list(c) for c in d.chords],
        "vees": [list(v) for v in d.vees],
        "tree": None if d.tree is None else [list(e) for e in d.tree],
        "graph4": None if d.graph4 is None else [list(e) for e in d.graph4],
        "triangleVee": None
        if d.triangle_vee is None
        else {"triangle": list(d.triangle_vee[0]), "vee": list(d.triangle_vee[1])},
    }
    return out


def diagram_from_json(data: Mapping[str, Any]) -> Diagram:
    tri_vee = None
    raw = data.get("triangleVee")
    if raw is not None:
        tri_vee = (raw["triangle"], raw["vee"])
    d = canonicalize(
        chords=data.get("chords") or (),
        vees=data.get("vees") or (),
        tree=data.get("tree"),
        graph4=data.get("graph4"),
        triangle_vee=tri_vee,
    )
    declared_q = data.get("q")
    if declared_q is not None and declared_q != d.q:
        raise ValueError(
            f"diagram declares q={declared_q} but uses {d.q} points (free points are forbidden)"
        )
    return d
