"""Iterated-integral invariants of Morse knots and of paths of Morse knots.

Two integrals are evaluated numerically over the strand geometry provided by
:mod:`knotcocycle.morse`:

* ``kontsevich_z`` — the degree-truncated knot integral.  For each tuple of
  horizontal levels ``t_1 < ... < t_m`` and each pairing of strands at the
  levels it accumulates ``(-1)^{down} * D * prod d log(z - z')`` and divides
  by ``(2 i pi)^m``; pairings whose chord diagram contains an isolated chord
  are dropped (working modulo the one-term relation makes the integral
  convergent).
* ``z1`` — the one-cocycle integral of a path of knots.  The degree ``n+1``
  term integrates over ``[a, b] x boundary(simplex^{n+1})``; the boundary
  face ``{t_i = t_{i+1}}`` carries the sign ``(-1)^{i-1}``, the merged
  levels form a V (two chords sharing the point ``z_i = z_{i+1}``, ordered
  by the position of their free endpoints along the knot), and the pullback
  of the wedge of ``d log`` forms to the parameter domain is assembled as an
  ``(n+1) x (n+1)`` determinant whose columns are the deformation parameter
  and the free altitudes.

Both integrals are vector valued.  Values are reported modulo the diagram
relations: coefficient vectors are orthogonally projected onto the
complement of the relator span (an exact rational construction, frozen to
floats).  The projection also drives the adaptive refinement — raw
coefficients of individual diagrams diverge logarithmically near critical
altitudes, but the divergent directions lie inside the relator span and
cancel in the quotient, so convergence is only meaningful (and is measured)
after projection.

Quadrature is Gauss-Legendre on dyadically refined panels, split at all
vertex altitudes, with triangle domains ``u < v`` mapped onto squares.
Error estimates are the differences between consecutive refinement levels,
accumulated per coefficient; they are estimates, not bounds.
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .diagrams import (
    EMPTY,
    Diagram,
    FormalSum,
    canonicalize,
    diagram_from_json,
    diagram_to_json,
    enumerate_chord_diagrams,
    enumerate_v_diagrams,
    product,
)
from .morse import KnotPath, MorseKnot, PathFrame, load_knot_fixture
from .relations import relation_matrix, weight_system_basis

__all__ = [
    "QuadratureConfig",
    "NumericVector",
    "BraidSlab",
    "kontsevich_z",
    "z_hat",
    "z1",
    "z_hat1",
    "z1_braid",
    "reduced_gramain_oracle",
    "experiment_commute",
    "eval_functional",
    "weight_functionals",
    "vector_to_json",
    "vector_from_json",
]

TWO_I_PI = 2j * math.pi

# ---------------------------------------------------------------------------
# Configuration and result containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureConfig:
    """Gauss-Legendre panel order, dyadic refinement cap, and tolerance."""

    order: int = 8
    max_refine: int = 8
    tol: float = 1e-7

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "QuadratureConfig":
        return cls(
            order=int(data.get("order", cls.order)),
            max_refine=int(data.get("maxRefine", cls.max_refine)),
            tol=float(data.get("tol", cls.tol)),
        )

    def to_json(self) -> dict:
        return {"order": self.order, "maxRefine": self.max_refine, "tol": self.tol}


class NumericVector:
    """A degree-truncated diagram-valued result with per-coefficient errors."""

    __slots__ = ("degree", "coeffs", "err")

    def __init__(
        self,
        degree: int,
        coeffs: Optional[Mapping[Diagram, complex]] = None,
        err: Optional[Mapping[Diagram, float]] = None,
    ):
        self.degree = degree
        self.coeffs: Dict[Diagram, complex] = dict(coeffs or {})
        self.err: Dict[Diagram, float] = dict(err or {})

    def __getitem__(self, d: Diagram) -> complex:
        return self.coeffs.get(d, 0j)

    def diagrams(self) -> List[Diagram]:
        return sorted(self.coeffs, key=lambda d: d.sort_key())

    def add(self, other: "NumericVector") -> "NumericVector":
        out = NumericVector(max(self.degree, other.degree), self.coeffs, self.err)
        for d, c in other.coeffs.items():
            out.coeffs[d] = out.coeffs.get(d, 0j) + c
        for d, e in other.err.items():
            out.err[d] = out.err.get(d, 0.0) + e
        return out

    def scaled(self, factor: complex) -> "NumericVector":
        return NumericVector(
            self.degree,
            {d: factor * c for d, c in self.coeffs.items()},
            {d: abs(factor) * e for d, e in self.err.items()},
        )

    def max_err(self) -> float:
        return max(self.err.values(), default=0.0)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        bits = [
            f"{c:.6g}*{d!r}(±{self.err.get(d, 0.0):.2g})"
            for d, c in sorted(self.coeffs.items(), key=lambda kv: kv[0].sort_key())
            if abs(c) > 1e-12 or self.err.get(d, 0.0) > 1e-12
        ]
        return f"NumericVector(deg≤{self.degree}: " + " + ".join(bits) + ")"


def vector_to_json(v: NumericVector) -> dict:
    terms = []
    for d in sorted(set(v.coeffs) | set(v.err), key=lambda d: d.sort_key()):
        c = v.coeffs.get(d, 0j)
        terms.append(
            {
                "diagram": diagram_to_json(d),
                "re": c.real,
                "im": c.imag,
                "err": v.err.get(d, 0.0),
            }
        )
    return {"degree": v.degree, "terms": terms}


def vector_from_json(data: Mapping[str, Any]) -> NumericVector:
    coeffs: Dict[Diagram, complex] = {}
    err: Dict[Diagram, float] = {}
    for term in data["terms"]:
        d = diagram_from_json(term["diagram"])
        coeffs[d] = complex(term["re"], term["im"])
        err[d] = float(term.get("err", 0.0))
    return NumericVector(int(data["degree"]), coeffs, err)


def eval_functional(w: FormalSum, v: NumericVector) -> complex:
    """Pair a diagram functional with a numeric vector.

    Every diagram carrying a nonzero coefficient on either side must be of
    one kind; mixing chord-diagram functionals with V-diagram vectors is an
    error.
    """

    kinds = {d.kind for d in w.keys()} | {d.kind for d in v.coeffs}
    if len(kinds) > 1:
        raise ValueError(f"kind mismatch between functional and vector: {sorted(kinds)}")
    return sum((complex(c) * v.coeffs.get(d, 0j) for d, c in w.items()), 0j)


def weight_functionals(degree: int) -> List[FormalSum]:
    """A basis of diagram functionals annihilating all relators."""

    return weight_system_basis(degree)


# ---------------------------------------------------------------------------
# Bases and the relator projection
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _v_basis(degree: int) -> Tuple[Tuple[Diagram, ...], Dict[Diagram, int]]:
    basis = tuple(enumerate_v_diagrams(degree))
    return basis, {d: i for i, d in enumerate(basis)}


@functools.lru_cache(maxsize=None)
def _chord_basis(degree: int) -> Tuple[Tuple[Diagram, ...], Dict[Diagram, int]]:
    basis = tuple(enumerate_chord_diagrams(degree))
    return basis, {d: i for i, d in enumerate(basis)}


@functools.lru_cache(maxsize=None)
def _projection(degree: int) -> np.ndarray:
    """Orthogonal projection onto the complement of the relator span.

    Built exactly: Gram-Schmidt (without normalisation) over the rationals
    on the relator rows, then ``P = I - sum b b^T / (b, b)``, frozen to
    floats.  ``P v`` is a representative of the class of ``v`` modulo the
    relations (``v - P v`` lies in the relator span), and every functional
    that annihilates the relators takes the same value on ``v`` and ``P v``.
    """

    matrix, basis, _ = relation_matrix(degree)
    n = matrix.n_cols
    rows = [[matrix.entry(r, c) for c in range(n)] for r in range(matrix.n_rows)]
    orth: List[List[Fraction]] = []
    norms: List[Fraction] = []
    for row in rows:
        v = [Fraction(x) for x in row]
        for b, bb in zip(orth, norms):
            coef = sum(x * y for x, y in zip(v, b)) / bb
            v = [x - coef * y for x, y in zip(v, b)]
        nv = sum(x * x for x in v)
        if nv != 0:
            orth.append(v)
            norms.append(nv)
    p = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for b, bb in zip(orth, norms):
        for i in range(n):
            if b[i] == 0:
                continue
            for j in range(n):
                if b[j] != 0:
                    p[i][j] -= b[i] * b[j] / bb
    return np.array([[float(x) for x in row] for row in p], dtype=float)


# ---------------------------------------------------------------------------
# Strand evaluation over a frame
# ---------------------------------------------------------------------------


class _FrameEval:
    """Vectorised strand geometry of one frame of a path."""

    def __init__(self, frame: PathFrame):
        zs = np.array(frame.vertices_z, dtype=complex)
        ts = np.array(frame.vertices_t, dtype=float)
        vzs = np.array(frame.velocities_z, dtype=complex)
        vts = np.array(frame.velocities_t, dtype=float)
        self.t0, self.t1 = ts[:-1], ts[1:]
        self.z0, self.z1 = zs[:-1], zs[1:]
        self.vz0, self.vz1 = vzs[:-1], vzs[1:]
        self.vt0, self.vt1 = vts[:-1], vts[1:]
        self.h = self.t1 - self.t0
        self.dirs = np.where(self.h > 0, 1, -1)
        self.altitudes = sorted(set(ts.tolist()))

    def bands(self, window: Optional[Tuple[float, float]] = None) -> List[Tuple[float, float]]:
        cuts = list(self.altitudes)
        if window is not None:
            lo, hi = window
            cuts = sorted({lo, hi} | {c for c in cuts if lo < c < hi})
        out = []
        for a, b in zip(cuts, cuts[1:]):
            if b - a > 1e-12:
                out.append((a, b))
        return out

    def band_segments(self, lo: float, hi: float) -> List[int]:
        mid = 0.5 * (lo + hi)
        lo_t = np.minimum(self.t0, self.t1)
        hi_t = np.maximum(self.t0, self.t1)
        return [int(i) for i in np.nonzero((lo_t < mid) & (mid < hi_t))[0]]

    def values(self, segs: Sequence[int], t: np.ndarray):
        """``z``, ``dz/dt`` and ``dz/dphi`` for each segment at altitudes ``t``.

        Shapes: ``t`` is any array; results are ``(len(segs),) + t.shape``.
        """

        idx = np.asarray(segs, dtype=int)
        sh = (len(idx),) + (1,) * t.ndim
        t0 = self.t0[idx].reshape(sh)
        h = self.h[idx].reshape(sh)
        z0 = self.z0[idx].reshape(sh)
        dz = (self.z1 - self.z0)[idx].reshape(sh)
        vz0 = self.vz0[idx].reshape(sh)
        dvz = (self.vz1 - self.vz0)[idx].reshape(sh)
        vt0 = self.vt0[idx].reshape(sh)
        dvt = (self.vt1 - self.vt0)[idx].reshape(sh)
        r = (t[None, ...] - t0) / h
        z = z0 + r * dz
        dz_dt = np.broadcast_to(dz / h, z.shape)
        dr = -(vt0 + r * dvt) / h
        dz_dphi = vz0 + r * dvz + dr * dz
        return z, dz_dt, dz_dphi


# ---------------------------------------------------------------------------
# Pairings and their diagrams
# ---------------------------------------------------------------------------

# point = (strand key, direction, level); knot order within one strand is by
# level for an ascending strand and reversed for a descending one
_diagram_memo: Dict[tuple, Tuple[int, int]] = {}


def _pairing_entry(
    chords: Sequence[Tuple[tuple, tuple]],
    vees: Sequence[Tuple[tuple, tuple, tuple]],
    index: Mapping[Diagram, int],
) -> Tuple[int, int]:
    """Basis index and sign ``(-1)^down`` of one pairing, or ``(-1, 0)``.

    Each point is ``(strand_key, direction, level)``.  Pairings whose
    diagram contains an isolated ordinary chord are dropped (index ``-1``).
    """

    key = (tuple(chords), tuple(vees))
    hit = _diagram_memo.get(key)
    if hit is not None:
        return hit
    points = sorted(
        {pt for ch in chords for pt in ch} | {pt for v in vees for pt in v},
        key=lambda p: (p[0], p[2] * p[1]),
    )
    rank = {pt: i + 1 for i, pt in enumerate(points)}
    down = sum(1 for pt in points if pt[1] < 0)
    d = canonicalize(
        chords=[(rank[a], rank[b]) for a, b in chords],
        vees=[(rank[m], rank[a], rank[b]) for m, a, b in vees],
    )
    if any(abs(a - b) == 1 for a, b in d.chords):
        entry = (-1, 0)
    else:
        entry = (index[d], -1 if down % 2 else 1)
    _diagram_memo[key] = entry
    return entry


def _band_points(fe: _FrameEval, segs: Sequence[int], level: int) -> List[tuple]:
    return [(s, int(fe.dirs[s]), level) for s in segs]


def _vee_indices(n: int) -> List[Tuple[int, int, int]]:
    """All (mid, tip1, tip2) index triples with tip1 < tip2."""

    out = []
    for s in range(n):
        others = [k for k in range(n) if k != s]
        for i in range(len(others)):
            for j in range(i + 1, len(others)):
                out.append((s, others[i], others[j]))
    return out


def _chord_indices(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


# ---------------------------------------------------------------------------
# Gauss-Legendre panels
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _leggauss(order: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _panel_nodes(lo: float, hi: float, pieces: int, order: int):
    """Nodes and weights of ``pieces`` equal GL panels covering [lo, hi]."""

    x, w = _leggauss(order)
    edges = np.linspace(lo, hi, pieces + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])[:, None]
    half = 0.5 * (edges[1] - edges[0])
    nodes = (mid + half * x[None, :]).ravel()
    weights = np.tile(w * half, pieces)
    return nodes, weights


def _refine(
    evaluate: Callable[[int], np.ndarray],
    err_of: Callable[[np.ndarray], np.ndarray],
    tol: float,
    max_refine: int,
):
    """Dyadic refinement until the projected update is below ``tol``.

    ``evaluate(level)`` returns the integral with ``2**level`` panels per
    dimension.  Returns the finest value and the absolute projected
    difference of the last two levels (the error estimate).
    """

    prev = evaluate(0)
    est = None
    for level in range(1, max_refine + 1):
        cur = evaluate(level)
        est = err_of(cur - prev)
        prev = cur
        if float(np.max(est)) < tol:
            break
    if est is None:
        est = np.zeros(prev.shape, dtype=float)
    return prev, est


# ---------------------------------------------------------------------------
# The structural data of one band (pairings, diagrams, signs)
# ---------------------------------------------------------------------------


class _BandData:
    """Pairing index arrays for a strand band (cached per structure)."""

    def __init__(self, fe: _FrameEval, segs: List[int], index: Mapping[Diagram, int], level: int):
        self.segs = segs
        self.n = len(segs)
        self.level = level
        self.points = _band_points(fe, segs, level)
        self.vees = _vee_indices(self.n)
        self.chords = _chord_indices(self.n)
        # index arrays for vectorised strand-pair forms
        self.v_s = np.array([v[0] for v in self.vees], dtype=int)
        self.v_a = np.array([v[1] for v in self.vees], dtype=int)
        self.v_b = np.array([v[2] for v in self.vees], dtype=int)
        self.c_p = np.array([c[0] for c in self.chords], dtype=int)
        self.c_q = np.array([c[1] for c in self.chords], dtype=int)

    def vee_pairing(self, k: int) -> Tuple[tuple, tuple, tuple]:
        s, a, b = self.vees[k]
        return (self.points[s], self.points[a], self.points[b])

    def chord_pairing(self, k: int) -> Tuple[tuple, tuple]:
        p, q = self.chords[k]
        return (self.points[p], self.points[q])


def _pair_forms(fe: _FrameEval, segs: Sequence[int], t: np.ndarray, with_phi: bool):
    """All strand-pair ``d log`` coefficients on the node array ``t``.

    Returns ``(B, A)`` with ``B[p, q] = (dz_p' - dz_q')/(z_p - z_q)`` along
    the altitude and ``A`` the same along the deformation parameter
    (``None`` unless requested).
    """

    z, dzt, dzp = fe.values(segs, t)
    dz = z[:, None, ...] - z[None, :, ...]
    # the diagonal is zero; pairings only ever index distinct strands
    with np.errstate(divide="ignore", invalid="ignore"):
        b = (dzt[:, None, ...] - dzt[None, :, ...]) / dz
        a = (dzp[:, None, ...] - dzp[None, :, ...]) / dz if with_phi else None
    return b, a


def _vee_term(bd: _BandData, b: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Determinant blocks ``A1 B2 - A2 B1`` of all V pairings (rows ordered
    by the knot position of the free tips)."""

    return (
        a[bd.v_s, bd.v_a] * b[bd.v_s, bd.v_b] - a[bd.v_s, bd.v_b] * b[bd.v_s, bd.v_a]
    )


def _chord_term(bd: _BandData, b: np.ndarray) -> np.ndarray:
    return b[bd.c_p, bd.c_q]


# ---------------------------------------------------------------------------
# The knot integral
# ---------------------------------------------------------------------------


def kontsevich_z(
    knot: MorseKnot, max_degree: int = 2, quad: Optional[QuadratureConfig] = None
) -> NumericVector:
    """The knot integral truncated at ``max_degree`` (at most 2).

    Degree zero is the empty diagram with coefficient one.  Degree-one
    pairings always give an isolated chord and are dropped.  The degree-two
    part accumulates, over level pairs ``t_1 < t_2`` and strand pairings,
    ``(-1)^{down} (2 i pi)^{-2} d log(z_1 - z_1') d log(z_2 - z_2')`` for
    the interleaved (non-isolated) chord diagrams.
    """

    if max_degree > 2:
        raise NotImplementedError("the knot integral is implemented up to degree 2")
    quad = quad or QuadratureConfig()
    out = NumericVector(max_degree, {EMPTY: 1.0 + 0j}, {EMPTY: 0.0})
    if max_degree < 2:
        return out

    basis, index = _chord_basis(2)
    dim = len(basis)
    fe = _FrameEval(knot.frame())
    bands = fe.bands()
    err_of = np.abs  # chord side: modulo-1T pruning already makes this converge

    total = np.zeros(dim, dtype=complex)
    total_err = np.zeros(dim, dtype=float)

    def chord_entries(bd_u: _BandData, bd_v: _BandData):
        key = ("zz", tuple(bd_u.points), tuple(bd_v.points))
        hit = _structure_memo.get(key)
        if hit is not None:
            return hit
        n_u, n_v = len(bd_u.chords), len(bd_v.chords)
        bi = np.full((n_u, n_v), -1, dtype=int)
        sg = np.zeros((n_u, n_v), dtype=float)
        for i in range(n_u):
            for j in range(n_v):
                idx, sign = _pairing_entry(
                    [bd_u.chord_pairing(i), bd_v.chord_pairing(j)], [], index
                )
                bi[i, j], sg[i, j] = idx, sign
        _structure_memo[key] = (bi, sg)
        return bi, sg

    for iu, (lo_u, hi_u) in enumerate(bands):
        segs_u = fe.band_segments(lo_u, hi_u)
        if len(segs_u) < 2:
            continue
        bd_u = _BandData(fe, segs_u, index, 0)
        for iv in range(iu, len(bands)):
            lo_v, hi_v = bands[iv]
            segs_v = fe.band_segments(lo_v, hi_v)
            if len(segs_v) < 2:
                continue
            bd_v = _BandData(fe, segs_v, index, 1)
            bi, sg = chord_entries(bd_u, bd_v)
            if not (bi >= 0).any():
                continue

            if iu == iv:

                def evaluate(level: int) -> np.ndarray:
                    return _triangle_combo(
                        fe, bd_u, bd_v, lo_u, hi_u, level, quad.order,
                        u_part="chord", v_part="chord", with_phi=False,
                    ) @ _scatter(bi, sg, dim)

                vec, est = _refine(evaluate, err_of, quad.tol * 0.1, quad.max_refine)
            else:

                def evaluate(level: int) -> np.ndarray:
                    cu = _line_integral(fe, bd_u, lo_u, hi_u, level, quad.order, "chord", False)
                    cv = _line_integral(fe, bd_v, lo_v, hi_v, level, quad.order, "chord", False)
                    return np.outer(cu, cv).ravel() @ _scatter(bi, sg, dim)

                vec, est = _refine(evaluate, err_of, quad.tol * 0.1, quad.max_refine)
            total += vec
            total_err += est

    pref = TWO_I_PI ** (-2)
    for d, c, e in zip(basis, total, total_err):
        if abs(c) > 0 or e > 0:
            out.coeffs[d] = pref * c
            out.err[d] = abs(pref) * e
    return out


_structure_memo: Dict[tuple, Tuple[np.ndarray, np.ndarray]] = {}


def _scatter(bi: np.ndarray, sg: np.ndarray, dim: int) -> np.ndarray:
    """A (pairings x dim) matrix sending combo values to basis coefficients."""

    flat_bi, flat_sg = bi.ravel(), sg.ravel()
    m = np.zeros((flat_bi.size, dim), dtype=float)
    ok = flat_bi >= 0
    m[np.nonzero(ok)[0], flat_bi[ok]] = flat_sg[ok]
    return m


def _line_integral(
    fe: _FrameEval,
    bd: _BandData,
    lo: float,
    hi: float,
    level: int,
    order: int,
    part: str,
    with_phi: bool,
) -> np.ndarray:
    """Integral over a band of each pairing's form factor (vees or chords)."""

    nodes, w = _panel_nodes(lo, hi, 2 ** level, order)
    b, a = _pair_forms(fe, bd.segs, nodes, with_phi)
    vals = _vee_term(bd, b, a) if part == "vee" else _chord_term(bd, b)
    return vals @ w


def _triangle_combo(
    fe: _FrameEval,
    bd_u: _BandData,
    bd_v: _BandData,
    lo: float,
    hi: float,
    level: int,
    order: int,
    u_part: str,
    v_part: str,
    with_phi: bool,
) -> np.ndarray:
    """Integrals over ``{u < v}`` in one band of ``f_i(u) g_j(v)``.

    The triangle is mapped onto a square by ``u = lo + s (v - lo)``; the
    ``v`` panels are processed one at a time to bound memory.  Returns the
    flattened ``(i, j)`` combination matrix.
    """

    pieces = 2 ** level
    x, w = _leggauss(order)
    edges = np.linspace(lo, hi, pieces + 1)
    s_nodes, s_w = _panel_nodes(0.0, 1.0, pieces, order)
    combo: Optional[np.ndarray] = None
    for k in range(pieces):
        half = 0.5 * (edges[k + 1] - edges[k])
        v_nodes = 0.5 * (edges[k] + edges[k + 1]) + half * x
        v_w = w * half
        b_v, a_v = _pair_forms(fe, bd_v.segs, v_nodes, with_phi)
        g = _vee_term(bd_v, b_v, a_v) if v_part == "vee" else _chord_term(bd_v, b_v)
        u_grid = lo + s_nodes[:, None] * (v_nodes[None, :] - lo)
        b_u, a_u = _pair_forms(fe, bd_u.segs, u_grid, with_phi)
        f = _vee_term(bd_u, b_u, a_u) if u_part == "vee" else _chord_term(bd_u, b_u)
        fw = np.tensordot(s_w, f, axes=(0, 1))  # (n_f, n_v)
        part = _combine(fw, g, (v_nodes - lo) * v_w)
        combo = part if combo is None else combo + part
    return combo


def _combine(fw: np.ndarray, g: np.ndarray, wv: np.ndarray) -> np.ndarray:
    """sum_v wv[v] * fw[i, v] * g[j, v], flattened over (i, j)."""

    return ((fw * wv[None, :]) @ g.T).ravel()


# ---------------------------------------------------------------------------
# The one-cocycle integral
# ---------------------------------------------------------------------------


def _inner_z1(
    fe: _FrameEval,
    max_degree: int,
    quad: QuadratureConfig,
    window: Optional[Tuple[float, float]],
    projections: Mapping[int, Optional[np.ndarray]],
) -> Dict[int, Tuple[np.ndarray, np.ndarray]]:
    """Altitude integrals of one frame: degree -> (vector, error vector).

    Degree 2 integrates the V block over single levels; degree 3 integrates
    V x chord over the two boundary faces (V below / V above, the latter
    with the opposite sign built into the face assembly).
    """

    out: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}
    bands = fe.bands(window)
    segs_of: Dict[int, List[int]] = {}
    for i, (lo, hi) in enumerate(bands):
        segs_of[i] = fe.band_segments(lo, hi)

    if max_degree >= 2:
        basis2, index2 = _v_basis(2)
        dim2 = len(basis2)
        p2 = projections.get(2)
        err2 = (lambda d: np.abs(p2 @ d)) if p2 is not None else np.abs
        total = np.zeros(dim2, dtype=complex)
        total_err = np.zeros(dim2, dtype=float)
        for i, (lo, hi) in enumerate(bands):
            segs = segs_of[i]
            if len(segs) < 3:
                continue
            bd = _BandData(fe, segs, index2, 0)
            key = ("v2", tuple(bd.points))
            hit = _structure_memo.get(key)
            if hit is None:
                n = len(bd.vees)
                bi = np.full(n, -1, dtype=int)
                sg = np.zeros(n, dtype=float)
                for k in range(n):
                    s, a, b = bd.vee_pairing(k)
                    bi[k], sg[k] = _pairing_entry([], [(s, a, b)], index2)
                _structure_memo[key] = (bi, sg)
                hit = (bi, sg)
            bi, sg = hit
            scatter = _scatter(bi.reshape(-1, 1), sg.reshape(-1, 1), dim2)

            def evaluate(level: int) -> np.ndarray:
                return _line_integral(fe, bd, lo, hi, level, quad.order, "vee", True) @ scatter

            vec, est = _refine(evaluate, err2, quad.tol * 0.1, quad.max_refine)
            total += vec
            total_err += est
        out[2] = (total, total_err)

    if max_degree >= 3:
        basis3, index3 = _v_basis(3)
        dim3 = len(basis3)
        p3 = projections.get(3)
        err3 = (lambda d: np.abs(p3 @ d)) if p3 is not None else np.abs
        total = np.zeros(dim3, dtype=complex)
        total_err = np.zeros(dim3, dtype=float)

        def face_entries(bd_vee: _BandData, bd_ch: _BandData, vee_below: bool):
            # Net face coefficient is +1 on both faces: with the V above
            # (face 2) the determinant of the pullback matrix is
            # -B_chord (A_1 B_2 - A_2 B_1) and the boundary face carries
            # (-1)^{i-1} = -1, so the two minus signs cancel.
            key = ("v3", tuple(bd_vee.points), tuple(bd_ch.points), vee_below)
            hit = _structure_memo.get(key)
            if hit is not None:
                return hit
            n_v, n_c = len(bd_vee.vees), len(bd_ch.chords)
            bi = np.full((n_v, n_c), -1, dtype=int)
            sg = np.zeros((n_v, n_c), dtype=float)
            for iv in range(n_v):
                vee = bd_vee.vee_pairing(iv)
                for ic in range(n_c):
                    idx, sign = _pairing_entry([bd_ch.chord_pairing(ic)], [vee], index3)
                    bi[iv, ic] = idx
                    sg[iv, ic] = sign
            _structure_memo[key] = (bi, sg)
            return bi, sg

        for iu in range(len(bands)):
            lo_u, hi_u = bands[iu]
            segs_u = segs_of[iu]
            for iv in range(iu, len(bands)):
                lo_v, hi_v = bands[iv]
                segs_v = segs_of[iv]
                same = iu == iv
                # face 1: V at the lower level u, chord at v
                if len(segs_u) >= 3 and len(segs_v) >= 2:
                    bd_vee = _BandData(fe, segs_u, index3, 0)
                    bd_ch = _BandData(fe, segs_v, index3, 1)
                    bi, sg = face_entries(bd_vee, bd_ch, True)
                    if (bi >= 0).any():
                        scatter = _scatter(bi, sg, dim3)
                        if same:

                            def evaluate(level: int) -> np.ndarray:
                                return _triangle_combo(
                                    fe, bd_vee, bd_ch, lo_u, hi_u,
                                    level, quad.order, "vee", "chord", True,
                                ) @ scatter

                        else:

                            def evaluate(level: int) -> np.ndarray:
                                vv = _line_integral(fe, bd_vee, lo_u, hi_u, level, quad.order, "vee", True)
                                cc = _line_integral(fe, bd_ch, lo_v, hi_v, level, quad.order, "chord", True)
                                return np.outer(vv, cc).ravel() @ scatter

                        vec, est = _refine(evaluate, err3, quad.tol * 0.05, quad.max_refine)
                        total += vec
                        total_err += est
                # face 2: chord at the lower level u, V at v
                if len(segs_u) >= 2 and len(segs_v) >= 3:
                    bd_ch = _BandData(fe, segs_u, index3, 0)
                    bd_vee = _BandData(fe, segs_v, index3, 1)
                    bi, sg = face_entries(bd_vee, bd_ch, False)
                    if (bi >= 0).any():
                        scatter = _scatter(bi, sg, dim3)
                        if same:

                            def evaluate(level: int) -> np.ndarray:
                                combo = _triangle_combo(
                                    fe, bd_ch, bd_vee, lo_u, hi_u,
                                    level, quad.order, "chord", "vee", True,
                                )
                                n_c, n_v = len(bd_ch.chords), len(bd_vee.vees)
                                return combo.reshape(n_c, n_v).T.ravel() @ scatter

                        else:

                            def evaluate(level: int) -> np.ndarray:
                                cc = _line_integral(fe, bd_ch, lo_u, hi_u, level, quad.order, "chord", True)
                                vv = _line_integral(fe, bd_vee, lo_v, hi_v, level, quad.order, "vee", True)
                                return np.outer(vv, cc).ravel() @ scatter

                        vec, est = _refine(evaluate, err3, quad.tol * 0.05, quad.max_refine)
                        total += vec
                        total_err += est
        out[3] = (total, total_err)
    return out


def z1(
    path: KnotPath,
    max_degree: int = 3,
    quad: Optional[QuadratureConfig] = None,
    t_window: Optional[Tuple[float, float]] = None,
    project: bool = True,
) -> NumericVector:
    """The one-cocycle integral of a path of knots, truncated at degree 3.

    The result is reported modulo the diagram relations (orthogonal
    projection of the coefficient vector), with per-coefficient error
    estimates.  ``t_window`` restricts all altitude integrations to a
    window (used for consistency checks against the braid pullback);
    ``project=False`` exposes the raw, relation-violating coefficients
    whose individual values diverge logarithmically under refinement.
    """

    if max_degree > 3:
        raise NotImplementedError("the one-cocycle integral is implemented up to degree 3")
    quad = quad or QuadratureConfig()
    projections: Dict[int, Optional[np.ndarray]] = {
        deg: (_projection(deg) if project else None) for deg in (2, 3) if deg <= max_degree
    }

    a, b = path.phi_range
    breaks = path.breakpoints()
    degs = [d for d in (2, 3) if d <= max_degree]
    if not degs:
        return NumericVector(max_degree)
    dims = {d: len(_v_basis(d)[0]) for d in degs}

    def inner(phi: float) -> Dict[int, Tuple[np.ndarray, np.ndarray]]:
        fe = _FrameEval(path.frame_at(phi))
        return _inner_z1(fe, max_degree, quad, t_window, projections)

    totals = {d: np.zeros(dims[d], dtype=complex) for d in degs}
    errs = {d: np.zeros(dims[d], dtype=float) for d in degs}
    for lo, hi in zip(breaks, breaks[1:]):

        def evaluate(level: int) -> np.ndarray:
            nodes, w = _panel_nodes(lo, hi, 2 ** level, quad.order)
            acc = {d: np.zeros(dims[d], dtype=complex) for d in degs}
            acc_err = {d: np.zeros(dims[d], dtype=float) for d in degs}
            for phi, wk in zip(nodes, w):
                parts = inner(phi)
                for d in degs:
                    vec, est = parts[d]
                    acc[d] += wk * vec
                    acc_err[d] += wk * est
            evaluate.inner_err = acc_err  # inner estimates at this level
            return np.concatenate([acc[d] for d in degs])

        def err_of(diff: np.ndarray) -> np.ndarray:
            pieces = []
            off = 0
            for d in degs:
                block = diff[off : off + dims[d]]
                off += dims[d]
                p = projections.get(d)
                pieces.append(np.abs(p @ block) if p is not None else np.abs(block))
            return np.concatenate(pieces)

        vec, est = _refine(evaluate, err_of, quad.tol, quad.max_refine)
        off = 0
        for d in degs:
            totals[d] += vec[off : off + dims[d]]
            errs[d] += est[off : off + dims[d]] + evaluate.inner_err[d]
            off += dims[d]

    out = NumericVector(max_degree)
    for d in degs:
        pref = TWO_I_PI ** (-(d))
        basis, _ = _v_basis(d)
        vec = totals[d]
        err = errs[d]
        p = projections.get(d)
        if p is not None:
            err = np.abs(p) @ err
            vec = p @ vec
        for dgm, c, e in zip(basis, vec, err):
            out.coeffs[dgm] = complex(c) * pref
            out.err[dgm] = float(e) * abs(pref)
    return out


# ---------------------------------------------------------------------------
# Corrections by the unknotted hump
# ---------------------------------------------------------------------------


class _ErrSeries:
    """A truncated diagram series with first-order error propagation."""

    def __init__(self, parts: Dict[int, Dict[Diagram, Tuple[complex, float]]], cap: int):
        self.parts = parts
        self.cap = cap

    @classmethod
    def unit(cls, cap: int) -> "_ErrSeries":
        return cls({0: {EMPTY: (1.0 + 0j, 0.0)}}, cap)

    @classmethod
    def from_vector(cls, v: NumericVector, cap: int) -> "_ErrSeries":
        parts: Dict[int, Dict[Diagram, Tuple[complex, float]]] = {}
        for d, c in v.coeffs.items():
            deg = d.degree
            if deg > cap:
                continue
            parts.setdefault(deg, {})[d] = (complex(c), v.err.get(d, 0.0))
        return cls(parts, cap)

    def to_vector(self, degree: int) -> NumericVector:
        out = NumericVector(degree)
        for deg, terms in self.parts.items():
            for d, (c, e) in terms.items():
                out.coeffs[d] = c
                out.err[d] = e
        return out

    def mul(self, other: "_ErrSeries") -> "_ErrSeries":
        cap = min(self.cap, other.cap)
        parts: Dict[int, Dict[Diagram, Tuple[complex, float]]] = {}
        for da, terms_a in self.parts.items():
            for db, terms_b in other.parts.items():
                if da + db > cap:
                    continue
                bucket = parts.setdefault(da + db, {})
                for ka, (ca, ea) in terms_a.items():
                    for kb, (cb, eb) in terms_b.items():
                        key = product(ka, kb)
                        c0, e0 = bucket.get(key, (0j, 0.0))
                        bucket[key] = (
                            c0 + ca * cb,
                            e0 + abs(ca) * eb + abs(cb) * ea + ea * eb,
                        )
        return _ErrSeries(parts, cap)

    def inverse(self) -> "_ErrSeries":
        const = self.parts.get(0, {})
        c0 = const.get(EMPTY, (0j, 0.0))[0]
        if abs(c0 - 1.0) > 1e-6 or set(const) - {EMPTY}:
            raise ValueError("series inversion requires a unit constant term")
        # normalise the constant term exactly to one before inverting
        norm = _ErrSeries(
            {deg: dict(terms) for deg, terms in self.parts.items()}, self.cap
        )
        norm.parts[0] = {EMPTY: (1.0 + 0j, const.get(EMPTY, (0j, 0.0))[1])}
        inv = _ErrSeries.unit(self.cap)
        for deg in range(1, self.cap + 1):
            correction: Dict[Diagram, Tuple[complex, float]] = {}
            for j in range(1, deg + 1):
                terms_a = norm.parts.get(j, {})
                terms_b = inv.parts.get(deg - j, {})
                for ka, (ca, ea) in terms_a.items():
                    for kb, (cb, eb) in terms_b.items():
                        key = product(ka, kb)
                        c0_, e0_ = correction.get(key, (0j, 0.0))
                        correction[key] = (
                            c0_ + ca * cb,
                            e0_ + abs(ca) * eb + abs(cb) * ea + ea * eb,
                        )
            if correction:
                inv.parts[deg] = {k: (-c, e) for k, (c, e) in correction.items()}
        return inv

    def power(self, n: int) -> "_ErrSeries":
        out = _ErrSeries.unit(self.cap)
        for _ in range(n):
            out = out.mul(self)
        return out


def _correction_series(
    c: int, cap: int, quad: Optional[QuadratureConfig], infinity: Optional[MorseKnot]
) -> _ErrSeries:
    if c % 2 != 0:
        raise ValueError("a Morse knot has an even number of critical points")
    hump = infinity if infinity is not None else load_knot_fixture("hump")
    z_inf = kontsevich_z(hump, max_degree=min(cap, 2), quad=quad)
    series = _ErrSeries.from_vector(z_inf, cap)
    return series.inverse().power(c // 2)


def z_hat(
    knot: MorseKnot,
    max_degree: int = 2,
    quad: Optional[QuadratureConfig] = None,
    infinity: Optional[MorseKnot] = None,
) -> NumericVector:
    """The corrected knot integral: the raw integral divided by the integral
    of the unknotted hump raised to half the number of critical points."""

    raw = kontsevich_z(knot, max_degree=max_degree, quad=quad)
    corr = _correction_series(knot.critical_count, max_degree, quad, infinity)
    hat = corr.mul(_ErrSeries.from_vector(raw, max_degree))
    return hat.to_vector(max_degree)


def z_hat1(
    path: KnotPath,
    max_degree: int = 3,
    quad: Optional[QuadratureConfig] = None,
    infinity: Optional[MorseKnot] = None,
) -> NumericVector:
    """The corrected one-cocycle integral of a path.

    The raw vector is multiplied on the left by the inverse hump series
    raised to half the (constant) number of critical points along the path.
    At degree three and below the correction is invisible — the hump series
    has no surviving terms of degree one or two that concatenate into a
    V-diagram of degree at most three — but it is applied structurally.
    """

    knot = path.knot_at(path.phi_range[0])
    raw = z1(path, max_degree=max_degree, quad=quad)
    corr = _correction_series(knot.critical_count, max_degree, quad, infinity)
    hat = corr.mul(_ErrSeries.from_vector(raw, max_degree))
    out = hat.to_vector(max_degree)
    # keep only V-diagram entries (products with the unit keep kinds intact)
    out.coeffs = {d: c for d, c in out.coeffs.items() if d.kind != "D0"}
    out.err = {d: e for d, e in out.err.items() if d.kind != "D0"}
    return out


def experiment_commute(
    path: KnotPath,
    max_degree: int = 3,
    quad: Optional[QuadratureConfig] = None,
    infinity: Optional[MorseKnot] = None,
) -> dict:
    """Compare left against right correction of the one-cocycle integral.

    The corrected integral multiplies the raw vector by the inverse hump
    series on the left.  Whether the hump series commutes with the cocycle
    vector under the concatenation product is open in general; this
    experiment evaluates both orders at the computable truncation depth and
    reports the largest coefficient difference.
    """

    knot = path.knot_at(path.phi_range[0])
    raw = _ErrSeries.from_vector(z1(path, max_degree=max_degree, quad=quad), max_degree)
    corr = _correction_series(knot.critical_count, max_degree, quad, infinity)
    left = corr.mul(raw).to_vector(max_degree)
    right = raw.mul(corr).to_vector(max_degree)
    diagrams = set(left.coeffs) | set(right.coeffs)
    max_diff = max(
        (abs(left.coeffs.get(d, 0j) - right.coeffs.get(d, 0j)) for d in diagrams),
        default=0.0,
    )
    err = max(left.max_err(), right.max_err())
    return {
        "max_degree": max_degree,
        "max_coeff_diff": max_diff,
        "err": err,
        "commute_within_err": bool(max_diff <= 10.0 * err + 1e-12),
    }


# ---------------------------------------------------------------------------
# The braid pullback of the one-cocycle integral
# ---------------------------------------------------------------------------


@dataclass
class BraidSlab:
    """A critical-point-free altitude window of a path, seen as a braid.

    ``strand_count`` strands move in the plane as the parameter varies;
    ``orientations`` records the altitude direction of each strand along the
    knot (a genuine braid has all strands increasing).
    """

    path: KnotPath
    window: Tuple[float, float]
    strand_count: int
    orientations: Tuple[int, ...]

    @classmethod
    def from_path(
        cls, path: KnotPath, window: Sequence[float], samples: int = 9
    ) -> "BraidSlab":
        lo, hi = float(window[0]), float(window[1])
        if lo >= hi:
            raise ValueError("empty altitude window")
        a, b = path.phi_range
        counts = set()
        orientations: Optional[Tuple[int, ...]] = None
        for k in range(samples + 1):
            phi = a + (b - a) * k / samples
            knot = path.knot_at(phi)
            for c in knot.critical_altitudes():
                if lo < c < hi:
                    raise ValueError(
                        f"critical altitude {c:.6g} inside the window at parameter {phi:.6g}"
                    )
            frame = path.frame_at(phi)
            fe = _FrameEval(frame)
            for blo, bhi in fe.bands((lo, hi)):
                segs = fe.band_segments(blo, bhi)
                counts.add(len(segs))
                dirs = tuple(int(fe.dirs[s]) for s in segs)
                if orientations is None:
                    orientations = dirs
                elif dirs != orientations:
                    raise ValueError("strand orientations change inside the window")
                mid = 0.5 * (blo + bhi)
                z, _, _ = fe.values(segs, np.array([mid]))
                zs = z[:, 0]
                for i in range(len(zs)):
                    for j in range(i + 1, len(zs)):
                        if abs(zs[i] - zs[j]) < 1e-9:
                            raise ValueError("strands collide inside the window")
        if len(counts) != 1:
            raise ValueError("strand count changes inside the window")
        return cls(path, (lo, hi), counts.pop(), orientations or ())


def z1_braid(
    slab: BraidSlab,
    max_degree: int = 3,
    quad: Optional[QuadratureConfig] = None,
    project: bool = True,
) -> NumericVector:
    """The one-cocycle integral of a braid slab via the form pullback.

    Independently of the pairing enumeration of :func:`z1`, the integrand is
    assembled from the diagram-valued connection forms on the slab's
    strands: for the degree ``n+1`` term, one level carries the V family
    (all couples of ``d log`` forms sharing one strand, in lexicographic
    order) and every other level carries the chord family, with the
    alternating sign over the position of the V level.
    """

    from .kzforms import lambda_kz, omega_kz

    if max_degree > 3:
        raise NotImplementedError("the braid pullback is implemented up to degree 3")
    quad = quad or QuadratureConfig()
    p = slab.strand_count
    if p % 2 == 0:
        warnings.warn(
            "even strand count: the window is not a long-knot slab", stacklevel=2
        )
    path = slab.path
    degs = [d for d in (2, 3) if d <= max_degree]
    out = NumericVector(max_degree)
    if not degs or p < 3:
        return out

    projections = {d: (_projection(d) if project else None) for d in degs}
    dims = {d: len(_v_basis(d)[0]) for d in degs}
    vee_terms = lambda_kz(p)
    chord_terms = omega_kz(p)
    orient = slab.orientations

    def strand_points(level: int) -> List[tuple]:
        return [(k, orient[k], level) for k in range(p)]

    def entries_deg2(index) -> Tuple[np.ndarray, np.ndarray, List[Tuple[int, int, int]]]:
        bi = np.full(len(vee_terms), -1, dtype=int)
        sg = np.zeros(len(vee_terms), dtype=float)
        idxs = []
        pts = strand_points(0)
        for k, term in enumerate(vee_terms):
            mid, t1, t2 = (s - 1 for s in term.strands)
            bi[k], sg[k] = _pairing_entry([], [(pts[mid], pts[t1], pts[t2])], index)
            idxs.append((mid, t1, t2))
        return bi, sg, idxs

    def entries_deg3(index, vee_below: bool):
        # net face coefficient +1 on both faces (determinant sign cancels
        # the boundary-face sign when the V sits above the chord)
        n_v, n_c = len(vee_terms), len(chord_terms)
        bi = np.full((n_v, n_c), -1, dtype=int)
        sg = np.zeros((n_v, n_c), dtype=float)
        pts_u, pts_v = strand_points(0), strand_points(1)
        pts_vee = pts_u if vee_below else pts_v
        pts_ch = pts_v if vee_below else pts_u
        for iv, term in enumerate(vee_terms):
            mid, t1, t2 = (s - 1 for s in term.strands)
            vee = (pts_vee[mid], pts_vee[t1], pts_vee[t2])
            for ic, ch in enumerate(chord_terms):
                a, b = (s - 1 for s in ch.word[0])
                idx, sign = _pairing_entry([(pts_ch[a], pts_ch[b])], [vee], index)
                bi[iv, ic] = idx
                sg[iv, ic] = sign
        return bi, sg

    def band_chain(fe: _FrameEval) -> List[Tuple[float, float, List[int]]]:
        chain = []
        for lo, hi in fe.bands(slab.window):
            segs = fe.band_segments(lo, hi)
            if len(segs) != p:
                raise ValueError("strand count changes inside the window")
            chain.append((lo, hi, segs))
        return chain

    def vee_vals(fe, segs, t):
        b, a = _pair_forms(fe, segs, t, True)
        vals = np.empty((len(vee_terms),) + t.shape, dtype=complex)
        for k, (mid, t1, t2) in enumerate(vee_idx):
            vals[k] = a[mid, t1] * b[mid, t2] - a[mid, t2] * b[mid, t1]
        return vals

    def chord_vals(fe, segs, t):
        b, _ = _pair_forms(fe, segs, t, False)
        vals = np.empty((len(chord_terms),) + t.shape, dtype=complex)
        for k, ch in enumerate(chord_terms):
            i, j = (s - 1 for s in ch.word[0])
            vals[k] = b[i, j]
        return vals

    basis_entries = {}
    if 2 in degs:
        _, index2 = _v_basis(2)
        bi2, sg2, vee_idx = entries_deg2(index2)
        basis_entries[2] = (_scatter(bi2.reshape(-1, 1), sg2.reshape(-1, 1), dims[2]),)
    else:
        vee_idx = [(t.strands[0] - 1, t.strands[1] - 1, t.strands[2] - 1) for t in vee_terms]
    if 3 in degs:
        _, index3 = _v_basis(3)
        basis_entries[3] = (
            _scatter(*entries_deg3(index3, True), dims[3]),
            _scatter(*entries_deg3(index3, False), dims[3]),
        )

    def inner(phi: float) -> Dict[int, Tuple[np.ndarray, np.ndarray]]:
        fe = _FrameEval(path.frame_at(phi))
        chain = band_chain(fe)
        res: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}
        if 2 in degs:
            (scatter2,) = basis_entries[2]
            p2 = projections[2]
            err_fn = (lambda d: np.abs(p2 @ d)) if p2 is not None else np.abs
            total = np.zeros(dims[2], dtype=complex)
            terr = np.zeros(dims[2], dtype=float)
            for lo, hi, segs in chain:

                def evaluate(level: int) -> np.ndarray:
                    nodes, w = _panel_nodes(lo, hi, 2 ** level, quad.order)
                    return (vee_vals(fe, segs, nodes) @ w) @ scatter2

                vec, est = _refine(evaluate, err_fn, quad.tol * 0.1, quad.max_refine)
                total += vec
                terr += est
            res[2] = (total, terr)
        if 3 in degs:
            scatter_low, scatter_high = basis_entries[3]
            p3 = projections[3]
            err_fn = (lambda d: np.abs(p3 @ d)) if p3 is not None else np.abs
            total = np.zeros(dims[3], dtype=complex)
            terr = np.zeros(dims[3], dtype=float)
            for iu in range(len(chain)):
                lo_u, hi_u, segs_u = chain[iu]
                for iv in range(iu, len(chain)):
                    lo_v, hi_v, segs_v = chain[iv]
                    same = iu == iv

                    def ev_face(level: int, vee_below: bool) -> np.ndarray:
                        f_vee = lambda t, s=(segs_u if vee_below else segs_v): vee_vals(fe, s, t)
                        f_ch = lambda t, s=(segs_v if vee_below else segs_u): chord_vals(fe, s, t)
                        scatter = scatter_low if vee_below else scatter_high
                        if same:
                            combo = _generic_triangle(
                                f_vee if vee_below else f_ch,
                                f_ch if vee_below else f_vee,
                                lo_u, hi_u, level, quad.order,
                            )
                            if not vee_below:
                                n_c, n_v = len(chord_terms), len(vee_terms)
                                combo = combo.reshape(n_c, n_v).T.ravel()
                            return combo @ scatter
                        nodes_u, w_u = _panel_nodes(lo_u, hi_u, 2 ** level, quad.order)
                        nodes_v, w_v = _panel_nodes(lo_v, hi_v, 2 ** level, quad.order)
                        low_vals = (f_vee if vee_below else f_ch)(nodes_u) @ w_u
                        high_vals = (f_ch if vee_below else f_vee)(nodes_v) @ w_v
                        if vee_below:
                            return np.outer(low_vals, high_vals).ravel() @ scatter
                        return np.outer(high_vals, low_vals).ravel() @ scatter

                    for vee_below in (True, False):
                        vec, est = _refine(
                            lambda level: ev_face(level, vee_below),
                            err_fn, quad.tol * 0.05, quad.max_refine,
                        )
                        total += vec
                        terr += est
            res[3] = (total, terr)
        return res

    totals = {d: np.zeros(dims[d], dtype=complex) for d in degs}
    errs = {d: np.zeros(dims[d], dtype=float) for d in degs}
    breaks = path.breakpoints()
    for lo, hi in zip(breaks, breaks[1:]):

        def evaluate(level: int) -> np.ndarray:
            nodes, w = _panel_nodes(lo, hi, 2 ** level, quad.order)
            acc = {d: np.zeros(dims[d], dtype=complex) for d in degs}
            acc_err = {d: np.zeros(dims[d], dtype=float) for d in degs}
            for phi, wk in zip(nodes, w):
                parts = inner(phi)
                for d in degs:
                    vec, est = parts[d]
                    acc[d] += wk * vec
                    acc_err[d] += wk * est
            evaluate.inner_err = acc_err
            return np.concatenate([acc[d] for d in degs])

        def err_of(diff: np.ndarray) -> np.ndarray:
            pieces = []
            off = 0
            for d in degs:
                block = diff[off : off + dims[d]]
                off += dims[d]
                pm = projections.get(d)
                pieces.append(np.abs(pm @ block) if pm is not None else np.abs(block))
            return np.concatenate(pieces)

        vec, est = _refine(evaluate, err_of, quad.tol, quad.max_refine)
        off = 0
        for d in degs:
            totals[d] += vec[off : off + dims[d]]
            errs[d] += est[off : off + dims[d]] + evaluate.inner_err[d]
            off += dims[d]

    for d in degs:
        pref = TWO_I_PI ** (-d)
        basis, _ = _v_basis(d)
        vec, err = totals[d], errs[d]
        pm = projections.get(d)
        if pm is not None:
            err = np.abs(pm) @ err
            vec = pm @ vec
        for dgm, c, e in zip(basis, vec, err):
            out.coeffs[dgm] = complex(c) * pref
            out.err[dgm] = float(e) * abs(pref)
    return out


def _generic_triangle(f_low, f_high, lo: float, hi: float, level: int, order: int) -> np.ndarray:
    """``sum over u<v`` of ``f_low_i(u) f_high_j(v)`` on one band (flattened)."""

    pieces = 2 ** level
    x, w = _leggauss(order)
    edges = np.linspace(lo, hi, pieces + 1)
    s_nodes, s_w = _panel_nodes(0.0, 1.0, pieces, order)
    combo: Optional[np.ndarray] = None
    for k in range(pieces):
        half = 0.5 * (edges[k + 1] - edges[k])
        v_nodes = 0.5 * (edges[k] + edges[k + 1]) + half * x
        v_w = w * half
        g = f_high(v_nodes)
        u_grid = lo + s_nodes[:, None] * (v_nodes[None, :] - lo)
        f = f_low(u_grid)
        fw = np.tensordot(s_w, f, axes=(0, 1))
        part = _combine(fw, g, (v_nodes - lo) * v_w)
        combo = part if combo is None else combo + part
    return combo


# ---------------------------------------------------------------------------
# The rotation loop and its reduced evaluation
# ---------------------------------------------------------------------------


def reduced_gramain_oracle(
    knot: MorseKnot, max_degree: int = 3, quad: Optional[QuadratureConfig] = None
) -> NumericVector:
    """The one-cocycle integral of the rotation loop, reduced analytically.

    For the rigid rotation ``z -> z e^{i phi}`` every ``d log`` difference
    form has parameter part exactly ``i`` and altitude parts independent of
    the angle, so the loop integral collapses to ``2 pi i`` times altitude
    integrals of the static knot:

    * degree 2: ``(2 i pi)^{-1} * sum_V (-1)^{down} D int (B_2 - B_1)``,
    * degree 3: ``(2 i pi)^{-2} * [ sum int_{u<v} (B_2 - B_1)(u) C(v) D
      + sum int_{u<v} C(u) (B_2 - B_1)(v) D' ]``,

    where ``B_1, B_2`` are the altitude parts of the V's two forms (tips in
    knot order), ``C`` the chord form, and ``D, D'`` the stacked diagrams.
    This bypasses the determinant assembly and the parameter quadrature of
    :func:`z1` and serves as its cross-check on rotation loops.
    """

    if max_degree > 3:
        raise NotImplementedError("the reduced rotation formula is implemented up to degree 3")
    quad = quad or QuadratureConfig()
    fe = _FrameEval(knot.frame())
    bands = fe.bands()
    out = NumericVector(max_degree)

    def vee_b_diff(bd: _BandData, segs, t):
        b, _ = _pair_forms(fe, segs, t, False)
        return b[bd.v_s, bd.v_b] - b[bd.v_s, bd.v_a]

    if max_degree >= 2:
        basis2, index2 = _v_basis(2)
        dim2 = len(basis2)
        p2 = _projection(2)
        total = np.zeros(dim2, dtype=complex)
        terr = np.zeros(dim2, dtype=float)
        for lo, hi in bands:
            segs = fe.band_segments(lo, hi)
            if len(segs) < 3:
                continue
            bd = _BandData(fe, segs, index2, 0)
            bi = np.full(len(bd.vees), -1, dtype=int)
            sg = np.zeros(len(bd.vees), dtype=float)
            for k in range(len(bd.vees)):
                s, a, b = bd.vee_pairing(k)
                bi[k], sg[k] = _pairing_entry([], [(s, a, b)], index2)
            scatter = _scatter(bi.reshape(-1, 1), sg.reshape(-1, 1), dim2)

            def evaluate(level: int) -> np.ndarray:
                nodes, w = _panel_nodes(lo, hi, 2 ** level, quad.order)
                return (vee_b_diff(bd, segs, nodes) @ w) @ scatter

            vec, est = _refine(evaluate, lambda d: np.abs(p2 @ d), quad.tol * 0.1, quad.max_refine)
            total += vec
            terr += est
        pref = 1.0 / TWO_I_PI
        terr = np.abs(p2) @ terr
        total = p2 @ total
        for dgm, c, e in zip(basis2, total, terr):
            out.coeffs[dgm] = complex(c) * pref
            out.err[dgm] = float(e) * abs(pref)

    if max_degree >= 3:
        basis3, index3 = _v_basis(3)
        dim3 = len(basis3)
        p3 = _projection(3)
        total = np.zeros(dim3, dtype=complex)
        terr = np.zeros(dim3, dtype=float)
        for iu in range(len(bands)):
            lo_u, hi_u = bands[iu]
            segs_u = fe.band_segments(lo_u, hi_u)
            for iv in range(iu, len(bands)):
                lo_v, hi_v = bands[iv]
                segs_v = fe.band_segments(lo_v, hi_v)
                same = iu == iv
                for vee_below in (True, False):
                    segs_vee = segs_u if vee_below else segs_v
                    segs_ch = segs_v if vee_below else segs_u
                    if len(segs_vee) < 3 or len(segs_ch) < 2:
                        continue
                    bd_vee = _BandData(fe, segs_vee, index3, 0 if vee_below else 1)
                    bd_ch = _BandData(fe, segs_ch, index3, 1 if vee_below else 0)
                    n_v, n_c = len(bd_vee.vees), len(bd_ch.chords)
                    bi = np.full((n_v, n_c), -1, dtype=int)
                    sg = np.zeros((n_v, n_c), dtype=float)
                    for k_v in range(n_v):
                        vee = bd_vee.vee_pairing(k_v)
                        for k_c in range(n_c):
                            idx, sign = _pairing_entry([bd_ch.chord_pairing(k_c)], [vee], index3)
                            bi[k_v, k_c] = idx
                            sg[k_v, k_c] = sign
                    if not (bi >= 0).any():
                        continue
                    scatter = _scatter(bi, sg, dim3)

                    def f_vee(t, bd=bd_vee, segs=segs_vee):
                        return vee_b_diff(bd, segs, t)

                    def f_ch(t, bd=bd_ch, segs=segs_ch):
                        b, _ = _pair_forms(fe, segs, t, False)
                        return b[bd.c_p, bd.c_q]

                    if same:

                        def evaluate(level: int) -> np.ndarray:
                            if vee_below:
                                combo = _generic_triangle(f_vee, f_ch, lo_u, hi_u, level, quad.order)
                            else:
                                combo = _generic_triangle(f_ch, f_vee, lo_u, hi_u, level, quad.order)
                                combo = combo.reshape(n_c, n_v).T.ravel()
                            return combo @ scatter

                    else:

                        def evaluate(level: int) -> np.ndarray:
                            nodes_u, w_u = _panel_nodes(lo_u, hi_u, 2 ** level, quad.order)
                            nodes_v, w_v = _panel_nodes(lo_v, hi_v, 2 ** level, quad.order)
                            if vee_below:
                                vv = f_vee(nodes_u) @ w_u
                                cc = f_ch(nodes_v) @ w_v
                            else:
                                cc = f_ch(nodes_u) @ w_u
                                vv = f_vee(nodes_v) @ w_v
                            return np.outer(vv, cc).ravel() @ scatter

                    vec, est = _refine(
                        evaluate, lambda d: np.abs(p3 @ d), quad.tol * 0.05, quad.max_refine
                    )
                    total += vec
                    terr += est
        pref = TWO_I_PI ** (-2)
        terr = np.abs(p3) @ terr
        total = p3 @ total
        for dgm, c, e in zip(basis3, total, terr):
            out.coeffs[dgm] = complex(c) * pref
            out.err[dgm] = float(e) * abs(pref)
    return out
