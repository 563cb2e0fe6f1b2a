"""Piecewise-linear Morse knots and one-parameter families of them.

A *Morse knot* here is a long knot: a piecewise-linear embedded curve in
``R^3`` whose first and last vertices lie on the vertical axis at the global
minimal/maximal altitude, implicitly extended by straight vertical tails.
The altitude is the third coordinate ``t``; the other two are packed into a
complex coordinate ``z = x + iy``.  Morse means: no horizontal segments, and
the interior vertices where the altitude direction flips (the critical
points) have pairwise distinct altitudes.

A *path of knots* is either a rigid rotation ``z -> z * exp(i*phi)`` of a
base knot with ``phi`` running over ``[0, 2*pi]`` (the loop swept out by
spinning the knot once about the vertical axis), or a family obtained by
linear interpolation of the vertices of a list of keyframe knots.  Families
must preserve the number of critical points; degenerations (a vanishing
segment, a collision of critical values, a self-intersection at some
intermediate parameter) are rejected.
"""

from __future__ import annotations

import cmath
import json
import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, List, Mapping, Optional, Sequence, Tuple

__all__ = [
    "MorseKnot",
    "KnotPath",
    "PathFrame",
    "StrandPoint",
    "NotMorseError",
    "SelfIntersectionError",
    "PerestroikaError",
    "validate_morse",
    "gramain",
    "knot_to_json",
    "knot_from_json",
    "path_to_json",
    "path_from_json",
    "load_knot_fixture",
]

#: tolerance for "exactly zero" geometric quantities (axis offsets, ...)
_AXIS_TOL = 1e-9
#: minimal allowed 3-d distance between non-adjacent segments
_EMBED_TOL = 1e-9
#: minimal allowed vertical extent of a segment
_FLAT_TOL = 1e-9


class NotMorseError(ValueError):
    """The curve violates a Morse-position requirement."""


class SelfIntersectionError(NotMorseError):
    """The curve is not embedded."""


class PerestroikaError(NotMorseError):
    """A path of knots degenerates at some intermediate parameter."""


# ---------------------------------------------------------------------------
# Knots
# ---------------------------------------------------------------------------


class MorseKnot:
    """A long piecewise-linear Morse knot.

    Parameters
    ----------
    vertices:
        Sequence of ``(x, y, t)`` triples in knot order.  The first and the
        last vertex must lie on the vertical axis (``x = y = 0``) and carry
        the global minimal resp. maximal altitude; the knot is implicitly
        extended by vertical tails below the first and above the last vertex.
    validate:
        Run :func:`validate_morse` (default).  Pass ``False`` only for
        intermediate knots that are validated separately.
    """

    __slots__ = ("vertices", "_criticals")

    def __init__(self, vertices: Sequence[Sequence[float]], validate: bool = True):
        self.vertices: Tuple[Tuple[float, float, float], ...] = tuple(
            (float(x), float(y), float(t)) for x, y, t in vertices
        )
        self._criticals: Optional[Tuple[float, ...]] = None
        if validate:
            validate_morse(self)

    # -- basic accessors ----------------------------------------------------

    @property
    def n_segments(self) -> int:
        return len(self.vertices) - 1

    def vertex_z(self, i: int) -> complex:
        x, y, _ = self.vertices[i]
        return complex(x, y)

    def vertex_t(self, i: int) -> float:
        return self.vertices[i][2]

    def critical_altitudes(self) -> Tuple[float, ...]:
        """Altitudes of the critical points, in increasing order."""

        if self._criticals is None:
            self._criticals = tuple(sorted(_critical_altitudes(self)))
        return self._criticals

    @property
    def critical_count(self) -> int:
        """The number ``c`` of critical points (maxima plus minima)."""

        return len(self.critical_altitudes())

    def vertex_altitudes(self) -> List[float]:
        """Sorted list of distinct vertex altitudes (band boundaries)."""

        return sorted({v[2] for v in self.vertices})

    def altitude_range(self) -> Tuple[float, float]:
        return self.vertices[0][2], self.vertices[-1][2]

    # -- derived knots ------------------------------------------------------

    def translated(self, dx: float = 0.0, dy: float = 0.0) -> "MorseKnot":
        """The same knot shifted horizontally.

        The endpoints leave the axis, so the result is only used as a
        keyframe inside larger constructions and is validated leniently.
        """

        verts = [(x + dx, y + dy, t) for x, y, t in self.vertices]
        knot = MorseKnot(verts, validate=False)
        _validate_geometry(knot, require_axis=False)
        return knot

    def frame(self) -> "PathFrame":
        """The knot viewed as a static frame (all velocities zero)."""

        return PathFrame(
            vertices_z=[self.vertex_z(i) for i in range(len(self.vertices))],
            vertices_t=[v[2] for v in self.vertices],
            velocities_z=[0j] * len(self.vertices),
            velocities_t=[0.0] * len(self.vertices),
        )

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, MorseKnot) and self.vertices == other.vertices

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"MorseKnot({len(self.vertices)} vertices, c={self.critical_count})"


def _critical_altitudes(knot: MorseKnot) -> List[float]:
    out: List[float] = []
    verts = knot.vertices
    for i in range(1, len(verts) - 1):
        before = verts[i][2] - verts[i - 1][2]
        after = verts[i + 1][2] - verts[i][2]
        if before * after < 0:
            out.append(verts[i][2])
    return out


def _seg_seg_distance(p0, p1, q0, q1) -> float:
    """Euclidean distance between 3-d segments ``p0p1`` and ``q0q1``."""

    def sub(a, b):
        return (a[0] - b[0], a[1] - b[1], a[2] - b[2])

    def dot(a, b):
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]

    d1 = sub(p1, p0)
    d2 = sub(q1, q0)
    r = sub(p0, q0)
    a, e, f = dot(d1, d1), dot(d2, d2), dot(d2, r)
    c, b = dot(d1, r), dot(d1, d2)
    denom = a * e - b * b
    if denom > 1e-30:
        s = min(1.0, max(0.0, (b * f - c * e) / denom))
    else:  # parallel
        s = 0.0
    tt = (b * s + f) / e if e > 1e-30 else 0.0
    if tt < 0.0:
        tt = 0.0
        s = min(1.0, max(0.0, -c / a)) if a > 1e-30 else 0.0
    elif tt > 1.0:
        tt = 1.0
        s = min(1.0, max(0.0, (b - c) / a)) if a > 1e-30 else 0.0
    closest1 = (p0[0] + s * d1[0], p0[1] + s * d1[1], p0[2] + s * d1[2])
    closest2 = (q0[0] + tt * d2[0], q0[1] + tt * d2[1], q0[2] + tt * d2[2])
    diff = sub(closest1, closest2)
    return math.sqrt(dot(diff, diff))


def _validate_geometry(knot: MorseKnot, require_axis: bool = True) -> None:
    verts = knot.vertices
    if len(verts) < 2:
        raise NotMorseError("a knot needs at least two vertices")

    # vertical tails: endpoints on the axis at the global extremes
    t_first, t_last = verts[0][2], verts[-1][2]
    if require_axis:
        for idx in (0, len(verts) - 1):
            x, y, _ = verts[idx]
            if abs(x) > _AXIS_TOL or abs(y) > _AXIS_TOL:
                raise NotMorseError(f"endpoint vertex {idx} must lie on the vertical axis")
    if t_first >= t_last:
        raise NotMorseError("the first vertex must sit below the last one")
    for i, v in enumerate(verts[1:-1], start=1):
        if not (t_first < v[2] < t_last):
            raise NotMorseError(
                f"vertex {i} leaves the altitude range spanned by the endpoints"
            )

    # no horizontal (or vanishing) segments
    for i in range(len(verts) - 1):
        if abs(verts[i + 1][2] - verts[i][2]) < _FLAT_TOL:
            raise NotMorseError(f"segment {i} is horizontal")

    # embeddedness: non-adjacent segments stay apart, adjacent ones only
    # share the common vertex
    n = len(verts) - 1
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1:
                v = verts[j]
                d1 = tuple(verts[i][k] - v[k] for k in range(3))
                d2 = tuple(verts[j + 1][k] - v[k] for k in range(3))
                cross = (
                    d1[1] * d2[2] - d1[2] * d2[1],
                    d1[2] * d2[0] - d1[0] * d2[2],
                    d1[0] * d2[1] - d1[1] * d2[0],
                )
                dot12 = sum(d1[k] * d2[k] for k in range(3))
                if all(abs(cmp) < 1e-12 for cmp in cross) and dot12 > 0:
                    raise SelfIntersectionError(
                        f"segments {i} and {j} double back along the same line"
                    )
                continue
            dist = _seg_seg_distance(verts[i], verts[i + 1], verts[j], verts[j + 1])
            if dist < _EMBED_TOL:
                raise SelfIntersectionError(f"segments {i} and {j} intersect")


def validate_morse(knot: MorseKnot) -> Tuple[float, ...]:
    """Check Morse position and return the ordered critical altitudes.

    Raises
    ------
    NotMorseError
        Horizontal segment, endpoint off the axis, interior vertex outside
        the endpoint altitude range, or colliding critical values.
    SelfIntersectionError
        Two segments intersect (the curve is not embedded).
    """

    _validate_geometry(knot, require_axis=True)
    criticals = sorted(_critical_altitudes(knot))
    for a, b in zip(criticals, criticals[1:]):
        if b - a < 1e-9:
            raise NotMorseError("two critical points share the same altitude")
    if len(criticals) % 2 != 0:
        raise NotMorseError("a long knot has an even number of critical points")
    knot._criticals = tuple(criticals)
    return knot._criticals


# ---------------------------------------------------------------------------
# Strand geometry at a fixed parameter
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StrandPoint:
    """One intersection of the knot with a horizontal plane.

    Attributes
    ----------
    z, dz_dt, dz_dphi:
        Position and its analytic derivatives along the altitude and along
        the deformation parameter.
    direction:
        ``+1`` if the knot crosses the plane upwards, ``-1`` downwards.
    segment:
        Index of the supporting segment; strands are listed in knot order,
        which is exactly increasing segment index.
    """

    z: complex
    dz_dt: complex
    dz_dphi: complex
    direction: int
    segment: int


class PathFrame:
    """A knot together with the vertex velocities at one path parameter."""

    __slots__ = ("vertices_z", "vertices_t", "velocities_z", "velocities_t")

    def __init__(self, vertices_z, vertices_t, velocities_z, velocities_t):
        self.vertices_z: List[complex] = list(vertices_z)
        self.vertices_t: List[float] = list(vertices_t)
        self.velocities_z: List[complex] = list(velocities_z)
        self.velocities_t: List[float] = list(velocities_t)

    def knot(self, validate: bool = False) -> MorseKnot:
        verts = [
            (z.real, z.imag, t) for z, t in zip(self.vertices_z, self.vertices_t)
        ]
        return MorseKnot(verts, validate=validate)

    def vertex_altitudes(self) -> List[float]:
        return sorted(set(self.vertices_t))

    def altitude_range(self) -> Tuple[float, float]:
        return min(self.vertices_t), max(self.vertices_t)

    def strands(self, t: float) -> List[StrandPoint]:
        """All strand points at altitude ``t``, in knot order.

        ``t`` must avoid the vertex altitudes (quadrature nodes always do,
        because integration cells are split there).
        """

        out: List[StrandPoint] = []
        zs, ts = self.vertices_z, self.vertices_t
        vzs, vts = self.velocities_z, self.velocities_t
        for i in range(len(zs) - 1):
            t0, t1 = ts[i], ts[i + 1]
            lo, hi = (t0, t1) if t0 < t1 else (t1, t0)
            if not (lo < t < hi):
                continue
            h = t1 - t0
            r = (t - t0) / h
            dz = zs[i + 1] - zs[i]
            z = zs[i] + r * dz
            dz_dt = dz / h
            # r depends on phi through the vertex altitudes
            dr = -(vts[i] * (1.0 - r) + vts[i + 1] * r) / h
            dz_dphi = vzs[i] + dr * dz + r * (vzs[i + 1] - vzs[i])
            out.append(
                StrandPoint(
                    z=z,
                    dz_dt=dz_dt,
                    dz_dphi=dz_dphi,
                    direction=1 if h > 0 else -1,
                    segment=i,
                )
            )
        return out


# ---------------------------------------------------------------------------
# Paths of knots
# ---------------------------------------------------------------------------


class KnotPath:
    """A one-parameter family of Morse knots.

    Two constructions are supported:

    * ``KnotPath.rotation(knot)`` — the loop ``z -> z * exp(i*phi)``,
      ``phi`` in ``[0, 2*pi]``, obtained by rotating the knot once about the
      vertical axis.  A rigid motion, so every intermediate knot is
      automatically Morse.
    * ``KnotPath.keyframes(frames, phi_range)`` — vertexwise linear
      interpolation through a list of knots with equal vertex counts.  The
      family is sampled on a parameter grid and every sample must be a Morse
      knot with the same number of critical points as the first frame;
      otherwise a :class:`PerestroikaError` is raised.
    """

    __slots__ = ("kind", "base", "frames", "phi_range")

    #: samples per keyframe interval used to screen for degenerations
    VALIDATION_SAMPLES = 17

    def __init__(self, kind, base=None, frames=None, phi_range=(0.0, 1.0), validate=True):
        self.kind = kind
        self.base: Optional[MorseKnot] = base
        self.frames: Optional[List[MorseKnot]] = frames
        self.phi_range: Tuple[float, float] = (float(phi_range[0]), float(phi_range[1]))
        if validate:
            self.validate()

    # -- constructors --------------------------------------------------------

    @classmethod
    def rotation(cls, knot: MorseKnot) -> "KnotPath":
        return cls("rotation", base=knot, phi_range=(0.0, 2.0 * math.pi))

    @classmethod
    def keyframes(cls, frames: Sequence[MorseKnot], phi_range: Sequence[float]) -> "KnotPath":
        return cls("keyframes", frames=list(frames), phi_range=tuple(phi_range))

    # -- validation ----------------------------------------------------------

    def validate(self) -> None:
        if self.kind == "rotation":
            if self.base is None:
                raise ValueError("rotation path needs a base knot")
            validate_morse(self.base)
            return
        if self.kind != "keyframes":
            raise ValueError(f"unknown path kind {self.kind!r}")
        frames = self.frames or []
        if len(frames) < 2:
            raise ValueError("a keyframe path needs at least two frames")
        if self.phi_range[0] >= self.phi_range[1]:
            raise ValueError("empty parameter range")
        counts = {len(f.vertices) for f in frames}
        if len(counts) != 1:
            raise ValueError("keyframes must agree on the number of vertices")
        c_counts = set()
        for f in frames:
            _validate_geometry(f, require_axis=False)
            c_counts.add(len(_critical_altitudes(f)))
        if len(c_counts) != 1:
            raise PerestroikaError(
                "keyframes disagree on the number of critical points"
            )
        c_ref = c_counts.pop()
        a, b = self.phi_range
        n_int = len(frames) - 1
        for k in range(n_int * self.VALIDATION_SAMPLES + 1):
            phi = a + (b - a) * k / (n_int * self.VALIDATION_SAMPLES)
            knot = self.knot_at(phi)
            try:
                _validate_geometry(knot, require_axis=False)
            except NotMorseError as exc:
                raise PerestroikaError(
                    f"family degenerates near parameter {phi:.6g}: {exc}"
                ) from exc
            criticals = _critical_altitudes(knot)
            if len(criticals) != c_ref:
                raise PerestroikaError(
                    f"critical-point count jumps at parameter {phi:.6g}"
                )
            for u, v in zip(sorted(criticals), sorted(criticals)[1:]):
                if v - u < 1e-9:
                    raise PerestroikaError(
                        f"critical values collide near parameter {phi:.6g}"
                    )

    # -- sampling ------------------------------------------------------------

    def breakpoints(self) -> List[float]:
        """Parameter values where the family changes analytic form."""

        a, b = self.phi_range
        if self.kind == "rotation" or not self.frames:
            return [a, b]
        n_int = len(self.frames) - 1
        return [a + (b - a) * k / n_int for k in range(n_int + 1)]

    def _interval(self, phi: float) -> Tuple[int, float, float]:
        a, b = self.phi_range
        n_int = len(self.frames) - 1
        width = (b - a) / n_int
        idx = min(n_int - 1, max(0, int((phi - a) / width)))
        local = (phi - (a + idx * width)) / width
        return idx, local, width

    def knot_at(self, phi: float) -> MorseKnot:
        if self.kind == "rotation":
            rot = cmath.exp(1j * phi)
            verts = []
            for x, y, t in self.base.vertices:
                z = complex(x, y) * rot
                verts.append((z.real, z.imag, t))
            return MorseKnot(verts, validate=False)
        idx, local, _ = self._interval(phi)
        f0, f1 = self.frames[idx], self.frames[idx + 1]
        verts = [
            (
                (1 - local) * p[0] + local * q[0],
                (1 - local) * p[1] + local * q[1],
                (1 - local) * p[2] + local * q[2],
            )
            for p, q in zip(f0.vertices, f1.vertices)
        ]
        return MorseKnot(verts, validate=False)

    def frame_at(self, phi: float) -> PathFrame:
        if self.kind == "rotation":
            rot = cmath.exp(1j * phi)
            zs = [self.base.vertex_z(i) * rot for i in range(len(self.base.vertices))]
            return PathFrame(
                vertices_z=zs,
                vertices_t=[v[2] for v in self.base.vertices],
                velocities_z=[1j * z for z in zs],
                velocities_t=[0.0] * len(zs),
            )
        idx, local, width = self._interval(phi)
        f0, f1 = self.frames[idx], self.frames[idx + 1]
        zs, ts, vzs, vts = [], [], [], []
        for p, q in zip(f0.vertices, f1.vertices):
            z0, z1 = complex(p[0], p[1]), complex(q[0], q[1])
            zs.append((1 - local) * z0 + local * z1)
            ts.append((1 - local) * p[2] + local * q[2])
            vzs.append((z1 - z0) / width)
            vts.append((q[2] - p[2]) / width)
        return PathFrame(zs, ts, vzs, vts)

    def endpoints(self) -> Tuple[MorseKnot, MorseKnot]:
        a, b = self.phi_range
        return self.knot_at(a), self.knot_at(b)

    def reversed(self) -> "KnotPath":
        if self.kind != "keyframes":
            raise ValueError("only keyframe paths can be reversed")
        return KnotPath.keyframes(list(reversed(self.frames)), self.phi_range)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        if self.kind == "rotation":
            return f"KnotPath(rotation of {self.base!r})"
        return f"KnotPath({len(self.frames)} keyframes on {self.phi_range})"


def gramain(knot: MorseKnot) -> KnotPath:
    """The rotation loop of ``knot``: one full turn about the vertical axis."""

    return KnotPath.rotation(knot)


# ---------------------------------------------------------------------------
# JSON representations and shipped fixtures
# ---------------------------------------------------------------------------


def knot_to_json(knot: MorseKnot) -> dict:
    return {"type": "pl", "vertices": [list(v) for v in knot.vertices]}


def knot_from_json(data: Mapping[str, Any]) -> MorseKnot:
    if data.get("type") != "pl":
        raise ValueError(f"unsupported knot type {data.get('type')!r}")
    return MorseKnot(data["vertices"])


def path_to_json(path: KnotPath) -> dict:
    if path.kind == "rotation":
        return {"type": "rotation", "knot": knot_to_json(path.base)}
    return {
        "type": "keyframes",
        "frames": [knot_to_json(f) for f in path.frames],
        "range": list(path.phi_range),
    }


def path_from_json(data: Mapping[str, Any]) -> KnotPath:
    kind = data.get("type")
    if kind == "rotation":
        return KnotPath.rotation(knot_from_json(data["knot"]))
    if kind == "keyframes":
        frames = [
            MorseKnot(f["vertices"], validate=False) if f.get("type") == "pl" else knot_from_json(f)
            for f in data["frames"]
        ]
        return KnotPath.keyframes(frames, data["range"])
    raise ValueError(f"unsupported path type {kind!r}")


def _fixture_root(override: Optional[str] = None):
    if override is not None:
        return Path(override)
    env = os.environ.get("KNOTCOCYCLE_FIXTURES")
    if env:
        return Path(env)
    return resources.files("knotcocycle").joinpath("fixtures")


def load_knot_fixture(name: str, override: Optional[str] = None) -> MorseKnot:
    """Load one of the shipped knots: ``line``, ``hump``, ``trefoil_a``,
    ``trefoil_b`` (or any JSON file dropped into ``fixtures/knots``)."""

    node = _fixture_root(override).joinpath("knots").joinpath(f"{name}.json")
    return knot_from_json(json.loads(node.read_text()))
