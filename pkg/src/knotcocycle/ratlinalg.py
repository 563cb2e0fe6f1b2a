"""Exact sparse linear algebra over the rationals.

Matrices store sparse rows (dicts column -> Fraction).  All eliminations are
exact Gaussian eliminations with deterministic pivoting (columns processed
left to right, first available row wins), so ranks, kernels and derived rows
are reproducible byte for byte.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

__all__ = [
    "Echelon",
    "RatMatrix",
    "eliminate_left",
    "kernel_basis",
    "matrix_from_json",
    "matrix_to_json",
    "primitive_integer",
    "rank",
    "row_space_contains",
    "row_space_equal",
    "solve",
    "solve_any",
    "transpose_kernel_basis",
]

Vector = Tuple[Fraction, ...]


def _frac(x: Any) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RatMatrix:
    """A rational matrix with sparse rows."""

    __slots__ = ("n_rows", "n_cols", "rows")

    def __init__(self, n_rows: int, n_cols: int, rows: Optional[List[Dict[int, Fraction]]] = None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        if rows is None:
            rows = [dict() for _ in range(n_rows)]
        if len(rows) != n_rows:
            raise ValueError("row count mismatch")
        self.rows = rows

    # -- construction -------------------------------------------------------

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[Any]], n_cols: Optional[int] = None) -> "RatMatrix":
        dense = [list(r) for r in dense]
        if n_cols is None:
            n_cols = len(dense[0]) if dense else 0
        rows = []
        for r in dense:
            if len(r) != n_cols:
                raise ValueError("ragged dense matrix")
            rows.append({j: _frac(v) for j, v in enumerate(r) if v != 0})
        return cls(len(dense), n_cols, rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, Any]], n_cols: int) -> "RatMatrix":
        clean = []
        for row in rows:
            clean.append({int(c): _frac(v) for c, v in row.items() if v != 0})
            if clean[-1] and (min(clean[-1]) < 0 or max(clean[-1]) >= n_cols):
                raise ValueError("column index out of range")
        return cls(len(clean), n_cols, clean)

    # -- access -------------------------------------------------------------

    def entry(self, r: int, c: int) -> Fraction:
        return self.rows[r].get(c, Fraction(0))

    def set(self, r: int, c: int, val: Any) -> None:
        val = _frac(val)
        if val == 0:
            self.rows[r].pop(c, None)
        else:
            self.rows[r][c] = val

    def to_dense(self) -> List[List[Fraction]]:
        return [[self.entry(r, c) for c in range(self.n_cols)] for r in range(self.n_rows)]

    def transpose(self) -> "RatMatrix":
        out = RatMatrix(self.n_cols, self.n_rows)
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                out.rows[c][r] = v
        return out

    def stacked(self, other: "RatMatrix") -> "RatMatrix":
        if other.n_cols != self.n_cols:
            raise ValueError("column count mismatch")
        rows = [dict(r) for r in self.rows] + [dict(r) for r in other.rows]
        return RatMatrix(self.n_rows + other.n_rows, self.n_cols, rows)

    def columns_split(self, width: int) -> Tuple["RatMatrix", "RatMatrix"]:
        if not 0 <= width <= self.n_cols:
            raise ValueError("split width out of range")
        left = RatMatrix(self.n_rows, width)
        right = RatMatrix(self.n_rows, self.n_cols - width)
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                if c < width:
                    left.rows[r][c] = v
                else:
                    right.rows[r][c - width] = v
        return left, right

    def row_times(self, v: Sequence[Any]) -> List[Fraction]:
        """The product v^T . M for a coefficient vector over the rows."""

        if len(v) != self.n_rows:
            raise ValueError("vector length mismatch")
        out: Dict[int, Fraction] = {}
        for r, coeff in enumerate(v):
            coeff = _frac(coeff)
            if coeff == 0:
                continue
            for c, val in self.rows[r].items():
                out[c] = out.get(c, Fraction(0)) + coeff * val
        return [out.get(c, Fraction(0)) for c in range(self.n_cols)]

    def times_vector(self, v: Sequence[Any]) -> List[Fraction]:
        """The product M . v for a column vector."""

        if len(v) != self.n_cols:
            raise ValueError("vector length mismatch")
        vv = [_frac(x) for x in v]
        return [
            sum((val * vv[c] for c, val in row.items()), Fraction(0))
            for row in self.rows
        ]

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and self.rows == other.rows
        )

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"RatMatrix({self.n_rows}x{self.n_cols}, nnz={sum(len(r) for r in self.rows)})"


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------


def _rref(rows: List[Dict[int, Fraction]], n_cols: int) -> Tuple[List[Dict[int, Fraction]], List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""

    work = [dict(r) for r in rows]
    pivots: List[int] = []
    done: List[Dict[int, Fraction]] = []
    for col in range(n_cols):
        pivot_row = None
        for i, row in enumerate(work):
            if row.get(col):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        row = work.pop(pivot_row)
        inv = 1 / row[col]
        row = {c: v * inv for c, v in row.items()}
        for other in done:
            factor = other.get(col)
            if factor:
                for c, v in row.items():
                    new = other.get(c, Fraction(0)) - factor * v
                    if new == 0:
                        other.pop(c, None)
                    else:
                        other[c] = new
        remaining = []
        for other in work:
            factor = other.get(col)
            if factor:
                for c, v in row.items():
                    new = other.get(c, Fraction(0)) - factor * v
                    if new == 0:
                        other.pop(c, None)
                    else:
                        other[c] = new
            if other:
                remaining.append(other)
        work = remaining
        done.append(row)
        pivots.append(col)
        if not work:
            break
    return done, pivots


def rank(m: RatMatrix) -> int:
    return len(_rref(m.rows, m.n_cols)[1])


def _normalize_first_positive(vec: List[Fraction]) -> Vector:
    for x in vec:
        if x != 0:
            if x < 0:
                return tuple(-v for v in vec)
            break
    return tuple(vec)


def kernel_basis(m: RatMatrix) -> List[Vector]:
    """Basis of the right kernel {x : M x = 0}.

    One vector per free column of the reduced echelon form, ordered by free
    column, each scaled so its first nonzero coordinate is +1.
    """

    rows, pivots = _rref(m.rows, m.n_cols)
    pivot_set = set(pivots)
    basis: List[Vector] = []
    for free in range(m.n_cols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * m.n_cols
        vec[free] = Fraction(1)
        for row, pcol in zip(rows, pivots):
            coeff = row.get(free)
            if coeff:
                vec[pcol] = -coeff
        basis.append(_normalize_first_positive(vec))
    return basis


def transpose_kernel_basis(m: RatMatrix) -> List[Vector]:
    """Basis of the left kernel {v : v^T M = 0}."""

    return kernel_basis(m.transpose())


def row_space_contains(a: RatMatrix, b: RatMatrix) -> bool:
    """True when every row of ``b`` lies in the row space of ``a``."""

    if a.n_cols != b.n_cols:
        raise ValueError("column count mismatch")
    return rank(a) == rank(a.stacked(b))


def row_space_equal(a: RatMatrix, b: RatMatrix) -> bool:
    """True when ``a`` and ``b`` have identical row spaces."""

    if a.n_cols != b.n_cols:
        raise ValueError("column count mismatch")
    ra, rb = rank(a), rank(b)
    return ra == rb == rank(a.stacked(b))


def eliminate_left(m: RatMatrix, left_width: int) -> RatMatrix:
    """Combine rows of ``m`` to zero out its left block.

    Returns the right-block images v^T . M_right of a basis {v} of the left
    block's transpose kernel; these are the relations derived by eliminating
    the left-block unknowns.
    """

    left, right = m.columns_split(left_width)
    combos = transpose_kernel_basis(left)
    rows = []
    for v in combos:
        dense = right.row_times(v)
        rows.append({c: val for c, val in enumerate(dense) if val != 0})
    return RatMatrix(len(rows), right.n_cols, rows)


def solve(g: RatMatrix, b_columns: Sequence[Sequence[Any]]) -> List[List[Fraction]]:
    """Solve G X = B exactly for square invertible G.

    ``b_columns`` is a list of right-hand-side columns; the result is the
    list of solution columns.
    """

    n = g.n_rows
    if g.n_cols != n:
        raise ValueError("solve expects a square matrix")
    k = len(b_columns)
    aug_rows = []
    for r in range(n):
        row = dict(g.rows[r])
        for j, col in enumerate(b_columns):
            v = _frac(col[r])
            if v != 0:
                row[n + j] = v
        aug_rows.append(row)
    rows, pivots = _rref(aug_rows, n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    # after full reduction each row is e_i | solution row
    sol_rows = [[Fraction(0)] * k for _ in range(n)]
    for row, pcol in zip(rows, pivots):
        for c, v in row.items():
            if c >= n:
                sol_rows[pcol][c - n] = v
    return [[sol_rows[r][j] for r in range(n)] for j in range(k)]


def solve_any(a: RatMatrix, b: Sequence[Any]) -> Optional[List[Fraction]]:
    """One exact solution of ``A x = b`` (free variables set to 0), or
    ``None`` when the system is inconsistent."""

    if len(b) != a.n_rows:
        raise ValueError("right-hand side length mismatch")
    aug_rows = []
    for r in range(a.n_rows):
        row = dict(a.rows[r])
        v = _frac(b[r])
        if v != 0:
            row[a.n_cols] = v
        aug_rows.append(row)
    rows, pivots = _rref(aug_rows, a.n_cols + 1)
    if a.n_cols in pivots:
        return None
    x = [Fraction(0)] * a.n_cols
    for row, pcol in zip(rows, pivots):
        x[pcol] = row.get(a.n_cols, Fraction(0))
    return x


class Echelon:
    """Frozen reduced echelon form of a matrix, for repeated row-space
    membership tests without re-elimination."""

    def __init__(self, m: RatMatrix):
        self.n_cols = m.n_cols
        self._rows, self._pivots = _rref(m.rows, m.n_cols)
        self.rank = len(self._pivots)

    def reduce(self, vec: Mapping[int, Any]) -> Dict[int, Fraction]:
        """The residue of ``vec`` after reduction against the echelon rows."""

        work = {int(c): _frac(v) for c, v in vec.items() if v != 0}
        for row, pcol in zip(self._rows, self._pivots):
            factor = work.get(pcol)
            if not factor:
                continue
            for c, v in row.items():
                new = work.get(c, Fraction(0)) - factor * v
                if new == 0:
                    work.pop(c, None)
                else:
                    work[c] = new
        return work

    def contains(self, vec: Mapping[int, Any]) -> bool:
        return not self.reduce(vec)

    def matrix(self) -> RatMatrix:
        return RatMatrix(len(self._rows), self.n_cols, [dict(r) for r in self._rows])


def primitive_integer(vec: Sequence[Any]) -> Vector:
    """Scale a rational vector to a primitive integer vector, first nonzero
    coordinate positive."""

    fracs = [_frac(x) for x in vec]
    nonzero = [x for x in fracs if x != 0]
    if not nonzero:
        return tuple(fracs)
    from math import gcd

    denom_lcm = 1
    for x in nonzero:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [x * denom_lcm for x in fracs]
    g = 0
    for x in ints:
        g = gcd(g, int(x))
    scaled = [Fraction(int(x) // g) for x in ints]
    return _normalize_first_positive(scaled)


# ---------------------------------------------------------------------------
# JSON serialization (0-based indices, rationals as "p/q" strings)
# ---------------------------------------------------------------------------


def matrix_to_json(m: RatMatrix) -> dict:
    entries = []
    for r in range(m.n_rows):
        for c in sorted(m.rows[r]):
            entries.append([r, c, str(m.rows[r][c])])
    return {"rows": m.n_rows, "cols": m.n_cols, "entries": entries}


def matrix_from_json(data: Mapping[str, Any]) -> RatMatrix:
    m = RatMatrix(int(data["rows"]), int(data["cols"]))
    for r, c, v in data["entries"]:
        r, c = int(r), int(c)
        if not (0 <= r < m.n_rows and 0 <= c < m.n_cols):
            raise ValueError(f"entry ({r},{c}) out of range")
        if m.rows[r].get(c) is not None:
            raise ValueError(f"duplicate entry at ({r},{c})")
        m.set(r, c, Fraction(str(v)))
    return m
