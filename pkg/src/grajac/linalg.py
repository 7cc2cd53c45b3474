"""Exact integer matrices: Smith normal form, determinants, minors.

Everything here works on Python ``int`` so nothing overflows; entries of
the unimodular transforms may grow but stay exact.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import MatrixFormatError, MinorEnumerationTooLarge, NotSquare, SingularMatrix

MINOR_ENUMERATION_LIMIT = 8


class IntegerMatrix:
    """Immutable dense matrix of arbitrary-precision integers."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Iterable[Iterable[int]], cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise MatrixFormatError("ragged matrix rows")
        self.rows = len(data)
        self.cols = cols
        self._data = data

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "IntegerMatrix":
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def diagonal_matrix(cls, diag: Sequence[int], rows=None, cols=None) -> "IntegerMatrix":
        rows = len(diag) if rows is None else rows
        cols = rows if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls(out, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def diagonal(self) -> list[int]:
        return [self._data[i][i] for i in range(min(self.rows, self.cols))]

    def is_diagonal(self) -> bool:
        return all(
            x == 0 for i, r in enumerate(self._data) for j, x in enumerate(r) if i != j
        )

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(zip(*self._data), self.rows) if self.rows else IntegerMatrix.zeros(self.cols, 0)

    @property
    def T(self) -> "IntegerMatrix":
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntegerMatrix":
        return IntegerMatrix([[self._data[i][j] for j in cols] for i in rows], len(cols))

    def minor_matrix(self, i: int, j: int) -> "IntegerMatrix":
        """Drop row ``i`` and column ``j``."""
        return self.submatrix(
            [r for r in range(self.rows) if r != i], [c for c in range(self.cols) if c != j]
        )

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            if self.cols != other.rows:
                raise MatrixFormatError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = list(zip(*other._data)) if other.rows else [()] * other.cols
            return IntegerMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self._data],
                other.cols,
            )
        vec = list(other)
        if len(vec) != self.cols:
            raise MatrixFormatError("vector length mismatch")
        return [sum(a * b for a, b in zip(r, vec)) for r in self._data]

    def __neg__(self):
        return IntegerMatrix([[-x for x in r] for r in self._data], self.cols)

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.cols, self._data))

    def __repr__(self):
        return f"IntegerMatrix({self.tolist()!r})"

    def __str__(self):
        if not self.rows:
            return "[]"
        width = max(len(str(x)) for r in self._data for x in r) if self.cols else 0
        return "\n".join("[" + " ".join(str(x).rjust(width) for x in r) + "]" for r in self._data)


def as_matrix(m) -> IntegerMatrix:
    return m if isinstance(m, IntegerMatrix) else IntegerMatrix(m)


def transpose(m) -> IntegerMatrix:
    return as_matrix(m).transpose()


# --- Smith normal form ----------------------------------------------------


@dataclass(frozen=True)
class SnfResult:
    """``d == p @ m @ q`` with ``p``, ``q`` unimodular."""

    d: IntegerMatrix
    p: IntegerMatrix
    q: IntegerMatrix

    @property
    def diagonal(self) -> list[int]:
        return self.d.diagonal()


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


class _Reducer:
    """Mutable working state for the elimination; ``p``/``q`` may be None."""

    def __init__(self, m: IntegerMatrix, track: bool):
        self.a = m.tolist()
        self.r, self.c = m.shape
        self.p = IntegerMatrix.identity(self.r).tolist() if track else None
        self.q = IntegerMatrix.identity(self.c).tolist() if track else None

    # row operations act on a and p, column operations on a and q

    def swap_rows(self, i, j):
        if i != j:
            self.a[i], self.a[j] = self.a[j], self.a[i]
            if self.p is not None:
                self.p[i], self.p[j] = self.p[j], self.p[i]

    def swap_cols(self, i, j):
        if i != j:
            for row in self.a:
                row[i], row[j] = row[j], row[i]
            if self.q is not None:
                for row in self.q:
                    row[i], row[j] = row[j], row[i]

    def add_row(self, dst, src, f):
        """row[dst] += f * row[src]"""
        for mat in (self.a, self.p):
            if mat is None:
                continue
            rd, rs = mat[dst], mat[src]
            for k, x in enumerate(rs):
                if x:
                    rd[k] += f * x

    def add_col(self, dst, src, f):
        """col[dst] += f * col[src]"""
        for mat in (self.a, self.q):
            if mat is None:
                continue
            for row in mat:
                x = row[src]
                if x:
                    row[dst] += f * x

    def negate_row(self, i):
        for mat in (self.a, self.p):
            if mat is not None:
                mat[i] = [-x for x in mat[i]]

    def combine_rows(self, i, j, w, x, y, z):
        """(row_i, row_j) <- (w*row_i + x*row_j, y*row_i + z*row_j)"""
        for mat in (self.a, self.p):
            if mat is None:
                continue
            ri, rj = mat[i], mat[j]
            mat[i] = [w * u + x * v for u, v in zip(ri, rj)]
            mat[j] = [y * u + z * v for u, v in zip(ri, rj)]

    def combine_cols(self, i, j, w, x, y, z):
        """(col_i, col_j) <- (w*col_i + x*col_j, y*col_i + z*col_j)"""
        for mat in (self.a, self.q):
            if mat is None:
                continue
            for row in mat:
                u, v = row[i], row[j]
                row[i] = w * u + x * v
                row[j] = y * u + z * v

    def pivot(self, t):
        """Smallest nonzero |entry| in a[t:, t:], first in row-major order."""
        best = None
        for i in range(t, self.r):
            row = self.a[i]
            for j in range(t, self.c):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        return best
        return best

    def diagonalize(self) -> int:
        """Reduce to diagonal form; return the number of nonzero pivots."""
        a = self.a
        t = 0
        while t < min(self.r, self.c):
            best = self.pivot(t)
            if best is None:
                break
            _, i, j = best
            self.swap_rows(t, i)
            self.swap_cols(t, j)
            piv = a[t][t]
            clean = True
            for i in range(t + 1, self.r):
                if a[i][t]:
                    self.add_row(i, t, -(a[i][t] // piv))
                    clean = clean and not a[i][t]
            for j in range(t + 1, self.c):
                if a[t][j]:
                    self.add_col(j, t, -(a[t][j] // piv))
                    clean = clean and not a[t][j]
            if clean:
                t += 1
        return t

    def repair_chain(self, k):
        """Make d_0 | d_1 | ... | d_{k-1} via the 2x2 gcd/lcm transformation."""
        a = self.a
        for i in range(k):
            for j in range(i + 1, k):
                x, y = a[i][i], a[j][j]
                if y % x == 0:
                    continue
                g, s, t = _egcd(x, y)
                # [[s, t], [-y/g, x/g]] diag(x, y) [[1, -t*y/g], [1, s*x/g]] = diag(g, lcm)
                self.combine_rows(i, j, s, t, -(y // g), x // g)
                self.combine_cols(i, j, 1, 1, -(t * y // g), s * x // g)


def _reduce(m, track: bool) -> _Reducer:
    red = _Reducer(as_matrix(m), track)
    k = red.diagonalize()
    for i in range(k):
        if red.a[i][i] < 0:
            red.negate_row(i)
    red.repair_chain(k)
    return red


def smith_normal_form(m) -> SnfResult:
    """Smith normal form with unimodular transforms ``p``, ``q``."""
    m = as_matrix(m)
    red = _reduce(m, track=True)
    return SnfResult(
        IntegerMatrix(red.a, m.cols),
        IntegerMatrix(red.p, m.rows),
        IntegerMatrix(red.q, m.cols),
    )


def snf_diagonal(m) -> list[int]:
    """Diagonal of the Smith normal form, without computing transforms."""
    red = _reduce(m, track=False)
    return [red.a[i][i] for i in range(min(red.r, red.c))]


def rank(m) -> int:
    return sum(1 for d in snf_diagonal(m) if d)


# --- determinants and minors ---------------------------------------------


def determinant(m) -> int:
    """Fraction-free (Bareiss) elimination."""
    m = as_matrix(m)
    if not m.is_square:
        raise NotSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def determinantal_divisor(m, k: int) -> int:
    """gcd of all k x k minors, by exhaustive enumeration."""
    m = as_matrix(m)
    if k <= 0:
        return 1
    if k > min(m.rows, m.cols):
        return 0
    if min(m.rows, m.cols) > MINOR_ENUMERATION_LIMIT:
        raise MinorEnumerationTooLarge(
            f"minor enumeration is limited to min(rows, cols) <= {MINOR_ENUMERATION_LIMIT}"
        )
    g = 0
    for rs in combinations(range(m.rows), k):
        for cs in combinations(range(m.cols), k):
            g = math.gcd(g, determinant(m.submatrix(rs, cs)))
            if g == 1:
                return 1
    return g


def solve_exact(m, b: Sequence[int]) -> list[Fraction]:
    """Unique rational solution of ``m x = b`` (Gauss-Jordan over Q)."""
    m = as_matrix(m)
    if not m.is_square:
        raise NotSquare(f"solve needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    if len(b) != n:
        raise MatrixFormatError("right-hand side length mismatch")
    a = [[Fraction(x) for x in m.row(i)] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]


# --- JSON -----------------------------------------------------------------

_INT64 = 2**63


def _encode_int(x: int):
    return x if -_INT64 <= x < _INT64 else str(x)


def matrix_to_json(m: IntegerMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[_encode_int(x) for x in r] for r in m.tolist()],
    }


def matrix_from_json(obj) -> IntegerMatrix:
    try:
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        if len(entries) != rows:
            raise MatrixFormatError(f"expected {rows} rows, found {len(entries)}")
        parsed = []
        for r in entries:
            if len(r) != cols:
                raise MatrixFormatError(f"expected {cols} columns, found {len(r)}")
            row = []
            for x in r:
                if isinstance(x, bool) or not isinstance(x, (int, str)):
                    raise MatrixFormatError(f"entry {x!r} is not an integer")
                row.append(int(x))
            parsed.append(row)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MatrixFormatError):
            raise
        raise MatrixFormatError(f"malformed matrix JSON: {exc}") from None
    return IntegerMatrix(parsed, cols)


def loads_matrix(text: str) -> IntegerMatrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from None
    return matrix_from_json(obj)


def dumps_matrix(m: IntegerMatrix) -> str:
    return json.dumps(matrix_to_json(m))
