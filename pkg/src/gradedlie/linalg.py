"""Exact rational sparse matrices and the linear algebra used by every engine.

A matrix is a mapping ``(row, col) -> Fraction`` with no explicit zeros;
iteration over entries is always in sorted ``(row, col)`` order, so every
derived object (echelon forms, kernel bases, solved coordinates) is
reproducible run to run.  All arithmetic is exact: values are
``fractions.Fraction`` throughout, reduced by construction, and no
floating-point path exists anywhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "RatMatrix",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "inverse",
    "dot",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


def dot(u: Sequence, v: Sequence) -> Fraction:
    """Exact dot product of two equal-length coefficient vectors."""
    if len(u) != len(v):
        raise ValueError("dot: length mismatch %d vs %d" % (len(u), len(v)))
    total = _ZERO
    for a, b in zip(u, v):
        if a and b:
            total += _frac(a) * _frac(b)
    return total


class RatMatrix:
    """Sparse matrix over the rationals.  Immutable after construction.

    Entries are held in a dict keyed by (row, col); zeros are never stored.
    All public accessors that enumerate entries do so in sorted key order.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[tuple[int, int], object] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        clean: dict[tuple[int, int], Fraction] = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ValueError("entry (%d,%d) outside %dx%d matrix"
                                     % (i, j, rows, cols))
                fv = _frac(v)
                if fv:
                    clean[(i, j)] = fv
        self.entries = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> RatMatrix:
        rows = len(data)
        cols = len(data[0]) if rows else 0
        ent = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    ent[(i, j)] = _frac(v)
        return cls(rows, cols, ent)

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls(n, n, {(i, i): _ONE for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols)

    @classmethod
    def vstack(cls, blocks: Sequence[RatMatrix]) -> RatMatrix:
        if not blocks:
            return cls(0, 0)
        cols = blocks[0].cols
        ent = {}
        off = 0
        for b in blocks:
            if b.cols != cols:
                raise ValueError("vstack: column count mismatch")
            for (i, j), v in b.entries.items():
                ent[(off + i, j)] = v
            off += b.rows
        return cls(off, cols, ent)

    @classmethod
    def hstack(cls, blocks: Sequence[RatMatrix]) -> RatMatrix:
        if not blocks:
            return cls(0, 0)
        rows = blocks[0].rows
        ent = {}
        off = 0
        for b in blocks:
            if b.rows != rows:
                raise ValueError("hstack: row count mismatch")
            for (i, j), v in b.entries.items():
                ent[(i, off + j)] = v
            off += b.cols
        return cls(rows, off, ent)

    # -- accessors ---------------------------------------------------------

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self.entries.get((i, j), _ZERO)

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        """Nonzero entries in sorted (row, col) order."""
        for key in sorted(self.entries):
            yield key, self.entries[key]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return tuple(self.entries.get((i, j), _ZERO) for j in range(self.cols))

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries.get((i, j), _ZERO) for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return (isinstance(other, RatMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    __hash__ = None

    def __repr__(self) -> str:
        return "RatMatrix(%d, %d, %d nonzero)" % (
            self.rows, self.cols, len(self.entries))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: RatMatrix) -> RatMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in +")
        ent = dict(self.entries)
        for k, v in other.entries.items():
            s = ent.get(k, _ZERO) + v
            if s:
                ent[k] = s
            else:
                ent.pop(k, None)
        return RatMatrix(self.rows, self.cols, ent)

    def __neg__(self) -> RatMatrix:
        return RatMatrix(self.rows, self.cols,
                         {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        return self + (-other)

    def scale(self, c) -> RatMatrix:
        fc = _frac(c)
        if not fc:
            return RatMatrix(self.rows, self.cols)
        return RatMatrix(self.rows, self.cols,
                         {k: fc * v for k, v in self.entries.items()})

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch in @: %dx%d @ %dx%d" % (
                self.rows, self.cols, other.rows, other.cols))
        # group the right factor by row once, then sweep the left entries
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, []).append((j, v))
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self.entries.items():
            hits = by_row.get(k)
            if not hits:
                continue
            for j, b in hits:
                key = (i, j)
                s = acc.get(key, _ZERO) + a * b
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return RatMatrix(self.rows, other.cols, acc)

    def mul_vec(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product, returning a dense tuple."""
        if len(v) != self.cols:
            raise ValueError("mul_vec: length %d != cols %d" % (len(v), self.cols))
        out = [_ZERO] * self.rows
        for (i, j), a in self.entries.items():
            x = v[j]
            if x:
                out[i] += a * _frac(x)
        return tuple(out)

    def transpose(self) -> RatMatrix:
        return RatMatrix(self.cols, self.rows,
                         {(j, i): v for (i, j), v in self.entries.items()})


# -- echelon forms and derived data ---------------------------------------


def _row_dicts(m: RatMatrix) -> list[dict[int, Fraction]]:
    rows: list[dict[int, Fraction]] = [dict() for _ in range(m.rows)]
    for (i, j), v in m.entries.items():
        rows[i][j] = v
    return rows


def _reduce(rows: list[dict[int, Fraction]], cols: int) -> list[int]:
    """In-place Gauss-Jordan reduction; returns the pivot column list.

    Pivot selection is deterministic: scan columns left to right, take the
    first not-yet-used row with a nonzero entry.  Rows are fully reduced
    (eliminated above and below, pivots scaled to 1), so the result is the
    unique RREF of the row space.
    """
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        sel = -1
        for i in range(r, nrows):
            if c in rows[i]:
                sel = i
                break
        if sel < 0:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        piv = rows[r]
        pc = piv[c]
        if pc != 1:
            inv = _ONE / pc
            for k in piv:
                piv[k] *= inv
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row.get(c)
            if f is None:
                continue
            for k, v in piv.items():
                s = row.get(k, _ZERO) - f * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row-echelon form and the (strictly increasing) pivot columns."""
    rows = _row_dicts(m)
    pivots = _reduce(rows, m.cols)
    ent = {}
    for i, row in enumerate(rows):
        for j, v in row.items():
            ent[(i, j)] = v
    return RatMatrix(m.rows, m.cols, ent), pivots


def rank(m: RatMatrix) -> int:
    rows = _row_dicts(m)
    return len(_reduce(rows, m.cols))


def kernel_basis(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space {v : M v = 0}.

    One vector per free column, in increasing free-column order, with a 1 in
    the free coordinate — the standard back-substitution basis off the RREF,
    hence canonical for a given matrix.
    """
    rows = _row_dicts(m)
    pivots = _reduce(rows, m.cols)
    pivot_set = set(pivots)
    prow = {c: i for i, c in enumerate(pivots)}
    basis = []
    for fc in range(m.cols):
        if fc in pivot_set:
            continue
        v = [_ZERO] * m.cols
        v[fc] = _ONE
        for c in pivots:
            val = rows[prow[c]].get(fc)
            if val:
                v[c] = -val
        basis.append(tuple(v))
    return basis


def solve(m: RatMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One exact solution of M x = b (free coordinates zero), or None."""
    if len(b) != m.rows:
        raise ValueError("solve: rhs length %d != rows %d" % (len(b), m.rows))
    rows = _row_dicts(m)
    for i, v in enumerate(b):
        if v:
            rows[i][m.cols] = _frac(v)
    pivots = _reduce(rows, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [_ZERO] * m.cols
    for i, c in enumerate(pivots):
        x[c] = rows[i].get(m.cols, _ZERO)
    return tuple(x)


def inverse(m: RatMatrix) -> RatMatrix:
    """Exact inverse of a square matrix; raises ValueError if singular."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = RatMatrix.hstack([m, RatMatrix.identity(n)])
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    ent = {}
    for (i, j), v in red.entries.items():
        if j >= n:
            ent[(i, j - n)] = v
    return RatMatrix(n, n, ent)
