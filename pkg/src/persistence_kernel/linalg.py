"""Exact rational matrices.

Everything is stored as ``fractions.Fraction`` so that ranks, kernels and
images are exact.  Pivoting always picks the first nonzero entry in column
order, which makes every basis returned here deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(value)


class RatMatrix:
    """Immutable dense matrix over Q with shape (rows, cols).

    Zero-sized shapes are allowed and behave like the corresponding maps
    between zero-dimensional spaces.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence] | None = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self._data = tuple((Fraction(0),) * cols for _ in range(rows))
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise DimensionMismatch(f"data does not have shape {rows}x{cols}")
            self._data = tuple(tuple(to_fraction(x) for x in r) for r in data)
        self._hash = None

    # constructors

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = list(rows)
        if cols is None:
            if not rows:
                raise DimensionMismatch("cannot infer the column count of an empty matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        columns = list(columns)
        if any(len(c) != rows for c in columns):
            raise DimensionMismatch(f"every column needs {rows} entries")
        data =[[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls(rows, len(columns), data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    # access

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"

    # arithmetic

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
        ocols = [other.column(j) for j in range(other.cols)]
        data = [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in ocols] for r in self._data]
        return RatMatrix(self.rows, other.cols, data)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix(self.rows, self.cols, [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "RatMatrix":
        c = to_fraction(c)
        return RatMatrix(self.rows, self.cols, [[c * a for a in r] for r in self._data])

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    def select_rows(self, idx: Iterable[int]) -> "RatMatrix":
        idx = list(idx)
        return RatMatrix(len(idx), self.cols, [self._data[i] for i in idx])

    def select_columns(self, idx: Iterable[int]) -> "RatMatrix":
        idx = list(idx)
        return RatMatrix(self.rows, len(idx), [[r[j] for j in idx] for r in self._data])


def hstack(blocks: Sequence[RatMatrix], rows: int | None = None) -> RatMatrix:
    if not blocks:
        return RatMatrix(rows or 0, 0)
    rows = blocks[0].rows if rows is None else rows
    if any(b.rows != rows for b in blocks):
        raise DimensionMismatch("hstack blocks disagree on row count")
    data = [sum((list(b.row(i)) for b in blocks), []) for i in range(rows)]
    return RatMatrix(rows, sum(b.cols for b in blocks), data)


def vstack(blocks: Sequence[RatMatrix], cols: int | None = None) -> RatMatrix:
    if not blocks:
        return RatMatrix(0, cols or 0)
    cols = blocks[0].cols if cols is None else cols
    if any(b.cols != cols for b in blocks):
        raise DimensionMismatch("vstack blocks disagree on column count")
    data = [b.row(i) for b in blocks for i in range(b.rows)]
    return RatMatrix(len(data), cols, data)


def block_diag(blocks: Sequence[RatMatrix]) -> RatMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = [[Fraction(0)] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                data[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return RatMatrix(rows, cols, data)


def rref(a: RatMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [list(r) for r in a._data]
    pivots: list[int] = []
    r = 0
    for c in range(a.cols):
        if r == a.rows:
            break
        p = next((i for i in range(r, a.rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(a.rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: RatMatrix) -> int:
    if a.rows == 0 or a.cols == 0:
        return 0
    return len(rref(a)[1])


def kernel_basis(a: RatMatrix) -> RatMatrix:
    """Columns form a basis of {v : a v = 0}; one column per free variable."""
    m, pivots = rref(a)
    free = [j for j in range(a.cols) if j not in pivots]
    cols = []
    for f in free:
        v = [Fraction(0)] * a.cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        cols.append(v)
    return RatMatrix.from_columns(cols, a.cols)


def image_basis(a: RatMatrix) -> RatMatrix:
    """The pivot columns of ``a``: a basis of its column space."""
    _, pivots = rref(a)
    return a.select_columns(pivots)


def solve(a: RatMatrix, b: RatMatrix) -> RatMatrix | None:
    """Some x with a x = b, or None if the system is inconsistent.

    Free variables are set to zero, so the answer is unique whenever ``a`` has
    full column rank.
    """
    if a.rows != b.rows:
        raise DimensionMismatch(f"solve: {a.shape} against right side {b.shape}")
    aug = hstack([a, b], rows=a.rows) if a.rows else RatMatrix(0, a.cols + b.cols)
    m, pivots = rref(aug)
    if any(p >= a.cols for p in pivots):
        return None
    x = [[Fraction(0)] * b.cols for _ in range(a.cols)]
    for r, pc in enumerate(pivots):
        for j in range(b.cols):
            x[pc][j] = m[r][a.cols + j]
    return RatMatrix(a.cols, b.cols, x)


def compose(*mats: RatMatrix) -> RatMatrix:
    """compose(f, g, h) is f @ g @ h."""
    out = mats[-1]
    for m in reversed(mats[:-1]):
        out = m @ out
    return out


def inverse(a: RatMatrix) -> RatMatrix:
    if a.rows != a.cols:
        raise DimensionMismatch("only square matrices are invertible")
    x = solve(a, RatMatrix.identity(a.rows))
    if x is None or rank(a) != a.rows:
        raise ZeroDivisionError("matrix is singular")
    return x


def is_invertible(a: RatMatrix) -> bool:
    return a.rows == a.cols and rank(a) == a.rows


def intersect_spaces(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Basis (as columns) of col(a) ∩ col(b); both inputs have independent columns."""
    if a.cols == 0 or b.cols == 0:
        return RatMatrix(a.rows, 0)
    k = kernel_basis(hstack([a, b.scale(-1)]))
    if k.cols == 0:
        return RatMatrix(a.rows, 0)
    return image_basis(a @ k.select_rows(range(a.cols)))


def sum_spaces(*spaces: RatMatrix, dim: int) -> RatMatrix:
    spaces = [s for s in spaces if s.cols]
    if not spaces:
        return RatMatrix(dim, 0)
    return image_basis(hstack(spaces, rows=dim))


def complement_basis(sub: RatMatrix, dim: int) -> RatMatrix:
    """Standard basis vectors extending the columns of ``sub`` to a basis of Q^dim."""
    chosen = [sub.column(j) for j in range(sub.cols)]
    extra = []
    for i in range(dim):
        e = tuple(Fraction(1) if k == i else Fraction(0) for k in range(dim))
        trial = RatMatrix.from_columns(chosen + extra + [e], dim)
        if rank(trial) == len(chosen) + len(extra) + 1:
            extra.append(e)
    return RatMatrix.from_columns(extra, dim)


def orthogonal_retraction(basis: RatMatrix) -> RatMatrix:
    """Coordinates, in ``basis``, of the orthogonal projection onto its span.

    Returns the matrix (B^T B)^{-1} B^T, which is a left inverse of B.  Over Q
    the span and its orthogonal complement intersect trivially, so this is a
    well defined retraction.
    """
    if basis.cols == 0:
        return RatMatrix(0, basis.rows)
    return inverse(basis.T @ basis) @ basis.T
