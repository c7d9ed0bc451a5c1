"""Exact linear algebra over the rationals.

Entries are Python ``int`` or :class:`fractions.Fraction`; integers are kept
as ``int`` whenever possible because they are much faster.  Every basis
choice (kernel, cokernel, image) is a deterministic function of the input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class InconsistentSystem(ValueError):
    """Raised when a linear system has no solution."""


def q(x) -> int | Fraction:
    """Normalize a scalar to ``int`` or ``Fraction``."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return q(Fraction(x.strip()))
    if isinstance(x, float):
        raise TypeError("floating point entries are not allowed")
    return q(Fraction(x))


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    r = Fraction(a) / b
    return r.numerator if r.denominator == 1 else r


def format_rational(x) -> str:
    x = q(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> int | Fraction:
    if isinstance(s, str):
        if "/" in s:
            num, den = s.split("/", 1)
            if int(den) <= 0:
                raise ValueError(f"bad rational {s!r}")
        return q(Fraction(s))
    return q(s)


class Matrix:
    """Immutable dense matrix stored as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = tuple((0,) * cols for _ in range(rows))
        else:
            data = tuple(tuple(q(x) for x in row) for row in data)
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError(f"data does not match shape {rows}x{cols}")
            self.data = data
        self._hash = None

    @classmethod
    def _raw(cls, rows, cols, data):
        m = cls.__new__(cls)
        m.rows, m.cols, m.data, m._hash = rows, cols, data, None
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable) -> "Matrix":
        flat = [q(x) for x in entries]
        if len(flat) != rows * cols:
            raise ValueError("entries length must equal rows*cols")
        return cls._raw(rows, cols, tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_sparse(cls, rows: int, cols: int, entries: dict) -> "Matrix":
        data = [[0] * cols for _ in range(rows)]
        for (i, j), v in entries.items():
            data[i][j] = q(v)
        return cls._raw(rows, cols, tuple(tuple(r) for r in data))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self.data for x in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        n = other.cols
        odata = other.data
        out = []
        for row in self.data:
            acc = [0] * n
            for k, a in enumerate(row):
                if a == 0:
                    continue
                orow = odata[k]
                if a == 1:
                    for j, b in enumerate(orow):
                        if b != 0:
                            acc[j] += b
                else:
                    for j, b in enumerate(orow):
                        if b != 0:
                            acc[j] += a * b
            out.append(tuple(acc))
        return Matrix._raw(self.rows, n, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix._raw(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = q(c)
        return Matrix._raw(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.data))

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "Matrix":
        rows = range(self.rows) if rows is None else list(rows)
        cols = range(self.cols) if cols is None else list(cols)
        return Matrix._raw(len(rows), len(cols), tuple(tuple(self.data[i][j] for j in cols) for i in rows))


def hstack(mats: Sequence[Matrix], rows: int | None = None) -> Matrix:
    if not mats:
        return Matrix.zeros(rows or 0, 0)
    r = mats[0].rows
    if any(m.rows != r for m in mats):
        raise ValueError("hstack row mismatch")
    return Matrix._raw(r, sum(m.cols for m in mats),
                       tuple(tuple(x for m in mats for x in m.data[i]) for i in range(r)))


def vstack(mats: Sequence[Matrix], cols: int | None = None) -> Matrix:
    if not mats:
        return Matrix.zeros(0, cols or 0)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise ValueError("vstack column mismatch")
    return Matrix._raw(sum(m.rows for m in mats), c, tuple(row for m in mats for row in m.data))


def block_diag(mats: Sequence[Matrix]) -> Matrix:
    R = sum(m.rows for m in mats)
    C = sum(m.cols for m in mats)
    out = []
    off = 0
    for m in mats:
        for row in m.data:
            out.append((0,) * off + row + (0,) * (C - off - m.cols))
        off += m.cols
    return Matrix._raw(R, C, tuple(out))


def kron(a: Matrix, b: Matrix) -> Matrix:
    out = []
    for ra in a.data:
        for rb in b.data:
            out.append(tuple(x * y for x in ra for y in rb))
    return Matrix._raw(a.rows * b.rows, a.cols * b.cols, tuple(out))


def row_reduce(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    rows = [list(r) for r in m.data]
    nr, nc = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        p = None
        for i in range(r, nr):
            if rows[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        pv = pr[c]
        if pv != 1:
            pr = [_div(x, pv) if x != 0 else 0 for x in pr]
            rows[r] = pr
        nz = [j for j in range(c, nc) if pr[j] != 0]
        for i in range(nr):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f == 0:
                continue
            for j in nz:
                row[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    rref = Matrix._raw(nr, nc, tuple(tuple(row) for row in rows))
    return rref, len(pivots), pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return row_reduce(m)[1]


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form the pivot-based basis of the null space of ``m``."""
    rref, rk, pivots = row_reduce(m)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    cols = []
    for j in free:
        v = [0] * m.cols
        v[j] = 1
        for r, pc in enumerate(pivots):
            x = rref.data[r][j]
            if x != 0:
                v[pc] = -x
        cols.append(v)
    if not cols:
        return Matrix.zeros(m.cols, 0)
    return Matrix._raw(len(cols), m.cols, tuple(tuple(c) for c in cols)).T


def cokernel_projection(m: Matrix) -> tuple[Matrix, int]:
    """A surjection ``proj`` from the target of ``m`` with ``kernel(proj) = image(m)``.

    The rows of ``proj`` are the kernel basis of ``m`` transposed.
    """
    k = kernel_basis(m.T)
    return k.T, k.cols


def image_basis(m: Matrix) -> Matrix:
    """The pivot columns of ``m``."""
    _, _, pivots = row_reduce(m)
    return m.submatrix(cols=pivots)


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Return X with ``a @ X == b``; free variables are set to zero."""
    if a.rows != b.rows:
        raise ValueError("solve: row mismatch")
    n = a.cols
    if b.cols == 0:
        return Matrix.zeros(n, 0)
    aug = hstack([a, b]) if a.rows else Matrix.zeros(0, n + b.cols)
    rref, _, pivots = row_reduce(aug)
    sol = [[0] * b.cols for _ in range(n)]
    for r, pc in enumerate(pivots):
        if pc >= n:
            raise InconsistentSystem("linear system has no solution")
        row = rref.data[r]
        sol[pc] = list(row[n:])
    return Matrix._raw(n, b.cols, tuple(tuple(s) for s in sol))


def solve_left(p: Matrix, g: Matrix) -> Matrix:
    """Return H with ``H @ p == g``."""
    return solve(p.T, g.T).T


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    x = solve(m, Matrix.identity(m.rows))
    if m @ x != Matrix.identity(m.rows):
        raise InconsistentSystem("matrix is singular")
    return x
