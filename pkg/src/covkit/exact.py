"""Exact rational matrices and linear systems.

Scalars are :class:`fractions.Fraction`, which already keeps values in
lowest terms with a positive denominator. Elimination itself runs on
integers (rows are scaled by their common denominator) inside the kernels
selected by :mod:`covkit._backend`.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from . import _backend
from .errors import DimensionMismatch, Singular

__all__ = [
    "Matrix",
    "to_fraction",
    "identity",
    "mat_mul",
    "mat_inverse",
    "rref",
    "rank",
    "solve_linear",
    "nullspace",
]


def to_fraction(value) -> Fraction:
    """Parse ints, Fractions and rational strings such as ``"-1/2"``.

    The unicode minus sign is accepted. Floats are rejected so that no
    binary rounding leaks into exact pipelines.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip().replace("−", "-"))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")


class Matrix:
    """Immutable dense matrix with Fraction entries."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(to_fraction(v) for v in row) for row in rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = hash(rows)

    @classmethod
    def _trusted(cls, rows):
        m = cls.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = len(rows[0]) if rows else 0
        m._hash = hash(rows)
        return m

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.rows)
        return f"Matrix([{body}])"

    def __matmul__(self, other):
        return mat_mul(self, other)

    def transpose(self) -> "Matrix":
        return Matrix._trusted(tuple(zip(*self.rows)))

    def apply(self, vec):
        """Matrix-vector product ``self @ vec`` for a sequence of scalars."""
        if len(vec) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.shape} matrix")
        return tuple(sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in self.rows)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and all(
            v == (1 if i == j else 0) for i, row in enumerate(self.rows) for j, v in enumerate(row)
        )

    def to_strings(self):
        return [[str(v) for v in row] for row in self.rows]


def identity(n: int) -> Matrix:
    one, zero = Fraction(1), Fraction(0)
    return Matrix._trusted(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    cols = tuple(zip(*b.rows))
    zero = Fraction(0)
    return Matrix._trusted(
        tuple(tuple(sum((x * y for x, y in zip(row, col)), zero) for col in cols) for row in a.rows)
    )


def _integer_rows(rows):
    out = []
    for row in rows:
        row = [to_fraction(v) for v in row]
        den = lcm(*(v.denominator for v in row)) if row else 1
        out.append([v.numerator * (den // v.denominator) for v in row])
    return out


def rref(rows, ncols=None):
    """Reduced row echelon form of a list of rational rows.

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped and each
    pivot equals 1. Pivots are the first nonzero entry found scanning
    columns left to right.
    """
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise DimensionMismatch("rows must all have length ncols")
    ech, pivots = _backend.rref_int(_integer_rows(rows), ncols)
    reduced = []
    for row, c in zip(ech, pivots):
        p = row[c]
        reduced.append([Fraction(v, p) for v in row])
    return reduced, pivots


def rank(rows, ncols=None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    reduced, pivots = rref(rows, ncols)
    return _kernel_from_rref(reduced, pivots, ncols)


def _kernel_from_rref(reduced, pivots, ncols):
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, c in zip(reduced, pivots):
            v[c] = -row[free]
        basis.append(tuple(v))
    return basis


def solve_linear(a, rhs):
    """Solve ``a x = rhs`` exactly.

    ``a`` is a :class:`Matrix` or a list of rows. Returns ``(solution, kernel)``
    where ``solution`` is ``None`` if the system is inconsistent; otherwise it
    is the particular solution with zeros in every non-pivot coordinate.
    ``kernel`` is a basis of the null space of ``a``.
    """
    rows = a.rows if isinstance(a, Matrix) else [tuple(r) for r in a]
    ncols = a.ncols if isinstance(a, Matrix) else (len(rows[0]) if rows else 0)
    rhs = [to_fraction(v) for v in rhs]
    if len(rhs) != len(rows):
        raise DimensionMismatch(f"{len(rows)} equations but {len(rhs)} right-hand sides")
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        solution = None
        reduced, pivots = reduced[:-1], pivots[:-1]
    else:
        solution = [Fraction(0)] * ncols
        for row, c in zip(reduced, pivots):
            solution[c] = row[ncols]
        solution = tuple(solution)
    kernel = _kernel_from_rref([r[:ncols] for r in reduced], pivots, ncols)
    return solution, kernel


def mat_inverse(a: Matrix) -> Matrix:
    n = a.nrows
    if a.ncols != n:
        raise DimensionMismatch(f"cannot invert non-square {a.shape} matrix")
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a.rows)]
    reduced, pivots = rref(aug, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise Singular("matrix is singular")
    return Matrix._trusted(tuple(tuple(row[n:]) for row in reduced))
