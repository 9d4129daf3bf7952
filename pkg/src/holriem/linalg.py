"""Dense exact matrices over Q(i) and the linear-algebra kernels.

Gaussian elimination with Fraction arithmetic keeps every rank, kernel
and solve exact; there is no numerical pivoting or tolerance anywhere in
this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .scalars import CPoly, GaussianRational, ONE, ZERO, as_gr

Vector = tuple[GaussianRational, ...]


def as_vector(values: Iterable) -> Vector:
    return tuple(as_gr(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def vadd(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise ValueError("vector length mismatch")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise ValueError("vector length mismatch")
    return tuple(a - b for a, b in zip(u, v))


def vscale(scalar, v: Vector) -> Vector:
    s = as_gr(scalar)
    return tuple(s * a for a in v)


def is_zero_vector(v: Vector) -> bool:
    return not any(v)


@dataclass(frozen=True, slots=True, init=False)
class CMatrix:
    """Immutable dense matrix with GaussianRational entries."""

    entries: tuple[tuple[GaussianRational, ...], ...]

    def __init__(self, rows: Iterable[Iterable]):
        grid = tuple(tuple(as_gr(v) for v in row) for row in rows)
        if not grid or not grid[0]:
            raise ValueError("matrices must have at least one row and column")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise ValueError("ragged rows in matrix")
        object.__setattr__(self, "entries", grid)

    @classmethod
    def identity(cls, n: int) -> "CMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "CMatrix":
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, values: Iterable) -> "CMatrix":
        vals = [as_gr(v) for v in values]
        n = len(vals)
        return cls([[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "CMatrix":
        cols = [list(c) for c in columns]
        if not cols:
            raise ValueError("need at least one column")
        return cls(list(zip(*cols)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def __add__(self, other: "CMatrix") -> "CMatrix":
        self._check_same_shape(other)
        return CMatrix(
            [vadd(r, s) for r, s in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "CMatrix") -> "CMatrix":
        self._check_same_shape(other)
        return CMatrix(
            [vsub(r, s) for r, s in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "CMatrix":
        return CMatrix([[-v for v in row] for row in self.entries])

    def scale(self, scalar) -> "CMatrix":
        s = as_gr(scalar)
        return CMatrix([[s * v for v in row] for row in self.entries])

    def __matmul__(self, other: "CMatrix") -> "CMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        cols = [other.column(j) for j in range(other.cols)]
        return CMatrix(
            [
                [_dot(row, col) for col in cols]
                for row in self.entries
            ]
        )

    def apply(self, v: Sequence) -> Vector:
        vec = as_vector(v)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(_dot(row, vec) for row in self.entries)

    def transpose(self) -> "CMatrix":
        return CMatrix(list(zip(*self.entries)))

    def trace(self) -> GaussianRational:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        total = ZERO
        for i in range(self.rows):
            total = total + self.entries[i][i]
        return total

    def is_zero(self) -> bool:
        return all(not v for row in self.entries for v in row)

    def det(self) -> GaussianRational:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        work = [list(row) for row in self.entries]
        n = self.rows
        result = ONE
        for col in range(n):
            pivot_row = next((r for r in range(col, n) if work[r][col]), None)
            if pivot_row is None:
                return ZERO
            if pivot_row != col:
                work[col], work[pivot_row] = work[pivot_row], work[col]
                result = -result
            pivot = work[col][col]
            result = result * pivot
            for r in range(col + 1, n):
                if work[r][col]:
                    factor = work[r][col] / pivot
                    for c in range(col, n):
                        work[r][c] = work[r][c] - factor * work[col][c]
        return result

    def rank(self) -> int:
        _, pivots = _reduce([list(row) for row in self.entries])
        return len(pivots)

    def inverse(self) -> "CMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        augmented = [
            list(row) + [ONE if i == j else ZERO for j in range(n)]
            for i, row in enumerate(self.entries)
        ]
        reduced, pivots = _reduce(augmented)
        if len(pivots) < n or any(p >= n for p in pivots):
            raise ZeroDivisionError("matrix is singular")
        return CMatrix([row[n:] for row in reduced[:n]])

    def _check_same_shape(self, other: "CMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __str__(self) -> str:
        return "[" + "; ".join(
            ", ".join(str(v) for v in row) for row in self.entries
        ) + "]"


def _dot(u: Sequence[GaussianRational], v: Sequence[GaussianRational]) -> GaussianRational:
    total = ZERO
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total


def _reduce(rows: list[list[GaussianRational]]) -> tuple[list[list[GaussianRational]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    if not rows:
        return rows, []
    n_rows, n_cols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((k for k in range(r, n_rows) if rows[k][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        if pivot != ONE:
            rows[r] = [v / pivot for v in rows[r]]
        for k in range(n_rows):
            if k != r and rows[k][c]:
                factor = rows[k][c]
                rows[k] = [a - factor * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def rref(matrix: CMatrix) -> tuple[CMatrix, tuple[int, ...]]:
    rows, pivots = _reduce([list(row) for row in matrix.entries])
    return CMatrix(rows), tuple(pivots)


@dataclass(frozen=True, slots=True)
class LinearSolution:
    """One exact solution of ``A x = b`` plus the kernel dimension of A."""

    x: Vector
    kernel_dim: int


def solve_linear(matrix: CMatrix, rhs: Sequence) -> LinearSolution | None:
    """Solve ``A x = b`` exactly; None when the system is inconsistent.

    Underdetermined systems yield the particular solution with all free
    variables set to zero, with ``kernel_dim`` reporting the solution
    space dimension.
    """
    b = as_vector(rhs)
    if len(b) != matrix.rows:
        raise ValueError("right-hand side length does not match row count")
    augmented = [list(row) + [b[i]] for i, row in enumerate(matrix.entries)]
    reduced, pivots = _reduce(augmented)
    n = matrix.cols
    if n in pivots:
        return None
    x = [ZERO] * n
    for r, c in enumerate(pivots):
        x[c] = reduced[r][n]
    return LinearSolution(tuple(x), n - len(pivots))


def kernel(matrix: CMatrix) -> list[Vector]:
    """Canonical exact basis of the null space ``{x : A x = 0}``."""
    reduced, pivots = rref(matrix)
    n = matrix.cols
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [ZERO] * n
        v[free] = ONE
        for r, c in enumerate(pivots):
            v[c] = -reduced.entries[r][free]
        basis.append(tuple(v))
    return basis


def span_basis(vectors: Iterable[Sequence]) -> list[Vector]:
    """Canonical (reduced row echelon) basis of the span of the inputs."""
    rows = [list(as_vector(v)) for v in vectors]
    if not rows:
        return []
    reduced, pivots = _reduce(rows)
    return [tuple(reduced[r]) for r in range(len(pivots))]


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    base = span_basis(vectors)
    if not base:
        return is_zero_vector(as_vector(v))
    return len(span_basis(list(base) + [as_vector(v)])) == len(base)


def min_poly(matrix: CMatrix) -> CPoly:
    """Monic minimal polynomial, exact.

    Finds the first power of A that is a linear combination of the lower
    powers; Cayley-Hamilton caps the search at the matrix dimension.
    """
    if matrix.rows != matrix.cols:
        raise ValueError("minimal polynomial of a non-square matrix")
    n = matrix.rows

    def flatten(m: CMatrix) -> list[GaussianRational]:
        return [m.entries[r][c] for r in range(n) for c in range(n)]

    columns = [flatten(CMatrix.identity(n))]
    power = CMatrix.identity(n)
    for degree in range(1, n + 1):
        power = power @ matrix
        target = flatten(power)
        solution = solve_linear(CMatrix.from_columns(columns), target)
        if solution is not None:
            return CPoly(tuple(-c for c in solution.x) + (ONE,))
        columns.append(target)
    raise AssertionError("unreachable: degree bounded by Cayley-Hamilton")


def is_nilpotent_matrix(matrix: CMatrix) -> bool:
    """True iff ``A**n == 0`` exactly, n the matrix dimension."""
    if matrix.rows != matrix.cols:
        raise ValueError("nilpotency of a non-square matrix")
    power = matrix
    for _ in range(matrix.rows - 1):
        if power.is_zero():
            return True
        power = power @ matrix
    return power.is_zero()


def is_semisimple_matrix(matrix: CMatrix) -> bool:
    """True iff the minimal polynomial is squarefree (diagonalizable over C)."""
    p = min_poly(matrix)
    return CPoly.gcd(p, p.derivative()).degree == 0
