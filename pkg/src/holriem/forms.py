"""Symmetric complex bilinear forms with exact nondegeneracy certificates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .linalg import CMatrix, Vector, as_vector
from .scalars import GaussianRational, ZERO, as_gr


class DegenerateForm(ValueError):
    """Raised when an operation needs a nondegenerate quadratic form."""


@dataclass(frozen=True, slots=True, init=False)
class QuadraticForm:
    """Symmetric complex bilinear form given by its exact Gram matrix.

    Nondegeneracy is not required at construction; it is certified by
    ``nondegenerate`` (determinant test) where operations demand it.
    """

    gram: CMatrix

    def __init__(self, gram: CMatrix | Iterable[Iterable]):
        matrix = gram if isinstance(gram, CMatrix) else CMatrix(gram)
        if matrix.rows != matrix.cols:
            raise ValueError("Gram matrix must be square")
        if matrix != matrix.transpose():
            raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", matrix)

    @classmethod
    def from_sparse(
        cls,
        labels: Sequence[str],
        entries: Mapping[tuple[str, str], object],
    ) -> "QuadraticForm":
        """Build from sparse label-keyed entries; omitted entries are zero."""
        n = len(labels)
        index = {name: k for k, name in enumerate(labels)}
        grid = [[ZERO] * n for _ in range(n)]
        for (a, b), value in entries.items():
            i, j = index[a], index[b]
            v = as_gr(value)
            if grid[i][j] and grid[i][j] != v:
                raise ValueError(f"conflicting entries for ({a},{b})")
            grid[i][j] = v
            grid[j][i] = v
        return cls(grid)

    @classmethod
    def diagonal(cls, values: Iterable) -> "QuadraticForm":
        return cls(CMatrix.diagonal(values))

    @property
    def dim(self) -> int:
        return self.gram.rows

    def apply(self, x: Sequence, y: Sequence) -> GaussianRational:
        return _dot(as_vector(x), self.gram.apply(y))

    def norm(self, x: Sequence) -> GaussianRational:
        return self.apply(x, x)

    def determinant(self) -> GaussianRational:
        return self.gram.det()

    @property
    def nondegenerate(self) -> bool:
        return bool(self.determinant())

    def require_nondegenerate(self) -> None:
        if not self.nondegenerate:
            raise DegenerateForm("quadratic form is degenerate")

    def restrict(self, vectors: Sequence[Sequence]) -> "QuadraticForm":
        """Gram matrix of the form restricted to the given vectors."""
        vecs = [as_vector(v) for v in vectors]
        return QuadraticForm(
            [[self.apply(u, v) for v in vecs] for u in vecs]
        )


def _dot(u: Vector, v: Vector) -> GaussianRational:
    total = ZERO
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total
