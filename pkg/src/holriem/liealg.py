"""Finite-dimensional complex Lie algebras given by structure constants.

An algebra is a basis-labelled antisymmetric table ``[e_i, e_j] = sum_k
c[i][j][k] e_k`` over Q(i).  Antisymmetry is enforced at construction;
the Jacobi identity is measured by ``jacobi_defect`` so that corrupted
tables can be built on purpose and diagnosed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from .forms import QuadraticForm
from .linalg import (
    CMatrix,
    Vector,
    as_vector,
    in_span,
    kernel,
    solve_linear,
    span_basis,
    vadd,
    zero_vector,
)
from .scalars import ZERO, as_gr


class WrongDimension(ValueError):
    """The operation is only defined for a specific algebra dimension."""


class NotUnimodular(ValueError):
    """The classification targets unimodular algebras only."""


class NotClosed(ValueError):
    """A claimed subalgebra is not closed under the bracket."""


class AlgebraClass(Enum):
    """The four isomorphism classes of 3-dimensional unimodular complex Lie algebras."""

    ABELIAN_C3 = "ABELIAN_C3"
    HEIS = "HEIS"
    SOL = "SOL"
    SL2 = "SL2"


@dataclass(frozen=True, slots=True, init=False)
class LieAlgebra:
    basis_names: tuple[str, ...]
    constants: tuple[tuple[Vector, ...], ...]

    def __init__(self, basis_names: Sequence[str], constants: Sequence[Sequence[Sequence]]):
        names = tuple(basis_names)
        n = len(names)
        if len(set(names)) != n:
            raise ValueError("duplicate basis labels")
        table = tuple(
            tuple(as_vector(entry) for entry in row) for row in constants
        )
        if len(table) != n or any(
            len(row) != n or any(len(v) != n for v in row) for row in table
        ):
            raise ValueError("structure constant tensor has wrong shape")
        for i in range(n):
            for j in range(n):
                if any(a + b for a, b in zip(table[i][j], table[j][i])):
                    raise ValueError(
                        f"structure constants not antisymmetric at ({names[i]},{names[j]})"
                    )
        object.__setattr__(self, "basis_names", names)
        object.__setattr__(self, "constants", table)

    @classmethod
    def from_table(
        cls,
        basis_names: Sequence[str],
        table: Mapping[tuple[str, str], Mapping[str, object]],
    ) -> "LieAlgebra":
        """Build from a sparse bracket table keyed by basis-label pairs.

        Each entry gives ``[a, b]`` as a label-to-coefficient mapping;
        omitted brackets are zero and ``[b, a]`` is filled by antisymmetry.
        """
        names = tuple(basis_names)
        n = len(names)
        index = {name: k for k, name in enumerate(names)}
        grid = [[list(zero_vector(n)) for _ in range(n)] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for (a, b), combo in table.items():
            i, j = index[a], index[b]
            value = [ZERO] * n
            for label, coeff in combo.items():
                value[index[label]] = as_gr(coeff)
            if i == j:
                if any(value):
                    raise ValueError(f"[{a},{a}] must vanish")
                continue
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"bracket ({a},{b}) specified twice")
            seen.add(key)
            grid[i][j] = value
            grid[j][i] = [-v for v in value]
        return cls(names, grid)

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def index(self, label: str) -> int:
        return self.basis_names.index(label)

    def basis_vector(self, which: int | str) -> Vector:
        i = which if isinstance(which, int) else self.index(which)
        return tuple(
            as_gr(1) if k == i else ZERO for k in range(self.dim)
        )

    def vector(self, combo: Mapping[str, object] | str) -> Vector:
        """Vector from a label-to-coefficient mapping (or a single label)."""
        if isinstance(combo, str):
            return self.basis_vector(combo)
        v = [ZERO] * self.dim
        for label, coeff in combo.items():
            v[self.index(label)] = as_gr(coeff)
        return tuple(v)


def bracket(algebra: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    """Exact bilinear antisymmetric bracket of two coefficient vectors."""
    u, v = as_vector(x), as_vector(y)
    n = algebra.dim
    if len(u) != n or len(v) != n:
        raise ValueError("vector length does not match the algebra dimension")
    out = list(zero_vector(n))
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if not b:
                continue
            coeff = a * b
            for k, c in enumerate(algebra.constants[i][j]):
                if c:
                    out[k] = out[k] + coeff * c
    return tuple(out)


def ad(algebra: LieAlgebra, x: Sequence) -> CMatrix:
    """Matrix of ``y -> [x, y]`` in the algebra basis."""
    columns = [
        bracket(algebra, x, algebra.basis_vector(j)) for j in range(algebra.dim)
    ]
    return CMatrix.from_columns(columns)


def jacobi_defect(algebra: LieAlgebra) -> Fraction:
    """Largest exact violation of the Jacobi identity over basis triples.

    Zero iff the table is a Lie algebra; the magnitude of a coefficient
    ``a + b*i`` is measured as ``max(|a|, |b|)``.
    """
    worst = Fraction(0)
    n = algebra.dim
    basis = [algebra.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = vadd(
                    vadd(
                        bracket(algebra, bracket(algebra, basis[i], basis[j]), basis[k]),
                        bracket(algebra, bracket(algebra, basis[j], basis[k]), basis[i]),
                    ),
                    bracket(algebra, bracket(algebra, basis[k], basis[i]), basis[j]),
                )
                for c in total:
                    worst = max(worst, c.maxabs())
    return worst


def jacobi_witness(algebra: LieAlgebra) -> tuple[int, int, int] | None:
    """First basis triple violating the Jacobi identity, or None."""
    n = algebra.dim
    basis = [algebra.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = vadd(
                    vadd(
                        bracket(algebra, bracket(algebra, basis[i], basis[j]), basis[k]),
                        bracket(algebra, bracket(algebra, basis[j], basis[k]), basis[i]),
                    ),
                    bracket(algebra, bracket(algebra, basis[k], basis[i]), basis[j]),
                )
                if any(total):
                    return (i, j, k)
    return None


def killing_form(algebra: LieAlgebra) -> QuadraticForm:
    """``B(x, y) = trace(ad x . ad y)``, exact and symmetric."""
    ads = [ad(algebra, algebra.basis_vector(i)) for i in range(algebra.dim)]
    gram = [
        [(ads[i] @ ads[j]).trace() for j in range(algebra.dim)]
        for i in range(algebra.dim)
    ]
    return QuadraticForm(gram)


def _bracket_span(
    algebra: LieAlgebra, left: Sequence[Vector], right: Sequence[Vector]
) -> list[Vector]:
    products = [bracket(algebra, u, v) for u in left for v in right]
    return span_basis(products)


def derived_series(algebra: LieAlgebra) -> tuple[int, ...]:
    """Dimensions of the derived series until stabilization or zero."""
    current = [algebra.basis_vector(i) for i in range(algebra.dim)]
    dims = [algebra.dim]
    while True:
        nxt = _bracket_span(algebra, current, current)
        dims.append(len(nxt))
        if len(nxt) == 0 or len(nxt) == len(current):
            return tuple(dims)
        current = nxt


def lower_central_series(algebra: LieAlgebra) -> tuple[int, ...]:
    """Dimensions of the lower central series until stabilization or zero."""
    full = [algebra.basis_vector(i) for i in range(algebra.dim)]
    current = full
    dims = [algebra.dim]
    while True:
        nxt = _bracket_span(algebra, full, current)
        dims.append(len(nxt))
        if len(nxt) == 0 or len(nxt) == len(current):
            return tuple(dims)
        current = nxt


def center(algebra: LieAlgebra) -> list[Vector]:
    """Exact basis of ``{x : [x, y] = 0 for all y}``."""
    n = algebra.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([algebra.constants[i][j][k] for i in range(n)])
    return kernel(CMatrix(rows))


def is_unimodular(algebra: LieAlgebra) -> bool:
    return all(
        not ad(algebra, algebra.basis_vector(i)).trace()
        for i in range(algebra.dim)
    )


def is_solvable(algebra: LieAlgebra) -> bool:
    return derived_series(algebra)[-1] == 0


def is_nilpotent(algebra: LieAlgebra) -> bool:
    return lower_central_series(algebra)[-1] == 0


def is_semisimple(algebra: LieAlgebra) -> bool:
    return killing_form(algebra).nondegenerate


def classify_3d_unimodular(algebra: LieAlgebra) -> AlgebraClass:
    """Classify a 3-dimensional unimodular complex Lie algebra by invariants.

    The tag is decided by basis-free data (Killing rank, derived
    dimension, nilpotency), so it is invariant under any exact change of
    basis.
    """
    if algebra.dim != 3:
        raise WrongDimension("classification requires a 3-dimensional algebra")
    if not is_unimodular(algebra):
        raise NotUnimodular("classification requires a unimodular algebra")
    if is_semisimple(algebra):
        return AlgebraClass.SL2
    if derived_series(algebra)[1] == 0:
        return AlgebraClass.ABELIAN_C3
    if is_nilpotent(algebra):
        return AlgebraClass.HEIS
    return AlgebraClass.SOL


def conjugate(
    algebra: LieAlgebra, change: CMatrix, basis_names: Sequence[str] | None = None
) -> LieAlgebra:
    """Pull the bracket back through an invertible basis change P.

    New constants satisfy ``[e_i, e_j]_new = P^-1 [P e_i, P e_j]``.
    """
    n = algebra.dim
    if change.rows != n or change.cols != n:
        raise ValueError("basis change has the wrong shape")
    inverse = change.inverse()
    grid = []
    for i in range(n):
        row = []
        for j in range(n):
            image = bracket(algebra, change.column(i), change.column(j))
            row.append(inverse.apply(image))
        grid.append(row)
    names = tuple(basis_names) if basis_names else algebra.basis_names
    return LieAlgebra(names, grid)


def subalgebra(
    algebra: LieAlgebra,
    vectors: Sequence[Sequence],
    basis_names: Sequence[str] | None = None,
) -> LieAlgebra:
    """Restrict the bracket to the span of independent vectors.

    Raises NotClosed when a bracket leaves the span, ValueError when the
    generators are dependent.
    """
    vecs = [as_vector(v) for v in vectors]
    if len(span_basis(vecs)) != len(vecs):
        raise ValueError("subalgebra generators are linearly dependent")
    transition = CMatrix.from_columns(vecs)
    names = (
        tuple(basis_names)
        if basis_names
        else tuple(f"s{k}" for k in range(len(vecs)))
    )
    grid = []
    for i, u in enumerate(vecs):
        row = []
        for j, v in enumerate(vecs):
            image = bracket(algebra, u, v)
            solution = solve_linear(transition, image)
            if solution is None:
                raise NotClosed(
                    f"bracket of generators {i} and {j} leaves the span"
                )
            row.append(solution.x)
        grid.append(row)
    return LieAlgebra(names, grid)


def is_ideal(algebra: LieAlgebra, vectors: Sequence[Sequence]) -> bool:
    """True iff the span of the vectors absorbs brackets with the whole algebra."""
    vecs = [as_vector(v) for v in vectors]
    for i in range(algebra.dim):
        for v in vecs:
            if not in_span(vecs, bracket(algebra, algebra.basis_vector(i), v)):
                return False
    return True
