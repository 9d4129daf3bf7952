"""Homogeneous pairs (algebra, isotropy) and their quotient data.

A model stores an explicit complement basis for the quotient, so the
induced isotropy action is a concrete exact matrix: reductions project
modulo the isotropy onto the complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .forms import QuadraticForm
from .liealg import LieAlgebra, bracket, center
from .linalg import (
    CMatrix,
    Vector,
    as_vector,
    in_span,
    is_nilpotent_matrix,
    is_semisimple_matrix,
    kernel,
    span_basis,
)
from .scalars import ZERO


class NotSubalgebraInvariant(ValueError):
    """The isotropy is not preserved by the requested adjoint action."""


class WrongIsotropyDimension(ValueError):
    """The operation expects a one-dimensional isotropy."""


class MissingForm(ValueError):
    """The model carries no quotient form."""


class WrongIsotropyType(ValueError):
    """The operation expects a different isotropy type."""


class IsotropyType(Enum):
    UNIPOTENT = "UNIPOTENT"
    SEMISIMPLE = "SEMISIMPLE"
    MIXED = "MIXED"


@dataclass(frozen=True, slots=True, init=False)
class HomogeneousModel:
    algebra: LieAlgebra
    isotropy: tuple[Vector, ...]
    complement: tuple[Vector, ...]
    quotient_form: QuadraticForm | None

    def __init__(
        self,
        algebra: LieAlgebra,
        isotropy: Sequence[Sequence],
        complement: Sequence[Sequence],
        quotient_form: QuadraticForm | None = None,
    ):
        iso = tuple(as_vector(v) for v in isotropy)
        comp = tuple(as_vector(v) for v in complement)
        if len(iso) + len(comp) != algebra.dim:
            raise ValueError("isotropy and complement sizes must add up to the dimension")
        if len(span_basis(list(iso) + list(comp))) != algebra.dim:
            raise ValueError("isotropy plus complement must span the algebra")
        for u in iso:
            for v in iso:
                if not in_span(iso, bracket(algebra, u, v)):
                    raise ValueError("isotropy vectors do not span a subalgebra")
        if quotient_form is not None and quotient_form.dim != len(comp):
            raise ValueError("quotient form dimension must match the complement")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "isotropy", iso)
        object.__setattr__(self, "complement", comp)
        object.__setattr__(self, "quotient_form", quotient_form)

    @property
    def quotient_dim(self) -> int:
        return len(self.complement)

    def transition(self) -> CMatrix:
        return CMatrix.from_columns(list(self.isotropy) + list(self.complement))


def induced_ad(model: HomogeneousModel, y: Sequence) -> CMatrix:
    """Matrix of ad(y) modulo the isotropy on the complement basis.

    Well-definedness needs ``[y, isotropy]`` inside the isotropy; a
    violation raises NotSubalgebraInvariant.
    """
    vec = as_vector(y)
    inverse = model.transition().inverse()
    k = len(model.isotropy)
    for u in model.isotropy:
        coords = inverse.apply(bracket(model.algebra, vec, u))
        if any(coords[k:]):
            raise NotSubalgebraInvariant(
                "adjoint action does not preserve the isotropy subalgebra"
            )
    columns = []
    for v in model.complement:
        coords = inverse.apply(bracket(model.algebra, vec, v))
        columns.append(coords[k:])
    return CMatrix.from_columns(columns)


def isotropy_type(model: HomogeneousModel) -> IsotropyType:
    """Classify a one-dimensional isotropy through its induced action."""
    if len(model.isotropy) != 1:
        raise WrongIsotropyDimension("isotropy type needs a 1-dimensional isotropy")
    action = induced_ad(model, model.isotropy[0])
    if is_nilpotent_matrix(action):
        return IsotropyType.UNIPOTENT
    if is_semisimple_matrix(action):
        return IsotropyType.SEMISIMPLE
    return IsotropyType.MIXED


def invariant_forms(model: HomogeneousModel) -> list[QuadraticForm]:
    """Exact basis of symmetric forms S with A^T S + S A = 0 for the isotropy.

    Members may be degenerate; callers pick a nondegenerate one when they
    need a metric.
    """
    d = model.quotient_dim
    actions = [induced_ad(model, y) for y in model.isotropy]
    # Unknowns: entries s_{ij}, i <= j, of the symmetric matrix S.
    slots = [(i, j) for i in range(d) for j in range(i, d)]
    position = {pair: k for k, pair in enumerate(slots)}

    def s_index(i: int, j: int) -> int:
        return position[(i, j) if i <= j else (j, i)]

    rows = []
    for action in actions:
        a = action.entries
        for p in range(d):
            for q in range(p, d):
                # (A^T S + S A)_{pq} = sum_k (A_{kp} S_{kq} + S_{pk} A_{kq})
                row = [ZERO] * len(slots)
                for k in range(d):
                    row[s_index(k, q)] = row[s_index(k, q)] + a[k][p]
                    row[s_index(p, k)] = row[s_index(p, k)] + a[k][q]
                rows.append(row)
    if not rows:
        solutions = [
            tuple(1 if t == s else 0 for t in range(len(slots)))
            for s in range(len(slots))
        ]
    else:
        solutions = kernel(CMatrix(rows))
    forms = []
    for sol in solutions:
        gram = [[ZERO] * d for _ in range(d)]
        for (i, j), k in position.items():
            gram[i][j] = sol[k]
            gram[j][i] = sol[k]
        forms.append(QuadraticForm(gram))
    return forms


def check_invariance(model: HomogeneousModel) -> bool:
    """True iff the quotient form is killed by every induced isotropy action."""
    if model.quotient_form is None:
        raise MissingForm("model carries no quotient form")
    s = model.quotient_form.gram
    for y in model.isotropy:
        a = induced_ad(model, y)
        if not (a.transpose() @ s + s @ a).is_zero():
            return False
    return True


@dataclass(frozen=True, slots=True)
class StabilizerResult:
    basis: tuple[Vector, ...]
    bracket_closed: bool


def subalgebra_stabilizing(
    algebra: LieAlgebra, subspace: Sequence[Sequence]
) -> StabilizerResult:
    """Exact basis of ``{a : [a, W] inside W}`` with a closure certificate."""
    w_basis = span_basis(subspace)
    n = algebra.dim
    if not w_basis:
        return StabilizerResult(
            tuple(algebra.basis_vector(i) for i in range(n)), True
        )
    # Coordinates modulo W: complete W to a basis and project away W.
    extension = list(w_basis)
    for i in range(n):
        candidate = algebra.basis_vector(i)
        if not in_span(extension, candidate):
            extension.append(candidate)
    transition = CMatrix.from_columns(extension).inverse()
    m = len(w_basis)
    rows = []
    for w in w_basis:
        images = [
            transition.apply(bracket(algebra, algebra.basis_vector(i), w))[m:]
            for i in range(n)
        ]
        for component in range(n - m):
            rows.append([images[i][component] for i in range(n)])
    basis = kernel(CMatrix(rows)) if rows else [
        algebra.basis_vector(i) for i in range(n)
    ]
    closed = True
    for u in basis:
        for v in basis:
            if not in_span(basis, bracket(algebra, u, v)):
                closed = False
    return StabilizerResult(tuple(basis), closed)


def center_check_semisimple_isotropy(model: HomogeneousModel) -> bool:
    """For semisimple isotropy: does the ambient algebra have a center?"""
    if isotropy_type(model) is not IsotropyType.SEMISIMPLE:
        raise WrongIsotropyType("check applies to semisimple isotropy only")
    return bool(center(model.algebra))
