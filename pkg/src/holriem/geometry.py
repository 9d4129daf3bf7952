"""Levi-Civita connections, curvature and orthogonal-algebra computations.

All metrics are left-invariant: a quadratic form on the Lie algebra
stands for the metric on the whole group, and the Koszul identity for
frames with constant inner products determines the connection,

    2 q(nabla_x y, z) = q([x,y], z) - q([y,z], x) + q([z,x], y).

Curvature convention used throughout (flatness does not depend on it):

    R(x, y) z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z,
    K(x, y) = q(R(x,y)y, x) / (q(x,x) q(y,y) - q(x,y)^2).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .forms import DegenerateForm, QuadraticForm
from .liealg import LieAlgebra, bracket
from .linalg import (
    CMatrix,
    Vector,
    as_vector,
    kernel,
    solve_linear,
    span_basis,
    vadd,
    vscale,
    vsub,
    zero_vector,
)
from .scalars import CPoly, GaussianRational, ONE, ZERO, as_gr, ensure_finite, gr

FLOAT_TOL = 1e-9


class BadNorm(ValueError):
    """Adapted bases require the anchor vector to have norm 0 or 1."""


class NoExactRoot(ValueError):
    """A required square root is irrational and exact mode was demanded."""


class DegenerateRestriction(ValueError):
    """The form restricted to the given subspace is degenerate."""


@dataclass(frozen=True, slots=True)
class ConnectionTable:
    """Christoffel data: ``coeffs[i][j]`` is nabla_{e_i} e_j in the frame."""

    coeffs: tuple[tuple[Vector, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def nabla(self, x: Sequence, y: Sequence) -> Vector:
        """Bilinear extension; valid for constant-coefficient fields."""
        u, v = as_vector(x), as_vector(y)
        out = list(zero_vector(self.dim))
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                coeff = a * b
                for k, c in enumerate(self.coeffs[i][j]):
                    if c:
                        out[k] = out[k] + coeff * c
        return tuple(out)


@dataclass(frozen=True, slots=True)
class CurvatureTensor:
    """Full tensor: ``comps[i][j][k]`` is R(e_i, e_j) e_k in the frame."""

    comps: tuple[tuple[tuple[Vector, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.comps)

    def apply(self, x: Sequence, y: Sequence, z: Sequence) -> Vector:
        u, v, w = as_vector(x), as_vector(y), as_vector(z)
        out = list(zero_vector(self.dim))
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(w):
                    if not c:
                        continue
                    coeff = ab * c
                    for l, r in enumerate(self.comps[i][j][k]):
                        if r:
                            out[l] = out[l] + coeff * r
        return tuple(out)

    def is_zero(self) -> bool:
        return first_nonzero_component(self) is None


def levi_civita(algebra: LieAlgebra, form: QuadraticForm) -> ConnectionTable:
    """Unique torsion-free metric connection of a left-invariant metric."""
    form.require_nondegenerate()
    n = algebra.dim
    if form.dim != n:
        raise ValueError("form dimension does not match the algebra")
    gram_inverse = form.gram.inverse()
    basis = [algebra.basis_vector(i) for i in range(n)]
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            rhs = []
            bij = bracket(algebra, basis[i], basis[j])
            for k in range(n):
                value = (
                    form.apply(bij, basis[k])
                    - form.apply(bracket(algebra, basis[j], basis[k]), basis[i])
                    + form.apply(bracket(algebra, basis[k], basis[i]), basis[j])
                )
                rhs.append(value / 2)
            row.append(gram_inverse.apply(rhs))
        table.append(tuple(row))
    return ConnectionTable(tuple(table))


def curvature(algebra: LieAlgebra, connection: ConnectionTable) -> CurvatureTensor:
    n = algebra.dim
    basis = [algebra.basis_vector(i) for i in range(n)]
    comps = []
    for i in range(n):
        plane = []
        for j in range(n):
            fibers = []
            bij = bracket(algebra, basis[i], basis[j])
            for k in range(n):
                value = vsub(
                    vsub(
                        connection.nabla(basis[i], connection.coeffs[j][k]),
                        connection.nabla(basis[j], connection.coeffs[i][k]),
                    ),
                    connection.nabla(bij, basis[k]),
                )
                fibers.append(value)
            plane.append(tuple(fibers))
        comps.append(tuple(plane))
    return CurvatureTensor(tuple(comps))


def sectional_curvature(
    form: QuadraticForm,
    tensor: CurvatureTensor,
    x: Sequence,
    y: Sequence,
) -> GaussianRational | None:
    """Sectional curvature of the plane span{x, y}; None when degenerate."""
    u, v = as_vector(x), as_vector(y)
    if len(span_basis([u, v])) != 2:
        raise ValueError("sectional curvature needs independent vectors")
    denominator = form.apply(u, u) * form.apply(v, v) - form.apply(u, v) ** 2
    if not denominator:
        return None
    numerator = form.apply(tensor.apply(u, v, v), u)
    return numerator / denominator


def _model_component(
    form: QuadraticForm, i: int, j: int, k: int, n: int
) -> Vector:
    """Component vector of q(e_j,e_k) e_i - q(e_i,e_k) e_j."""
    out = list(zero_vector(n))
    gram = form.gram.entries
    out[i] = out[i] + gram[j][k]
    out[j] = out[j] - gram[i][k]
    return tuple(out)


def constant_curvature(
    algebra: LieAlgebra, form: QuadraticForm
) -> GaussianRational | None:
    """Constant k with ``R(x,y)z = k (q(y,z)x - q(x,z)y)``, else None.

    The candidate is read from the lexicographically first nondegenerate
    coordinate plane (falling back to the first nonzero model-tensor
    component) and then the identity is verified on all basis triples.
    """
    form.require_nondegenerate()
    tensor = curvature(algebra, levi_civita(algebra, form))
    n = algebra.dim
    candidate = None
    for i in range(n):
        for j in range(i + 1, n):
            u, v = algebra.basis_vector(i), algebra.basis_vector(j)
            value = sectional_curvature(form, tensor, u, v)
            if value is not None:
                candidate = value
                break
        if candidate is not None:
            break
    if candidate is None:
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    model = _model_component(form, i, j, k, n)
                    for l, m in enumerate(model):
                        if m:
                            candidate = tensor.comps[i][j][k][l] / m
                            break
                    if candidate is not None:
                        break
                if candidate is not None:
                    break
            if candidate is not None:
                break
    if candidate is None:
        raise DegenerateForm("no usable plane for the curvature candidate")
    if constant_curvature_defect(form, tensor, candidate) is not None:
        return None
    return candidate


def constant_curvature_defect(
    form: QuadraticForm, tensor: CurvatureTensor, k
) -> tuple[int, int, int] | None:
    """First basis triple violating ``R(x,y)z = k (q(y,z)x - q(x,z)y)``."""
    value = as_gr(k)
    n = tensor.dim
    for i in range(n):
        for j in range(n):
            for m in range(n):
                model = vscale(value, _model_component(form, i, j, m, n))
                if any(vsub(tensor.comps[i][j][m], model)):
                    return (i, j, m)
    return None


def flatness_defect(tensor: CurvatureTensor) -> tuple[int, int, int] | None:
    """First basis triple with a nonzero curvature component, or None."""
    return first_nonzero_component(tensor)


def first_nonzero_component(tensor: CurvatureTensor) -> tuple[int, int, int] | None:
    n = tensor.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if any(tensor.comps[i][j][k]):
                    return (i, j, k)
    return None


def ricci(form: QuadraticForm, tensor: CurvatureTensor) -> QuadraticForm:
    """``Ric(x, y) = trace(z -> R(z, x) y)``, exact and symmetric."""
    n = tensor.dim
    gram = [
        [
            sum(
                (tensor.comps[i][a][b][i] for i in range(n)),
                start=ZERO,
            )
            for b in range(n)
        ]
        for a in range(n)
    ]
    return QuadraticForm(gram)


def divergence(connection: ConnectionTable, x: Sequence) -> GaussianRational:
    """``div x = trace(a -> nabla_a x)`` in the left-invariant frame."""
    v = as_vector(x)
    n = connection.dim
    total = ZERO
    for i in range(n):
        image = connection.nabla(connection_basis(n, i), v)
        total = total + image[i]
    return total


def connection_basis(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


# -- connection/curvature identity checks --------------------------------


def torsion_defect(
    algebra: LieAlgebra, connection: ConnectionTable
) -> tuple[int, int] | None:
    """First basis pair with nabla_x y - nabla_y x != [x, y], or None."""
    n = algebra.dim
    for i in range(n):
        for j in range(n):
            lhs = vsub(connection.coeffs[i][j], connection.coeffs[j][i])
            rhs = bracket(
                algebra, algebra.basis_vector(i), algebra.basis_vector(j)
            )
            if any(vsub(lhs, rhs)):
                return (i, j)
    return None


def compatibility_defect(
    form: QuadraticForm, connection: ConnectionTable
) -> tuple[int, int, int] | None:
    """First triple violating q(nabla_z x, y) + q(x, nabla_z y) = 0."""
    n = connection.dim
    basis = [connection_basis(n, i) for i in range(n)]
    for z in range(n):
        for x in range(n):
            for y in range(n):
                value = form.apply(connection.coeffs[z][x], basis[y]) + form.apply(
                    basis[x], connection.coeffs[z][y]
                )
                if value:
                    return (z, x, y)
    return None


def curvature_antisymmetry_defect(
    tensor: CurvatureTensor,
) -> tuple[int, int, int] | None:
    n = tensor.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if any(vadd(tensor.comps[i][j][k], tensor.comps[j][i][k])):
                    return (i, j, k)
    return None


def bianchi_defect(tensor: CurvatureTensor) -> tuple[int, int, int] | None:
    """First triple violating R(x,y)z + R(y,z)x + R(z,x)y = 0."""
    n = tensor.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                total = vadd(
                    vadd(tensor.comps[i][j][k], tensor.comps[j][k][i]),
                    tensor.comps[k][i][j],
                )
                if any(total):
                    return (i, j, k)
    return None


def pair_skew_defect(
    form: QuadraticForm, tensor: CurvatureTensor
) -> tuple[int, int, int, int] | None:
    """First quadruple violating q(R(x,y)z, w) = -q(R(x,y)w, z)."""
    n = tensor.dim
    basis = [connection_basis(n, i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    value = form.apply(tensor.comps[i][j][k], basis[l]) + form.apply(
                        tensor.comps[i][j][l], basis[k]
                    )
                    if value:
                        return (i, j, k, l)
    return None


# -- orthogonal algebra ---------------------------------------------------


def skew_algebra(form: QuadraticForm) -> list[CMatrix]:
    """Exact basis of ``so(q) = {A : A^T G + G A = 0}``; dim n(n-1)/2."""
    form.require_nondegenerate()
    n = form.dim
    gram = form.gram.entries
    rows = []
    # Unknowns: column-major entries A[r][c] at index c*n + r.
    for a in range(n):
        for b in range(a, n):
            row = [ZERO] * (n * n)
            for k in range(n):
                # (A^T G)_{ab} = sum_k A[k][a] G[k][b]
                row[a * n + k] = row[a * n + k] + gram[k][b]
                # (G A)_{ab} = sum_k G[a][k] A[k][b]
                row[b * n + k] = row[b * n + k] + gram[a][k]
            rows.append(row)
    matrices = []
    for v in kernel(CMatrix(rows)):
        matrices.append(
            CMatrix([[v[c * n + r] for c in range(n)] for r in range(n)])
        )
    return matrices


def stabilizer_in_skew(
    form: QuadraticForm, vectors: Sequence[Sequence]
) -> list[CMatrix]:
    """Basis of ``{A in so(q) : A v = 0 for each given v}``."""
    form.require_nondegenerate()
    n = form.dim
    gram = form.gram.entries
    rows = []
    for a in range(n):
        for b in range(a, n):
            row = [ZERO] * (n * n)
            for k in range(n):
                row[a * n + k] = row[a * n + k] + gram[k][b]
                row[b * n + k] = row[b * n + k] + gram[a][k]
            rows.append(row)
    for v in vectors:
        vec = as_vector(v)
        if len(vec) != n:
            raise ValueError("vector length does not match the form")
        for r in range(n):
            row = [ZERO] * (n * n)
            for c in range(n):
                row[c * n + r] = vec[c]
            rows.append(row)
    matrices = []
    for sol in kernel(CMatrix(rows)):
        matrices.append(
            CMatrix([[sol[c * n + r] for c in range(n)] for r in range(n)])
        )
    return matrices


# -- isotropic lines and adapted bases ------------------------------------


@dataclass(frozen=True, slots=True)
class IsotropicLines:
    """The two isotropic directions of a nondegenerate binary form.

    ``exact`` is False when the discriminant root is irrational and the
    directions carry complex floating-point coordinates.
    """

    first: tuple
    second: tuple
    exact: bool


def isotropic_lines(form: QuadraticForm, require_exact: bool = False) -> IsotropicLines:
    if form.dim != 2:
        raise ValueError("isotropic_lines expects a binary form")
    if not form.nondegenerate:
        raise DegenerateRestriction("restricted plane is degenerate")
    a = form.gram.entries[0][0]
    b = form.gram.entries[0][1]
    c = form.gram.entries[1][1]
    if not a and not c:
        return IsotropicLines((ONE, ZERO), (ZERO, ONE), True)
    if not a:
        # q = y (2 b x + c y); nondegeneracy forces b != 0.
        return IsotropicLines((ONE, ZERO), (-c, 2 * b), True)
    discriminant = b * b - a * c
    root = discriminant.sqrt()
    if root is not None:
        return IsotropicLines((-b + root, a), (-b - root, a), True)
    if require_exact:
        raise NoExactRoot("isotropic directions need an irrational square root")
    root_c = cmath.sqrt(discriminant.to_complex())
    bc, ac = b.to_complex(), a.to_complex()
    return IsotropicLines(
        (ensure_finite(-bc + root_c), ensure_finite(ac)),
        (ensure_finite(-bc - root_c), ensure_finite(ac)),
        False,
    )


class BasisKind(Enum):
    UNIPOTENT = "UNIPOTENT"
    SEMISIMPLE = "SEMISIMPLE"


@dataclass(frozen=True, slots=True)
class AdaptedBasis:
    """Basis normalizing a 3-dimensional form around a norm-0 or norm-1 anchor.

    UNIPOTENT (anchor e1 of norm 0):
        q(e1,e1)=0, q(e1,e2)=0, q(e2,e2)=1, q(e3,e3)=0, q(e2,e3)=0, q(e3,e1)=1.
    SEMISIMPLE (anchor e1 of norm 1):
        q(e1,e1)=1, e2 and e3 isotropic in the complement of e1, q(e2,e3)=1.

    When ``exact`` is False the vectors carry complex floats accurate to
    FLOAT_TOL.
    """

    e1: tuple
    e2: tuple
    e3: tuple
    kind: BasisKind
    exact: bool


def build_adapted_basis(
    form: QuadraticForm,
    anchor: Sequence,
    require_exact: bool = False,
    tol: float = FLOAT_TOL,
) -> AdaptedBasis:
    form.require_nondegenerate()
    if form.dim != 3:
        raise ValueError("adapted bases are defined in dimension 3")
    e1 = as_vector(anchor)
    if not any(e1):
        raise BadNorm("anchor vector must be nonzero")
    norm = form.norm(e1)
    if norm == ONE:
        return _adapted_semisimple(form, e1, require_exact, tol)
    if not norm:
        return _adapted_unipotent(form, e1, require_exact, tol)
    raise BadNorm(f"anchor norm must be 0 or 1, got {norm}")


def _orthogonal_complement(form: QuadraticForm, v: Vector) -> list[Vector]:
    return kernel(CMatrix([form.gram.apply(v)]))


def _adapted_unipotent(
    form: QuadraticForm, e1: Vector, require_exact: bool, tol: float = FLOAT_TOL
) -> AdaptedBasis:
    complement = _orthogonal_complement(form, e1)
    candidates = complement + [vadd(complement[0], complement[1])]
    w = next((u for u in candidates if form.norm(u)), None)
    if w is None:
        raise DegenerateForm("no anisotropic vector orthogonal to the anchor")
    scale = form.norm(w)
    root = scale.sqrt()
    # e3 depends on w only through q(w, .) = 0, so it stays exact even
    # when normalizing e2 needs an irrational root.
    constraints = CMatrix([form.gram.apply(e1), form.gram.apply(w)])
    particular = solve_linear(constraints, (ONE, ZERO))
    if particular is None:
        raise DegenerateForm("anchor constraints are inconsistent")
    p = particular.x
    e3 = vsub(p, vscale(form.norm(p) / 2, e1))
    if root is not None:
        e2 = vscale(root.inverse(), w)
        _check_adapted_exact(form, e1, e2, e3, BasisKind.UNIPOTENT)
        return AdaptedBasis(e1, e2, e3, BasisKind.UNIPOTENT, True)
    if require_exact:
        raise NoExactRoot("normalizing e2 needs an irrational square root")
    root_c = cmath.sqrt(scale.to_complex())
    e1c = tuple(v.to_complex() for v in e1)
    e2c = tuple(ensure_finite(v.to_complex() / root_c) for v in w)
    e3c = tuple(v.to_complex() for v in e3)
    _check_adapted_float(form, e1c, e2c, e3c, BasisKind.UNIPOTENT, tol)
    return AdaptedBasis(e1c, e2c, e3c, BasisKind.UNIPOTENT, False)


def _adapted_semisimple(
    form: QuadraticForm, e1: Vector, require_exact: bool, tol: float = FLOAT_TOL
) -> AdaptedBasis:
    complement = _orthogonal_complement(form, e1)
    restricted = form.restrict(complement)
    lines = isotropic_lines(restricted, require_exact=require_exact)
    if lines.exact:
        w1 = vadd(
            vscale(lines.first[0], complement[0]),
            vscale(lines.first[1], complement[1]),
        )
        w2 = vadd(
            vscale(lines.second[0], complement[0]),
            vscale(lines.second[1], complement[1]),
        )
        pairing = form.apply(w1, w2)
        e2 = w1
        e3 = vscale(pairing.inverse(), w2)
        _check_adapted_exact(form, e1, e2, e3, BasisKind.SEMISIMPLE)
        return AdaptedBasis(e1, e2, e3, BasisKind.SEMISIMPLE, True)
    u1 = tuple(v.to_complex() for v in complement[0])
    u2 = tuple(v.to_complex() for v in complement[1])
    w1 = tuple(lines.first[0] * a + lines.first[1] * b for a, b in zip(u1, u2))
    w2 = tuple(lines.second[0] * a + lines.second[1] * b for a, b in zip(u1, u2))
    gram_c = _gram_complex(form)
    pairing = _bilinear_complex(gram_c, w1, w2)
    e1c = tuple(v.to_complex() for v in e1)
    e3c = tuple(ensure_finite(v / pairing) for v in w2)
    _check_adapted_float(form, e1c, w1, e3c, BasisKind.SEMISIMPLE, tol)
    return AdaptedBasis(e1c, w1, e3c, BasisKind.SEMISIMPLE, False)


def _adapted_relations(kind: BasisKind):
    # Pairs ((slot_a, slot_b), expected value) over basis slots 0,1,2.
    if kind is BasisKind.UNIPOTENT:
        return (
            ((0, 0), 0),
            ((0, 1), 0),
            ((1, 1), 1),
            ((2, 2), 0),
            ((1, 2), 0),
            ((2, 0), 1),
        )
    return (
        ((0, 0), 1),
        ((0, 1), 0),
        ((0, 2), 0),
        ((1, 1), 0),
        ((2, 2), 0),
        ((1, 2), 1),
    )


def _check_adapted_exact(form, e1, e2, e3, kind) -> None:
    vectors = (e1, e2, e3)
    for (a, b), expected in _adapted_relations(kind):
        if form.apply(vectors[a], vectors[b]) != gr(expected):
            raise AssertionError("adapted basis construction violated a relation")


def _gram_complex(form: QuadraticForm):
    return [
        [v.to_complex() for v in row] for row in form.gram.entries
    ]


def _bilinear_complex(gram, x, y) -> complex:
    total = 0j
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            total += a * gram[i][j] * b
    return ensure_finite(total)


def _check_adapted_float(form, e1, e2, e3, kind, tol: float = FLOAT_TOL) -> None:
    gram = _gram_complex(form)
    vectors = (e1, e2, e3)
    for (a, b), expected in _adapted_relations(kind):
        value = _bilinear_complex(gram, vectors[a], vectors[b])
        if abs(value - expected) > tol:
            raise AssertionError(
                f"adapted basis relation ({a},{b}) off by {abs(value - expected)}"
            )


# -- the unipotent isotropy flow -------------------------------------------


def unipotent_isotropy_matrix() -> tuple[tuple[CPoly, ...], ...]:
    """One-parameter unipotent isotropy action on an adapted basis.

    Entries are exact polynomials in the flow time t:
        [[1, t, -t^2/2], [0, 1, -t], [0, 0, 1]].
    """
    t = CPoly.x()
    one = CPoly.constant(1)
    zero = CPoly()
    half = as_gr(1) / as_gr(2)
    return (
        (one, t, CPoly((ZERO, ZERO, -half))),
        (zero, one, -t),
        (zero, zero, one),
    )


def unipotent_isotropy_generator() -> CMatrix:
    """Derivative of the unipotent flow at t = 0."""
    return CMatrix([[0, 1, 0], [0, 0, -1], [0, 0, 0]])


def adapted_gram_unipotent() -> CMatrix:
    """Gram matrix of the unipotent adapted relations."""
    return CMatrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])


PolyMatrix = tuple[tuple[CPoly, ...], ...]


def poly_matrix_from_cmatrix(matrix: CMatrix) -> PolyMatrix:
    return tuple(
        tuple(CPoly.constant(v) for v in row) for row in matrix.entries
    )


def poly_matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    n, m, p = len(a), len(b), len(b[0])
    if len(a[0]) != m:
        raise ValueError("shape mismatch in polynomial matrix product")
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            total = CPoly()
            for k in range(m):
                total = total + a[i][k] * b[k][j]
            row.append(total)
        out.append(tuple(row))
    return tuple(out)


def poly_mat_transpose(a: PolyMatrix) -> PolyMatrix:
    return tuple(zip(*a))


def poly_mat_sub(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def poly_mat_is_zero(a: PolyMatrix) -> bool:
    return all(entry.is_zero() for row in a for entry in row)


def poly_mat_eval(a: PolyMatrix, value) -> CMatrix:
    return CMatrix([[entry(as_gr(value)) for entry in row] for row in a])


def flow_preserves_adapted_form() -> bool:
    """Polynomial identity L_t^T Q L_t = Q for the unipotent flow."""
    flow = unipotent_isotropy_matrix()
    q = poly_matrix_from_cmatrix(adapted_gram_unipotent())
    product = poly_matmul(poly_matmul(poly_mat_transpose(flow), q), flow)
    return poly_mat_is_zero(poly_mat_sub(product, q))


def generator_is_skew_for_adapted_form() -> bool:
    """Infinitesimal identity N^T Q + Q N = 0 for the flow generator."""
    n = unipotent_isotropy_generator()
    q = adapted_gram_unipotent()
    return (n.transpose() @ q + q @ n).is_zero()
