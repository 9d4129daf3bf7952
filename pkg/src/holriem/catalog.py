"""Built-in catalog of algebras, metrics and homogeneous models, plus the
verification suite that machine-checks every expected property.

Check results are flat (id, status, witness, value) records so reports
stay grep-able; ``verify_all`` is deterministic for a fixed seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Sequence

from . import dsl
from .forms import QuadraticForm
from .geometry import (
    adapted_gram_unipotent,
    bianchi_defect,
    compatibility_defect,
    constant_curvature,
    constant_curvature_defect,
    curvature,
    curvature_antisymmetry_defect,
    flow_preserves_adapted_form,
    generator_is_skew_for_adapted_form,
    levi_civita,
    pair_skew_defect,
    poly_mat_eval,
    skew_algebra,
    stabilizer_in_skew,
    torsion_defect,
    unipotent_isotropy_matrix,
)
from .liealg import (
    AlgebraClass,
    LieAlgebra,
    NotUnimodular,
    WrongDimension,
    center,
    classify_3d_unimodular,
    is_ideal,
    is_nilpotent,
    is_semisimple,
    is_solvable,
    is_unimodular,
    derived_series,
    jacobi_witness,
    killing_form,
    subalgebra,
)
from .linalg import CMatrix, in_span
from .models import (
    HomogeneousModel,
    check_invariance,
    induced_ad,
    invariant_forms,
    isotropy_type,
)
from .scalars import GaussianRational, as_gr, gr

DEFAULT_SEED = 42
DEFAULT_TOL = 1e-9


# -- catalog ---------------------------------------------------------------


@dataclass(frozen=True, slots=True, init=False)
class ParamExtension:
    """Parameters (c, m, k, beta) of the 4-dimensional stabilizer family."""

    c: GaussianRational
    m: GaussianRational
    k: GaussianRational
    beta: GaussianRational

    def __init__(self, c=0, m=0, k=0, beta=0):
        object.__setattr__(self, "c", as_gr(c))
        object.__setattr__(self, "m", as_gr(m))
        object.__setattr__(self, "k", as_gr(k))
        object.__setattr__(self, "beta", as_gr(beta))


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    algebra: LieAlgebra
    form: QuadraticForm | None = None
    model: HomogeneousModel | None = None
    expected: dict[str, str] | None = None
    params: ParamExtension | None = None


def abelian3_algebra() -> LieAlgebra:
    return LieAlgebra.from_table(("X", "Y", "Z"), {})


def heis_algebra() -> LieAlgebra:
    """Heisenberg: [Y, Z] = X with X central."""
    return LieAlgebra.from_table(("X", "Y", "Z"), {("Y", "Z"): {"X": 1}})


def sol_algebra() -> LieAlgebra:
    """SOL: [Y, Z] = Z, [Y, T] = -T, [Z, T] = 0."""
    return LieAlgebra.from_table(
        ("Y", "Z", "T"), {("Y", "Z"): {"Z": 1}, ("Y", "T"): {"T": -1}}
    )


def sl2_algebra() -> LieAlgebra:
    """sl(2): [H, E] = 2E, [H, F] = -2F, [E, F] = H."""
    return LieAlgebra.from_table(
        ("H", "E", "F"),
        {("H", "E"): {"E": 2}, ("H", "F"): {"F": -2}, ("E", "F"): {"H": 1}},
    )


def heis_isotropic_center_form() -> QuadraticForm:
    """Flat metric on heis: the center pairs with Z and is isotropic."""
    return QuadraticForm.from_sparse(
        ("X", "Y", "Z"), {("X", "Z"): 1, ("Y", "Y"): 1}
    )


def sol_flat_form() -> QuadraticForm:
    return QuadraticForm.from_sparse(
        ("Y", "Z", "T"), {("Y", "Y"): 1, ("Z", "T"): 1}
    )


def build_param_extension(params: ParamExtension) -> LieAlgebra:
    """4-dimensional extension of heis by a derivation with parameters.

    Brackets on (X, Y, Z, T): [Y,Z] = X, [T,X] = c X,
    [T,Z] = m X + (c+beta) Z + k Y, [T,Y] = Z - beta Y; X central in the
    span of (X, Y, Z).  The shape is exactly the derivation condition, so
    the Jacobi identity holds for every parameter value.
    """
    c, m, k, beta = params.c, params.m, params.k, params.beta
    return LieAlgebra.from_table(
        ("X", "Y", "Z", "T"),
        {
            ("Y", "Z"): {"X": 1},
            ("T", "X"): {"X": c},
            ("T", "Z"): {"X": m, "Z": c + beta, "Y": k},
            ("T", "Y"): {"Z": 1, "Y": -beta},
        },
    )


def heis_stabilizer_model(params: ParamExtension) -> HomogeneousModel:
    algebra = build_param_extension(params)
    return HomogeneousModel(
        algebra,
        isotropy=[algebra.vector("Y")],
        complement=[algebra.vector("X"), algebra.vector("Z"), algebra.vector("T")],
        quotient_form=QuadraticForm(adapted_gram_unipotent()),
    )


def c_times_sol_algebra() -> LieAlgebra:
    return LieAlgebra.from_table(
        ("X", "Y", "Z", "T"),
        {("Y", "Z"): {"Z": 1}, ("Y", "T"): {"T": -1}},
    )


def c_ltimes_heis_algebra() -> LieAlgebra:
    return LieAlgebra.from_table(
        ("X", "Y", "Z", "T"),
        {("Y", "Z"): {"Z": 1}, ("Y", "T"): {"T": -1}, ("T", "Z"): {"X": 1}},
    )


def c2_semidirect_c2_algebra() -> LieAlgebra:
    return LieAlgebra.from_table(
        ("X", "Y", "Z", "T"),
        {("Y", "Z"): {"Z": 1}, ("Y", "T"): {"T": -1}, ("T", "X"): {"T": 1}},
    )


def _semisimple_quotient_model(algebra: LieAlgebra) -> HomogeneousModel:
    """Isotropy Y with complement (X, Z, T) and form pairing Z with T."""
    return HomogeneousModel(
        algebra,
        isotropy=[algebra.vector("Y")],
        complement=[algebra.vector("X"), algebra.vector("Z"), algebra.vector("T")],
        quotient_form=QuadraticForm.from_sparse(
            ("X", "Z", "T"), {("X", "X"): 1, ("Z", "T"): 1}
        ),
    )


def c_oplus_sl2_algebra() -> LieAlgebra:
    """sl(2) plus a central line W."""
    return LieAlgebra.from_table(
        ("H", "E", "F", "W"),
        {("H", "E"): {"E": 2}, ("H", "F"): {"F": -2}, ("E", "F"): {"H": 1}},
    )


def c_oplus_sl2_model(a=2, b=1) -> HomogeneousModel:
    """Left-invariant metrics on the simple factor, isotropy along W + H.

    Quotient form q(H,H) = a, q(E,F) = b on the complement (H, E, F); the
    Killing-proportional case is a = 2b.
    """
    algebra = c_oplus_sl2_algebra()
    return HomogeneousModel(
        algebra,
        isotropy=[algebra.vector({"W": 1, "H": 1})],
        complement=[algebra.vector("H"), algebra.vector("E"), algebra.vector("F")],
        quotient_form=QuadraticForm.from_sparse(
            ("H", "E", "F"), {("H", "H"): a, ("E", "F"): b}
        ),
    )


def c_times_sl2_algebra() -> LieAlgebra:
    return LieAlgebra.from_table(
        ("W", "H", "E", "F"),
        {("H", "E"): {"E": 2}, ("H", "F"): {"F": -2}, ("E", "F"): {"H": 1}},
    )


def c_times_sl2_model() -> HomogeneousModel:
    """Product of a line with the constant-curvature surface; isotropy H."""
    algebra = c_times_sl2_algebra()
    return HomogeneousModel(
        algebra,
        isotropy=[algebra.vector("H")],
        complement=[algebra.vector("W"), algebra.vector("E"), algebra.vector("F")],
        quotient_form=QuadraticForm.from_sparse(
            ("W", "E", "F"), {("W", "W"): 1, ("E", "F"): 1}
        ),
    )


def build_catalog() -> list[CatalogEntry]:
    entries = [
        CatalogEntry(
            id="flat_c3",
            algebra=abelian3_algebra(),
            form=QuadraticForm.diagonal([1, 1, 1]),
            expected={
                "class": "ABELIAN_C3",
                "constant_curvature": "0",
                "unimodular": "true",
                "solvable": "true",
                "nilpotent": "true",
                "center_dim": "3",
                "derived_dims": "3,0",
            },
        ),
        CatalogEntry(
            id="heis3",
            algebra=heis_algebra(),
            form=heis_isotropic_center_form(),
            expected={
                "class": "HEIS",
                "constant_curvature": "0",
                "unimodular": "true",
                "solvable": "true",
                "nilpotent": "true",
                "center_dim": "1",
                "derived_dims": "3,1,0",
            },
        ),
        CatalogEntry(
            id="sol3",
            algebra=sol_algebra(),
            form=sol_flat_form(),
            expected={
                "class": "SOL",
                "constant_curvature": "0",
                "unimodular": "true",
                "solvable": "true",
                "nilpotent": "false",
                "center_dim": "0",
                "derived_dims": "3,2,0",
            },
        ),
        CatalogEntry(
            id="sl2",
            algebra=sl2_algebra(),
            form=killing_form(sl2_algebra()),
            expected={
                "class": "SL2",
                "constant_curvature": "-1/8",
                "unimodular": "true",
                "solvable": "false",
                "semisimple": "true",
                "center_dim": "0",
                "derived_dims": "3,3",
            },
        ),
        CatalogEntry(
            id="c_oplus_sl2",
            algebra=c_oplus_sl2_algebra(),
            model=c_oplus_sl2_model(),
            expected={
                "isotropy": "SEMISIMPLE",
                "invariance": "true",
                "invariant_form_dim": "2",
                "center_dim": "1",
                "unimodular": "true",
            },
        ),
        CatalogEntry(
            id="c_times_sl2",
            algebra=c_times_sl2_algebra(),
            model=c_times_sl2_model(),
            expected={
                "isotropy": "SEMISIMPLE",
                "invariance": "true",
                "invariant_form_dim": "2",
                "center_dim": "1",
                "unimodular": "true",
            },
        ),
        CatalogEntry(
            id="c_times_sol",
            algebra=c_times_sol_algebra(),
            model=_semisimple_quotient_model(c_times_sol_algebra()),
            expected={
                "isotropy": "SEMISIMPLE",
                "invariance": "true",
                "invariant_form_dim": "2",
                "center_dim": "1",
                "unimodular": "true",
            },
        ),
        CatalogEntry(
            id="c_ltimes_heis",
            algebra=c_ltimes_heis_algebra(),
            model=_semisimple_quotient_model(c_ltimes_heis_algebra()),
            expected={
                "isotropy": "SEMISIMPLE",
                "invariance": "true",
                "invariant_form_dim": "2",
                "center_dim": "1",
                "unimodular": "true",
            },
        ),
        CatalogEntry(
            id="c2_semidirect_c2",
            algebra=c2_semidirect_c2_algebra(),
            model=_semisimple_quotient_model(c2_semidirect_c2_algebra()),
            expected={
                "isotropy": "SEMISIMPLE",
                "invariance": "true",
                "invariant_form_dim": "2",
                "center_dim": "0",
                "unimodular": "false",
            },
        ),
        CatalogEntry(
            id="heis_stab_zero",
            algebra=build_param_extension(ParamExtension()),
            model=heis_stabilizer_model(ParamExtension()),
            params=ParamExtension(),
            expected={
                "isotropy": "UNIPOTENT",
                "invariance": "true",
                "invariant_form_dim": "2",
                "center_dim": "1",
            },
        ),
        CatalogEntry(
            id="heis_stab_generic",
            algebra=build_param_extension(
                ParamExtension(1, Fraction(1, 2), -1, 3)
            ),
            model=heis_stabilizer_model(ParamExtension(1, Fraction(1, 2), -1, 3)),
            params=ParamExtension(1, Fraction(1, 2), -1, 3),
            expected={
                "isotropy": "UNIPOTENT",
                "invariance": "true",
                "invariant_form_dim": "2",
                "center_dim": "0",
            },
        ),
    ]
    return entries


def mutate_structure_constant(
    algebra: LieAlgebra, i: int, j: int, k: int, delta=1
) -> LieAlgebra:
    """Copy with ``c^k_{ij}`` shifted by delta (antisymmetry preserved)."""
    if i == j:
        raise ValueError("diagonal brackets stay zero")
    grid = [
        [list(v) for v in row] for row in algebra.constants
    ]
    grid[i][j][k] = grid[i][j][k] + as_gr(delta)
    grid[j][i][k] = grid[j][i][k] - as_gr(delta)
    return LieAlgebra(algebra.basis_names, grid)


def check_prop_iv(params: ParamExtension) -> bool:
    """Flat-case criterion of the stabilizer family: c = 0, k = -beta^2.

    True iff span{X, Z - beta*Y, T} is bracket-closed, 3-dimensional and
    is a Heisenberg algebra whose center is spanned by X.  A nonzero m
    parameter is what makes the span literally Heisenberg.
    """
    if params.c != gr(0) or params.k + params.beta * params.beta != gr(0):
        raise ValueError("requires c = 0 and k + beta^2 = 0 exactly")
    algebra = build_param_extension(params)
    generators = [
        algebra.vector("X"),
        algebra.vector({"Z": 1, "Y": -params.beta}),
        algebra.vector("T"),
    ]
    try:
        span = subalgebra(algebra, generators, basis_names=("X", "V", "T"))
    except ValueError:
        return False
    if span.dim != 3:
        return False
    try:
        tag = classify_3d_unimodular(span)
    except (NotUnimodular, WrongDimension):
        return False
    if tag is not AlgebraClass.HEIS:
        return False
    central = center(span)
    return len(central) == 1 and in_span(
        [span.basis_vector("X")], central[0]
    )


# -- check plumbing --------------------------------------------------------


@dataclass(frozen=True, slots=True)
class CheckResult:
    id: str
    status: str  # "pass" | "fail"
    witness: str | None = None
    value: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True)
class VerifyReport:
    seed: int
    checks: tuple[CheckResult, ...]
    timestamp: float

    @property
    def pass_count(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def fail_count(self) -> int:
        return len(self.checks) - self.pass_count

    @property
    def all_pass(self) -> bool:
        return self.fail_count == 0

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


def _check(
    check_id: str, ok: bool, witness: str | None = None, value: str | None = None
) -> CheckResult:
    return CheckResult(
        id=check_id,
        status="pass" if ok else "fail",
        witness=None if ok else witness,
        value=value,
    )


def _triple_str(algebra: LieAlgebra, indices: tuple[int, ...] | None) -> str | None:
    if indices is None:
        return None
    kind = {2: "pair", 3: "triple", 4: "quad"}.get(len(indices), "indices")
    names = ",".join(algebra.basis_names[t] for t in indices)
    return f"{kind}=({names})"


def _render_constant(k: GaussianRational | None) -> str:
    return "NotConstant" if k is None else f"Constant({k})"


# -- per-entry checks ------------------------------------------------------


def verify_entry(entry: CatalogEntry) -> list[CheckResult]:
    checks: list[CheckResult] = []
    algebra = entry.algebra
    prefix = entry.id

    triple = jacobi_witness(algebra)
    checks.append(
        _check(f"{prefix}/jacobi", triple is None, _triple_str(algebra, triple))
    )

    for key, expected in (entry.expected or {}).items():
        checks.append(_entry_property_check(entry, key, expected))

    if entry.form is not None:
        checks.extend(_metric_identity_checks(prefix, algebra, entry.form))
    return checks


def _entry_property_check(entry: CatalogEntry, key: str, expected: str) -> CheckResult:
    algebra = entry.algebra
    check_id = f"{entry.id}/{key}"
    if key == "class":
        try:
            tag = classify_3d_unimodular(algebra).name
        except (NotUnimodular, WrongDimension) as exc:
            return _check(check_id, False, witness=str(exc))
        return _check(check_id, tag == expected, witness=f"got {tag}", value=tag)
    if key in ("unimodular", "solvable", "nilpotent", "semisimple"):
        predicate = {
            "unimodular": is_unimodular,
            "solvable": is_solvable,
            "nilpotent": is_nilpotent,
            "semisimple": is_semisimple,
        }[key]
        got = "true" if predicate(algebra) else "false"
        return _check(check_id, got == expected, witness=f"got {got}", value=got)
    if key == "center_dim":
        got = str(len(center(algebra)))
        return _check(check_id, got == expected, witness=f"got {got}", value=got)
    if key == "derived_dims":
        got = ",".join(str(d) for d in derived_series(algebra))
        return _check(check_id, got == expected, witness=f"got {got}", value=got)
    if key == "constant_curvature":
        return _constant_curvature_check(entry, check_id, expected)
    if key == "isotropy":
        got = isotropy_type(entry.model).name
        return _check(check_id, got == expected, witness=f"got {got}", value=got)
    if key == "invariance":
        got = "true" if check_invariance(entry.model) else "false"
        return _check(check_id, got == expected, witness=f"got {got}", value=got)
    if key == "invariant_form_dim":
        got = str(len(invariant_forms(entry.model)))
        return _check(check_id, got == expected, witness=f"got {got}", value=got)
    return _check(check_id, False, witness=f"unknown expected property {key!r}")


def _constant_curvature_check(
    entry: CatalogEntry, check_id: str, expected: str
) -> CheckResult:
    algebra, form = entry.algebra, entry.form
    if form is None:
        return _check(check_id, False, witness="entry carries no metric")
    tensor = curvature(algebra, levi_civita(algebra, form))
    expected_k = dsl.parse_scalar(expected)
    defect = constant_curvature_defect(form, tensor, expected_k)
    if defect is None:
        return _check(check_id, True, value=_render_constant(expected_k))
    got = constant_curvature(algebra, form)
    return _check(
        check_id,
        False,
        witness=f"{_triple_str(algebra, defect)} got {_render_constant(got)}",
        value=_render_constant(got),
    )


def _metric_identity_checks(
    prefix: str, algebra: LieAlgebra, form: QuadraticForm
) -> list[CheckResult]:
    connection = levi_civita(algebra, form)
    tensor = curvature(algebra, connection)
    torsion = torsion_defect(algebra, connection)
    compat = compatibility_defect(form, connection)
    antisym = curvature_antisymmetry_defect(tensor)
    bianchi = bianchi_defect(tensor)
    skew = pair_skew_defect(form, tensor)
    return [
        _check(f"{prefix}/torsion_free", torsion is None, _triple_str(algebra, torsion)),
        _check(
            f"{prefix}/metric_compatible", compat is None, _triple_str(algebra, compat)
        ),
        _check(
            f"{prefix}/curvature_antisymmetry",
            antisym is None,
            _triple_str(algebra, antisym),
        ),
        _check(
            f"{prefix}/first_bianchi", bianchi is None, _triple_str(algebra, bianchi)
        ),
        _check(
            f"{prefix}/curvature_pair_skew", skew is None, _triple_str(algebra, skew)
        ),
    ]


# -- fragments -------------------------------------------------------------


def _entry_by_id(catalog: Sequence[CatalogEntry], entry_id: str) -> CatalogEntry | None:
    for entry in catalog:
        if entry.id == entry_id:
            return entry
    return None


def verify_prop_unimodular(catalog: Sequence[CatalogEntry]) -> list[CheckResult]:
    """Constant-curvature certificates for the four unimodular classes.

    Flat exactly for the solvable three; nonzero constant for sl(2).
    """
    checks = []
    flat_solvable = []
    for entry_id in ("flat_c3", "heis3", "sol3", "sl2"):
        entry = _entry_by_id(catalog, entry_id)
        if entry is None or entry.form is None:
            checks.append(
                _check(f"unimodular3/{entry_id}", False, witness="entry missing")
            )
            continue
        k = constant_curvature(entry.algebra, entry.form)
        value = _render_constant(k)
        if entry_id == "sl2":
            ok = k is not None and bool(k)
        else:
            ok = k is not None and not k
        checks.append(
            _check(f"unimodular3/{entry_id}", ok, witness=f"got {value}", value=value)
        )
        if k is not None:
            flat_solvable.append((entry_id, not k, is_solvable(entry.algebra)))
        else:
            flat_solvable.append((entry_id, False, is_solvable(entry.algebra)))
    mismatches = [name for name, flat, solv in flat_solvable if flat != solv]
    checks.append(
        _check(
            "unimodular3/flat_iff_solvable",
            not mismatches,
            witness=f"mismatch at {','.join(mismatches)}" if mismatches else None,
            value=f"{len(flat_solvable)} entries",
        )
    )
    return checks


def verify_section4(catalog: Sequence[CatalogEntry]) -> list[CheckResult]:
    """Semisimple-part models: curvature of the invariant metrics on sl(2)."""
    checks = []
    algebra = sl2_algebra()
    proportional = QuadraticForm.from_sparse(
        ("H", "E", "F"), {("H", "H"): 2, ("E", "F"): 1}
    )
    k = constant_curvature(algebra, proportional)
    checks.append(
        _check(
            "semisimple4/killing_proportional_constant",
            k is not None and str(k) == "-1/2",
            witness=f"got {_render_constant(k)}",
            value=_render_constant(k),
        )
    )
    generic = c_oplus_sl2_model(a=1, b=1)
    checks.append(
        _check(
            "semisimple4/general_ab_invariance",
            check_invariance(generic),
            witness="invariance failed for (a,b)=(1,1)",
        )
    )
    generic_form = QuadraticForm.from_sparse(
        ("H", "E", "F"), {("H", "H"): 1, ("E", "F"): 1}
    )
    generic_k = constant_curvature(algebra, generic_form)
    checks.append(
        _check(
            "semisimple4/general_ab_report",
            True,
            value=_render_constant(generic_k),
        )
    )
    return checks


def verify_section5_tables(catalog: Sequence[CatalogEntry]) -> list[CheckResult]:
    checks = []

    case1 = _entry_by_id(catalog, "c_times_sol")
    if case1 is not None:
        g = case1.algebra
        central = center(g)
        ok = len(central) == 1 and in_span([g.basis_vector("X")], central[0])
        checks.append(
            _check("solvable4/case1_center", ok, witness="center is not the X line")
        )
        try:
            span = subalgebra(g, [g.vector("Y"), g.vector("Z"), g.vector("T")])
            tag = classify_3d_unimodular(span).name
            checks.append(
                _check(
                    "solvable4/case1_sol_span",
                    tag == "SOL",
                    witness=f"got {tag}",
                    value=tag,
                )
            )
        except ValueError as exc:
            checks.append(_check("solvable4/case1_sol_span", False, witness=str(exc)))

    case2 = _entry_by_id(catalog, "c_ltimes_heis")
    if case2 is not None:
        g = case2.algebra
        central = center(g)
        ok = len(central) == 1 and in_span([g.basis_vector("X")], central[0])
        checks.append(
            _check("solvable4/case2_center", ok, witness="center is not the X line")
        )
        ideal_vectors = [g.vector("X"), g.vector("Z"), g.vector("T")]
        try:
            span = subalgebra(g, ideal_vectors)
            tag = classify_3d_unimodular(span).name
            ok = tag == "HEIS" and is_ideal(g, ideal_vectors)
            checks.append(
                _check(
                    "solvable4/case2_heis_ideal", ok, witness=f"got {tag}", value=tag
                )
            )
        except ValueError as exc:
            checks.append(
                _check("solvable4/case2_heis_ideal", False, witness=str(exc))
            )
        if case2.model is not None:
            action = induced_ad(case2.model, case2.model.isotropy[0])
            expected = CMatrix.diagonal([0, 1, -1])
            checks.append(
                _check(
                    "solvable4/case2_weights",
                    action == expected,
                    witness=f"induced action {action}",
                    value="0,1,-1",
                )
            )

    case3 = _entry_by_id(catalog, "c2_semidirect_c2")
    if case3 is not None:
        dim = len(center(case3.algebra))
        checks.append(
            _check(
                "solvable4/case3_center",
                dim == 0,
                witness=f"center dimension {dim}",
                value=str(dim),
            )
        )

    semisimple_ids = ("c_times_sol", "c_ltimes_heis", "c2_semidirect_c2")
    wrong = []
    for entry_id in semisimple_ids:
        entry = _entry_by_id(catalog, entry_id)
        if entry is None or entry.model is None:
            wrong.append(entry_id)
            continue
        if isotropy_type(entry.model).name != "SEMISIMPLE":
            wrong.append(entry_id)
    checks.append(
        _check(
            "solvable4/isotropy_semisimple",
            not wrong,
            witness=f"unexpected type at {','.join(wrong)}" if wrong else None,
        )
    )

    wrong = []
    for entry in catalog:
        if entry.params is None or entry.model is None:
            continue
        if isotropy_type(entry.model).name != "UNIPOTENT":
            wrong.append(entry.id)
    checks.append(
        _check(
            "solvable4/family_isotropy_unipotent",
            not wrong,
            witness=f"unexpected type at {','.join(wrong)}" if wrong else None,
        )
    )
    return checks


def verify_isotropy_dimension_bounds() -> list[CheckResult]:
    form = QuadraticForm(adapted_gram_unipotent())
    so_dim = len(skew_algebra(form))
    unit = (gr(0), gr(1), gr(0))
    null = (gr(1), gr(0), gr(0))
    frame_partner = (gr(1), gr(0), gr(1))
    dim_unit = len(stabilizer_in_skew(form, [unit]))
    dim_null = len(stabilizer_in_skew(form, [null]))
    dim_frame = len(stabilizer_in_skew(form, [unit, frame_partner]))
    return [
        _check("isotropy-bounds/so_q_dim", so_dim == 3, f"got {so_dim}", str(so_dim)),
        _check(
            "isotropy-bounds/fix_unit_vector",
            dim_unit == 1,
            f"got {dim_unit}",
            str(dim_unit),
        ),
        _check(
            "isotropy-bounds/fix_null_vector",
            dim_null == 1,
            f"got {dim_null}",
            str(dim_null),
        ),
        _check(
            "isotropy-bounds/fix_frame",
            dim_frame == 0,
            f"got {dim_frame}",
            str(dim_frame),
        ),
    ]


def random_gaussian_rational(rng: random.Random, span: int = 3) -> GaussianRational:
    return gr(
        Fraction(rng.randint(-span, span), rng.randint(1, 2)),
        Fraction(rng.randint(-span, span), rng.randint(1, 2)),
    )


def random_param_extension(rng: random.Random) -> ParamExtension:
    return ParamExtension(
        random_gaussian_rational(rng),
        random_gaussian_rational(rng),
        random_gaussian_rational(rng),
        random_gaussian_rational(rng),
    )


def verify_heis_family(seed: int, samples: int = 100) -> list[CheckResult]:
    rng = random.Random(f"{seed}/heis-family")
    jacobi_bad: list[str] = []
    isotropy_bad: list[str] = []
    for _ in range(samples):
        params = random_param_extension(rng)
        algebra = build_param_extension(params)
        if jacobi_witness(algebra) is not None:
            jacobi_bad.append(str(params))
        model = heis_stabilizer_model(params)
        if isotropy_type(model).name != "UNIPOTENT":
            isotropy_bad.append(str(params))
    checks = [
        _check(
            "heis-family/jacobi_random",
            not jacobi_bad,
            witness=jacobi_bad[0] if jacobi_bad else None,
            value=f"{samples} samples",
        ),
        _check(
            "heis-family/isotropy_random",
            not isotropy_bad,
            witness=isotropy_bad[0] if isotropy_bad else None,
            value=f"{samples} samples",
        ),
    ]
    flat_cases = [
        ("beta0", gr(0)),
        ("beta1", gr(1)),
        ("betai", gr(0, 1)),
        ("beta3_2", gr(Fraction(3, 2))),
    ]
    for tag, beta in flat_cases:
        params = ParamExtension(c=0, m=1, k=-(beta * beta), beta=beta)
        ok = check_prop_iv(params)
        checks.append(
            _check(f"heis-family/iv_{tag}", ok, witness=f"params {params}")
        )
    return checks


def verify_flow_identities() -> list[CheckResult]:
    checks = [
        _check("flow/gram_polynomial", flow_preserves_adapted_form()),
        _check("flow/generator_skew", generator_is_skew_for_adapted_form()),
    ]
    # Entries of L(s) L(t) - L(s+t) have degree <= 2 in each variable, so
    # vanishing on a 3 x 3 grid proves the polynomial identity.
    flow = unipotent_isotropy_matrix()
    ok = True
    for s in range(3):
        for t in range(3):
            left = poly_mat_eval(flow, s) @ poly_mat_eval(flow, t)
            right = poly_mat_eval(flow, s + t)
            if left != right:
                ok = False
    checks.append(_check("flow/one_parameter_group", ok))
    return checks


# -- numeric invariance of the surface model -------------------------------


def _mobius_residual(a, b, c, d, z1, z2) -> float:
    w1 = (a * z1 + b) / (c * z1 + d)
    w2 = (a * z2 + b) / (c * z2 + d)
    det = a * d - b * c
    dw1 = det / (c * z1 + d) ** 2
    dw2 = det / (c * z2 + d) ** 2
    value = dw1 * dw2 / (w1 - w2) ** 2 - 1.0 / (z1 - z2) ** 2
    return abs(value) * abs(z1 - z2) ** 2


def _sample_pair(rng: random.Random, c, d):
    while True:
        z1 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        z2 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(z1 - z2) < 1e-6:
            continue  # degenerate sample: resample
        if abs(c * z1 + d) < 1e-6 or abs(c * z2 + d) < 1e-6:
            continue
        return z1, z2


def _random_sl2_matrix(rng: random.Random):
    while True:
        a = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        if abs(a) >= 0.3:
            break
    b = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    d = (1 + b * c) / a
    return a, b, c, d


def mobius_invariance_check(
    samples: int = 1000, seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL
) -> float:
    """Max residual of the cross-ratio metric invariance over random samples.

    The surface metric in affine coordinates is dz1 dz2 / (z1 - z2)^2;
    diagonal fractional-linear maps preserve it, and the residual of each
    sample is |w'(z1) w'(z2) / (w1-w2)^2 - 1 / (z1-z2)^2| * |z1-z2|^2.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        a, b, c, d = _random_sl2_matrix(rng)
        z1, z2 = _sample_pair(rng, c, d)
        worst = max(worst, _mobius_residual(a, b, c, d, z1, z2))
    return worst


def fixed_matrix_residual(matrix, samples: int, seed: int) -> float:
    """Worst residual for one fixed coefficient matrix ((a, b), (c, d))."""
    (a, b), (c, d) = matrix
    rng = random.Random(f"{seed}/fixed")
    worst = 0.0
    for _ in range(samples):
        z1, z2 = _sample_pair(rng, c, d)
        worst = max(worst, _mobius_residual(a, b, c, d, z1, z2))
    return worst


def verify_mobius(seed: int, tol: float) -> list[CheckResult]:
    identity = fixed_matrix_residual(((1, 0), (0, 1)), 100, seed)
    translation = fixed_matrix_residual(((1, 1), (0, 1)), 100, seed)
    worst = mobius_invariance_check(1000, seed, tol)
    return [
        _check(
            "mobius/identity",
            identity <= 1e-15,
            witness=f"residual {identity!r}",
            value=repr(identity),
        ),
        _check(
            "mobius/translation",
            translation <= 1e-15,
            witness=f"residual {translation!r}",
            value=repr(translation),
        ),
        _check(
            "mobius/invariance",
            worst < tol,
            witness=f"residual {worst!r}",
            value=repr(worst),
        ),
    ]


# -- shipped file agreement -------------------------------------------------


def shipped_file_text(entry_id: str) -> str:
    return (resources.files("holriem") / "data" / f"{entry_id}.liealg").read_text(
        encoding="utf-8"
    )


def specfile_for_entry(entry: CatalogEntry) -> "dsl.SpecFile":
    return dsl.specfile_from_parts(
        entry.id, entry.algebra, entry.form, entry.model, entry.expected
    )


def verify_shipped_files(catalog: Sequence[CatalogEntry]) -> list[CheckResult]:
    checks = []
    for entry in catalog:
        check_id = f"files/{entry.id}"
        try:
            text = shipped_file_text(entry.id)
        except OSError as exc:
            checks.append(_check(check_id, False, witness=str(exc)))
            continue
        try:
            parsed = dsl.parse(text)
        except dsl.DslError as exc:
            checks.append(_check(check_id, False, witness=str(exc)))
            continue
        ok = parsed == specfile_for_entry(entry)
        checks.append(_check(check_id, ok, witness="file and catalog disagree"))
    return checks


# -- top level ---------------------------------------------------------------


def verify_all(
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
    catalog: Sequence[CatalogEntry] | None = None,
    check_files: bool = True,
) -> VerifyReport:
    """Run the full verification suite; deterministic for a fixed seed."""
    if catalog is None:
        catalog = build_catalog()
    if not catalog:
        raise ValueError("empty catalog")
    checks: list[CheckResult] = []
    for entry in catalog:
        checks.extend(verify_entry(entry))
    checks.extend(verify_prop_unimodular(catalog))
    checks.extend(verify_section4(catalog))
    checks.extend(verify_section5_tables(catalog))
    checks.extend(verify_isotropy_dimension_bounds())
    checks.extend(verify_heis_family(seed))
    checks.extend(verify_flow_identities())
    if check_files:
        checks.extend(verify_shipped_files(catalog))
    checks.extend(verify_mobius(seed, tol))
    ids = [c.id for c in checks]
    if len(set(ids)) != len(ids):
        raise AssertionError("duplicate check ids in report")
    return VerifyReport(seed=seed, checks=tuple(checks), timestamp=time.time())


def report_to_json(report: VerifyReport) -> str:
    """Stable machine format: seed, checks[{id,status,witness,value}], summary."""
    import json

    payload = {
        "seed": report.seed,
        "checks": [
            {
                "id": c.id,
                "status": c.status,
                "witness": c.witness,
                "value": c.value,
            }
            for c in report.checks
        ],
        "summary": {"pass": report.pass_count, "fail": report.fail_count},
    }
    return json.dumps(payload, indent=2)


def render_report_text(report: VerifyReport, quiet: bool = False) -> str:
    lines = []
    for c in report.checks:
        if quiet and c.passed:
            continue
        line = f"{c.status.upper():4} {c.id}"
        if c.value is not None:
            line += f"  value={c.value}"
        if c.witness is not None:
            line += f"  witness={c.witness}"
        lines.append(line)
    lines.append(
        f"summary: {report.pass_count} passed, {report.fail_count} failed, seed={report.seed}"
    )
    return "\n".join(lines)
