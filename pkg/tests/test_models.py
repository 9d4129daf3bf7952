"""Homogeneous models: induced actions, invariant forms, stabilizers."""

import pytest

from holriem.catalog import (
    ParamExtension,
    c2_semidirect_c2_algebra,
    c_ltimes_heis_algebra,
    c_oplus_sl2_model,
    c_times_sl2_model,
    c_times_sol_algebra,
    build_catalog,
    heis_algebra,
    heis_stabilizer_model,
    sol_algebra,
)
from holriem.forms import QuadraticForm
from holriem.geometry import adapted_gram_unipotent, unipotent_isotropy_generator
from holriem.liealg import LieAlgebra
from holriem.linalg import CMatrix, in_span, span_basis
from holriem.models import (
    HomogeneousModel,
    IsotropyType,
    MissingForm,
    NotSubalgebraInvariant,
    WrongIsotropyDimension,
    WrongIsotropyType,
    center_check_semisimple_isotropy,
    check_invariance,
    induced_ad,
    invariant_forms,
    isotropy_type,
    subalgebra_stabilizing,
)
from holriem.scalars import gr


def _semisimple_model(algebra, form_entries=None):
    entries = form_entries or {("X", "X"): 1, ("Z", "T"): 1}
    return HomogeneousModel(
        algebra,
        isotropy=[algebra.vector("Y")],
        complement=[algebra.vector("X"), algebra.vector("Z"), algebra.vector("T")],
        quotient_form=QuadraticForm.from_sparse(("X", "Z", "T"), entries),
    )


def test_induced_ad_weights():
    model = _semisimple_model(c_ltimes_heis_algebra())
    action = induced_ad(model, model.isotropy[0])
    assert action == CMatrix.diagonal([0, 1, -1])


def test_induced_ad_two_dim_quotient():
    h = heis_algebra()
    model = HomogeneousModel(
        h,
        isotropy=[h.vector("Y")],
        complement=[h.vector("X"), h.vector("Z")],
    )
    action = induced_ad(model, h.vector("Y"))
    assert action == CMatrix([[0, 1], [0, 0]])


def test_induced_ad_zero_vector():
    model = _semisimple_model(c_times_sol_algebra())
    assert induced_ad(model, (gr(0),) * 4).is_zero()


def test_induced_ad_requires_invariant_isotropy():
    s = sol_algebra()
    model = HomogeneousModel(
        s,
        isotropy=[s.vector("Y")],
        complement=[s.vector("Z"), s.vector("T")],
    )
    with pytest.raises(NotSubalgebraInvariant):
        induced_ad(model, s.vector("Z"))


def test_isotropy_types():
    assert isotropy_type(_semisimple_model(c_times_sol_algebra())) is IsotropyType.SEMISIMPLE
    assert isotropy_type(heis_stabilizer_model(ParamExtension())) is IsotropyType.UNIPOTENT


def test_isotropy_type_mixed():
    # Y acting on an abelian ideal by a 2-Jordan block with eigenvalue 1:
    # neither nilpotent nor semisimple.
    mixed = LieAlgebra.from_table(
        ("A", "B", "C", "Y"),
        {
            ("Y", "A"): {"A": 1},
            ("Y", "B"): {"A": 1, "B": 1},
        },
    )
    model = HomogeneousModel(
        mixed,
        isotropy=[mixed.vector("Y")],
        complement=[mixed.vector("A"), mixed.vector("B"), mixed.vector("C")],
    )
    assert isotropy_type(model) is IsotropyType.MIXED


def test_isotropy_type_wrong_dimension():
    a = c_times_sol_algebra()
    model = HomogeneousModel(
        a,
        isotropy=[a.vector("X"), a.vector("Y")],
        complement=[a.vector("Z"), a.vector("T")],
    )
    with pytest.raises(WrongIsotropyDimension):
        isotropy_type(model)


def test_invariant_forms_trivial_isotropy():
    from holriem.catalog import abelian3_algebra

    model = HomogeneousModel(
        abelian3_algebra(),
        isotropy=[],
        complement=[abelian3_algebra().basis_vector(k) for k in range(3)],
    )
    assert len(invariant_forms(model)) == 6


def test_invariant_forms_semisimple_weights():
    model = _semisimple_model(c_times_sol_algebra())
    forms = invariant_forms(model)
    assert len(forms) == 2
    # The solution space is spanned by the (X,X) slot and the Z-T pairing.
    basis_grams = [f.gram for f in forms]
    expected_span = [
        CMatrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
        CMatrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
    ]
    flatten = lambda m: [v for row in m.entries for v in row]
    got = span_basis([flatten(m) for m in basis_grams])
    want = span_basis([flatten(m) for m in expected_span])
    assert got == want


def test_invariant_forms_unipotent_contains_adapted_gram():
    model = heis_stabilizer_model(ParamExtension(1, 2, -3, gr(0, 1)))
    forms = invariant_forms(model)
    assert len(forms) == 2
    flatten = lambda m: [v for row in m.entries for v in row]
    target = flatten(adapted_gram_unipotent())
    span = [flatten(f.gram) for f in forms]
    assert in_span(span, tuple(target))
    # Sanity: the induced action is the adapted-frame nilpotent generator.
    assert induced_ad(model, model.isotropy[0]) == unipotent_isotropy_generator()


def test_check_invariance():
    good = _semisimple_model(c_ltimes_heis_algebra())
    assert check_invariance(good)
    bad = _semisimple_model(
        c_ltimes_heis_algebra(),
        form_entries={("X", "X"): 1, ("Z", "Z"): 1, ("T", "T"): 1},
    )
    assert not check_invariance(bad)


def test_check_invariance_missing_form():
    h = heis_algebra()
    model = HomogeneousModel(
        h, isotropy=[h.vector("Y")], complement=[h.vector("X"), h.vector("Z")]
    )
    with pytest.raises(MissingForm):
        check_invariance(model)


def test_check_invariance_trivial_isotropy():
    from holriem.catalog import abelian3_algebra

    a = abelian3_algebra()
    model = HomogeneousModel(
        a,
        isotropy=[],
        complement=[a.basis_vector(k) for k in range(3)],
        quotient_form=QuadraticForm.diagonal([1, 2, 3]),
    )
    assert check_invariance(model)


def test_subalgebra_stabilizing_leaf():
    g = c_ltimes_heis_algebra()
    leaf = [g.vector("Y"), g.vector("X"), g.vector("Z")]
    result = subalgebra_stabilizing(g, leaf)
    assert len(result.basis) == 3
    assert result.bracket_closed
    assert in_span(result.basis, g.vector("Y"))
    for v in leaf:
        assert in_span(result.basis, v)


def test_subalgebra_stabilizing_full_space():
    g = sol_algebra()
    result = subalgebra_stabilizing(g, [g.basis_vector(k) for k in range(3)])
    assert len(result.basis) == 3 and result.bracket_closed


def test_subalgebra_stabilizing_central_line():
    from holriem.catalog import c_oplus_sl2_algebra

    g = c_oplus_sl2_algebra()
    result = subalgebra_stabilizing(g, [g.vector("W")])
    assert len(result.basis) == 4  # a central line is stabilized by everything
    assert result.bracket_closed


def test_center_check_semisimple_isotropy():
    assert center_check_semisimple_isotropy(_semisimple_model(c_times_sol_algebra()))
    assert center_check_semisimple_isotropy(_semisimple_model(c_ltimes_heis_algebra()))
    assert not center_check_semisimple_isotropy(
        _semisimple_model(c2_semidirect_c2_algebra())
    )
    with pytest.raises(WrongIsotropyType):
        center_check_semisimple_isotropy(heis_stabilizer_model(ParamExtension()))


def test_model_validation_errors():
    s = sol_algebra()
    with pytest.raises(ValueError):
        HomogeneousModel(
            s, isotropy=[s.vector("Z")], complement=[s.vector("Y")]
        )  # sizes do not add up
    g = c_ltimes_heis_algebra()
    with pytest.raises(ValueError):
        HomogeneousModel(
            g,
            isotropy=[g.vector("Z"), g.vector("T")],  # [Z,T] = X leaves the span
            complement=[g.vector("X"), g.vector("Y")],
        )


def test_catalog_models_wellformed():
    for entry in build_catalog():
        if entry.model is None:
            continue
        for y in entry.model.isotropy:
            induced_ad(entry.model, y)  # well-defined for every generator
        assert check_invariance(entry.model)


def test_section4_models():
    first = c_oplus_sl2_model()
    assert isotropy_type(first) is IsotropyType.SEMISIMPLE
    assert induced_ad(first, first.isotropy[0]) == CMatrix.diagonal([0, 2, -2])
    second = c_times_sl2_model()
    assert isotropy_type(second) is IsotropyType.SEMISIMPLE
    assert check_invariance(second)
    assert center_check_semisimple_isotropy(second)


def test_isotropy_type_invariant_under_generator_rescaling():
    base = heis_stabilizer_model(ParamExtension(1, 2, 3, 4))
    for scale in (gr(2), gr(0, 1), gr(-3, 5)):
        rescaled = HomogeneousModel(
            base.algebra,
            isotropy=[tuple(scale * c for c in base.isotropy[0])],
            complement=base.complement,
            quotient_form=base.quotient_form,
        )
        assert isotropy_type(rescaled) is isotropy_type(base)
    semi = _semisimple_model(c_times_sol_algebra())
    rescaled = HomogeneousModel(
        semi.algebra,
        isotropy=[tuple(gr(0, 2) * c for c in semi.isotropy[0])],
        complement=semi.complement,
        quotient_form=semi.quotient_form,
    )
    assert isotropy_type(rescaled) is IsotropyType.SEMISIMPLE


def test_stabilizer_contains_centralizer():
    from holriem.liealg import bracket
    from holriem.linalg import CMatrix as _CM, kernel as _kernel

    g = c_ltimes_heis_algebra()
    w_basis = [g.vector("X"), g.vector("Z")]
    # Centralizer of W: rows of [ad(e_i) w]_k stacked over w and k.
    rows = []
    for w in w_basis:
        images = [bracket(g, g.basis_vector(i), w) for i in range(g.dim)]
        for component in range(g.dim):
            rows.append([images[i][component] for i in range(g.dim)])
    centralizer = _kernel(_CM(rows))
    result = subalgebra_stabilizing(g, w_basis)
    for v in centralizer:
        assert in_span(result.basis, v)
    assert result.bracket_closed


def test_invariant_forms_satisfy_equation_exactly():
    for model in (
        heis_stabilizer_model(ParamExtension(1, 2, -3, 4)),
        _semisimple_model(c_times_sol_algebra()),
        c_oplus_sl2_model(),
    ):
        actions = [induced_ad(model, y) for y in model.isotropy]
        for f in invariant_forms(model):
            for a in actions:
                assert (a.transpose() @ f.gram + f.gram @ a).is_zero()
