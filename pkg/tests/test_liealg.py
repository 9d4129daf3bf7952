"""Lie algebra structure: brackets, invariants, classification."""

import random
from fractions import Fraction

import pytest

from holriem.catalog import (
    abelian3_algebra,
    c2_semidirect_c2_algebra,
    heis_algebra,
    sl2_algebra,
    sol_algebra,
)
from holriem.liealg import (
    AlgebraClass,
    LieAlgebra,
    NotClosed,
    NotUnimodular,
    WrongDimension,
    ad,
    bracket,
    center,
    classify_3d_unimodular,
    conjugate,
    derived_series,
    is_ideal,
    is_nilpotent,
    is_semisimple,
    is_solvable,
    is_unimodular,
    jacobi_defect,
    jacobi_witness,
    killing_form,
    lower_central_series,
    subalgebra,
)
from holriem.linalg import CMatrix, in_span
from holriem.scalars import gr


def test_bracket_examples():
    h = heis_algebra()
    assert bracket(h, h.vector("Y"), h.vector("Z")) == h.vector("X")
    s = sol_algebra()
    assert bracket(s, s.vector("Y"), s.vector("T")) == tuple(-c for c in s.vector("T"))


def test_bracket_antisymmetry_random():
    s = sol_algebra()
    rng = random.Random(101)
    for _ in range(20):
        x = tuple(gr(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(3))
        assert not any(bracket(s, x, x))
        y = tuple(gr(rng.randint(-4, 4)) for _ in range(3))
        xy = bracket(s, x, y)
        yx = bracket(s, y, x)
        assert xy == tuple(-c for c in yx)


def test_antisymmetry_enforced_at_construction():
    with pytest.raises(ValueError):
        LieAlgebra.from_table(("A", "B"), {("A", "A"): {"B": 1}})


def test_jacobi_defect_known_algebras():
    assert jacobi_defect(sl2_algebra()) == 0
    rotations = LieAlgebra.from_table(
        ("e1", "e2", "e3"),
        {("e1", "e2"): {"e3": 1}, ("e2", "e3"): {"e1": 1}, ("e3", "e1"): {"e2": 1}},
    )
    assert jacobi_defect(rotations) == 0


def test_jacobi_defect_corrupted_heis():
    # Adding [X,Z] = Z breaks exactly one triple: expansion by hand gives
    # [[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] = 0 + [X,X] + [-Z,Y] = X.
    corrupted = LieAlgebra.from_table(
        ("X", "Y", "Z"), {("Y", "Z"): {"X": 1}, ("X", "Z"): {"Z": 1}}
    )
    assert jacobi_defect(corrupted) == Fraction(1)
    assert jacobi_witness(corrupted) == (0, 1, 2)


def test_ad_examples():
    h = heis_algebra()
    assert ad(h, h.vector("X")).is_zero()
    s = sol_algebra()
    assert ad(s, s.vector("Y")) == CMatrix.diagonal([0, 1, -1])
    assert ad(s, (gr(0), gr(0), gr(0))).is_zero()


def test_killing_form_sl2():
    # Oracle: traces of the explicit 3x3 products of ad matrices.
    b = killing_form(sl2_algebra())
    assert b.gram == CMatrix([[8, 0, 0], [0, 0, 4], [0, 4, 0]])


def test_killing_form_degenerate_cases():
    assert killing_form(abelian3_algebra()).gram.is_zero()
    assert killing_form(heis_algebra()).gram.is_zero()


def test_series():
    assert derived_series(heis_algebra()) == (3, 1, 0)
    assert derived_series(sol_algebra()) == (3, 2, 0)
    assert derived_series(sl2_algebra()) == (3, 3)
    assert lower_central_series(heis_algebra()) == (3, 1, 0)
    assert lower_central_series(sol_algebra()) == (3, 2, 2)


def test_center():
    h = heis_algebra()
    central = center(h)
    assert len(central) == 1
    assert in_span([h.vector("X")], central[0])
    assert center(c2_semidirect_c2_algebra()) == []
    assert len(center(abelian3_algebra())) == 3


def test_predicates():
    s = sol_algebra()
    assert is_unimodular(s) and is_solvable(s) and not is_nilpotent(s)
    assert is_nilpotent(heis_algebra())
    assert is_semisimple(sl2_algebra()) and not is_solvable(sl2_algebra())
    assert not is_semisimple(sol_algebra())


def test_classification_tags():
    assert classify_3d_unimodular(abelian3_algebra()) is AlgebraClass.ABELIAN_C3
    assert classify_3d_unimodular(heis_algebra()) is AlgebraClass.HEIS
    assert classify_3d_unimodular(sol_algebra()) is AlgebraClass.SOL
    assert classify_3d_unimodular(sl2_algebra()) is AlgebraClass.SL2


def test_classification_errors():
    affine = LieAlgebra.from_table(("Y", "Z", "T"), {("Y", "Z"): {"Z": 1}})
    assert not is_unimodular(affine)
    with pytest.raises(NotUnimodular):
        classify_3d_unimodular(affine)
    with pytest.raises(WrongDimension):
        classify_3d_unimodular(c2_semidirect_c2_algebra())


def _random_invertible(rng):
    while True:
        p = CMatrix(
            [
                [
                    gr(Fraction(rng.randint(-2, 2), rng.randint(1, 2)),
                       Fraction(rng.randint(-2, 2), rng.randint(1, 2)))
                    for _ in range(3)
                ]
                for _ in range(3)
            ]
        )
        if p.det():
            return p


def test_classification_invariant_under_conjugation():
    # The acceptance suite runs the full 1000-sample sweep; this is a
    # smoke-level version across all four classes.
    rng = random.Random(424242)
    algebras = [
        (abelian3_algebra(), AlgebraClass.ABELIAN_C3),
        (heis_algebra(), AlgebraClass.HEIS),
        (sol_algebra(), AlgebraClass.SOL),
        (sl2_algebra(), AlgebraClass.SL2),
    ]
    for algebra, tag in algebras:
        for _ in range(10):
            p = _random_invertible(rng)
            assert classify_3d_unimodular(conjugate(algebra, p)) is tag


def test_conjugation_preserves_jacobi():
    rng = random.Random(7)
    p = _random_invertible(rng)
    assert jacobi_defect(conjugate(sl2_algebra(), p)) == 0


def test_subalgebra_restriction():
    s = sol_algebra()
    sub = subalgebra(s, [s.vector("Z"), s.vector("T")])
    assert sub.dim == 2
    assert jacobi_defect(sub) == 0
    assert derived_series(sub) == (2, 0)


def test_subalgebra_not_closed():
    s = sl2_algebra()
    with pytest.raises(NotClosed):
        subalgebra(s, [s.vector("E"), s.vector("F")])


def test_subalgebra_dependent_generators():
    s = sol_algebra()
    with pytest.raises(ValueError):
        subalgebra(s, [s.vector("Z"), s.vector("Z")])


def test_is_ideal():
    s = sol_algebra()
    assert is_ideal(s, [s.vector("Z"), s.vector("T")])
    assert not is_ideal(s, [s.vector("Y")])


def test_center_vectors_have_zero_ad():
    for algebra in (heis_algebra(), abelian3_algebra(), c2_semidirect_c2_algebra()):
        for v in center(algebra):
            assert ad(algebra, v).is_zero()
