"""Exact linear-algebra kernels: solve, kernel, minimal polynomials."""

import random
from fractions import Fraction

import pytest

from holriem.linalg import (
    CMatrix,
    CPoly,
    is_nilpotent_matrix,
    is_semisimple_matrix,
    kernel,
    min_poly,
    solve_linear,
    span_basis,
)
from holriem.scalars import gr


def test_solve_identity():
    b = (gr(3), gr(0, 1), gr(Fraction(1, 2)))
    solution = solve_linear(CMatrix.identity(3), b)
    assert solution.x == b
    assert solution.kernel_dim == 0


def test_solve_back_substitution():
    a = CMatrix([[gr(1), gr(0, 1)], [gr(0), gr(1)]])
    solution = solve_linear(a, (gr(0), gr(1)))
    assert solution.x == (gr(0, -1), gr(1))


def test_solve_inconsistent_rank2():
    # Third row is the sum of the first two, b sits outside the column space.
    a = CMatrix([[1, 0, 0], [0, 1, 0], [1, 1, 0]])
    assert a.rank() == 2
    assert solve_linear(a, (0, 0, 1)) is None


def test_solve_underdetermined_reports_kernel_dim():
    a = CMatrix([[1, 1, 0]])
    solution = solve_linear(a, (1,))
    assert solution.kernel_dim == 2
    assert a.apply(solution.x) == (gr(1),)


def test_solve_shape_mismatch():
    with pytest.raises(ValueError):
        solve_linear(CMatrix.identity(2), (1, 2, 3))


def test_kernel_zero_matrix():
    assert len(kernel(CMatrix.zeros(3, 3))) == 3


def test_kernel_invertible():
    assert kernel(CMatrix([[1, 1], [0, 1]])) == []


def test_kernel_rank_one():
    a = CMatrix([[1, 2, 3], [2, 4, 6], [-1, -2, -3]])
    assert a.rank() == 1
    vectors = kernel(a)
    assert len(vectors) == 2
    for v in vectors:
        assert not any(a.apply(v))


def test_min_poly_identity():
    t = CPoly.x()
    assert min_poly(CMatrix.identity(3)) == t - 1


def test_min_poly_nilpotent_block():
    a = CMatrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    t = CPoly.x()
    assert min_poly(a) == t * t * t


def test_min_poly_diagonal():
    t = CPoly.x()
    assert min_poly(CMatrix.diagonal([1, -1])) == t * t - 1


def test_nilpotent_examples():
    assert is_nilpotent_matrix(CMatrix([[0, 5, 7], [0, 0, -2], [0, 0, 0]]))
    assert not is_nilpotent_matrix(CMatrix.identity(3))
    # The adapted-frame flow generator: e2 -> e1, e3 -> -e2.
    n = CMatrix([[0, 1, 0], [0, 0, -1], [0, 0, 0]])
    assert is_nilpotent_matrix(n)


def test_semisimple_examples():
    assert is_semisimple_matrix(CMatrix.diagonal([1, 0, -1]))
    assert not is_semisimple_matrix(CMatrix([[0, 1], [0, 0]]))
    assert not is_semisimple_matrix(CMatrix([[1, 1], [0, 1]]))


def _random_matrix(rng, n):
    return CMatrix(
        [
            [
                gr(Fraction(rng.randint(-3, 3), rng.randint(1, 2)),
                   Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
                for _ in range(n)
            ]
            for _ in range(n)
        ]
    )


def test_min_poly_annihilates_random_matrices():
    rng = random.Random(20240811)
    for _ in range(25):
        n = rng.choice([2, 3])
        a = _random_matrix(rng, n)
        p = min_poly(a)
        acc = CMatrix.zeros(n, n)
        power = CMatrix.identity(n)
        for c in p.coeffs:
            acc = acc + power.scale(c)
            power = power @ a
        assert acc.is_zero()


def test_solve_residual_random():
    rng = random.Random(77)
    for _ in range(25):
        a = _random_matrix(rng, 3)
        b = tuple(gr(rng.randint(-3, 3)) for _ in range(3))
        solution = solve_linear(a, b)
        if solution is None:
            continue
        assert a.apply(solution.x) == b


def test_kernel_dimension_and_residual_random():
    rng = random.Random(99)
    for _ in range(25):
        a = _random_matrix(rng, 3)
        vectors = kernel(a)
        assert len(vectors) == 3 - a.rank()
        for v in vectors:
            assert not any(a.apply(v))
        assert len(span_basis(vectors)) == len(vectors)


def test_nilpotent_and_semisimple_exclusive_for_nonzero():
    rng = random.Random(5)
    seen_nilpotent = 0
    for _ in range(40):
        a = _random_matrix(rng, 2)
        if a.is_zero():
            continue
        if is_nilpotent_matrix(a):
            seen_nilpotent += 1
            assert not is_semisimple_matrix(a)
    upper = CMatrix([[0, 1], [0, 0]])
    assert is_nilpotent_matrix(upper) and not is_semisimple_matrix(upper)


def test_matrix_inverse_and_det():
    a = CMatrix([[1, gr(0, 1)], [0, 2]])
    assert a.det() == gr(2)
    assert a.inverse() @ a == CMatrix.identity(2)
    with pytest.raises(ZeroDivisionError):
        CMatrix([[1, 1], [1, 1]]).inverse()


def test_solve_overdetermined_consistent():
    a = CMatrix([[1], [1]])
    solution = solve_linear(a, (2, 2))
    assert solution.x == (gr(2),) and solution.kernel_dim == 0
    assert solve_linear(a, (2, 3)) is None
