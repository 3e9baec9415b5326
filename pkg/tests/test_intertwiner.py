import random

import pytest

from conftest import rand_invertible_int, rand_rational_tuple
from tracesim import (BudgetExceededError, Field, IntertwinerBasis, Matrix, MatrixTuple,
                      find_invertible, gl_similar, intertwiner_basis)

FQ = Field.rational()
FR = Field.real64()


def basis_satisfies_equations(basis, x, y, tol=0.0):
    for b in basis.basis:
        for xi, yi in zip(x.matrices, y.matrices):
            if not (b * xi - yi * b).is_zero(tol):
                return False
        if basis.with_star:
            for xi, yi in zip(x.stars(), y.stars()):
                if not (b * xi - yi * b).is_zero(tol):
                    return False
    return True


def test_identity_tuple_has_full_intertwiner_space():
    x = MatrixTuple.of(Matrix.identity(FQ, 3))
    b = intertwiner_basis(x, x, with_star=True)
    assert b.dim == 9
    assert basis_satisfies_equations(b, x, x)


def test_commutant_of_distinct_diagonal_is_diagonal():
    x = MatrixTuple.of(Matrix.diagonal(FQ, [1, 2]))
    b = intertwiner_basis(x, x, with_star=False)
    assert b.dim == 2
    for m in b.basis:
        assert m.at(0, 1) == 0 and m.at(1, 0) == 0


def test_no_trace_pair_has_only_singular_intertwiners():
    x = MatrixTuple.of(Matrix.diagonal(FQ, [1, 2, 2]))
    y = MatrixTuple.of(Matrix.diagonal(FQ, [1, 1, 2]))
    b = intertwiner_basis(x, y, with_star=False)
    assert b.dim == 4
    assert find_invertible(b, trials=0) is None  # proof via the grid
    verdict = gl_similar(x, y, mode="deterministic", filters=False)
    assert verdict.verdict == "not_similar"


def test_basis_linear_independence():
    rng = random.Random(0)
    for _ in range(10):
        x = rand_rational_tuple(rng, 3, 2)
        b = intertwiner_basis(x, x, with_star=False)
        assert b.dim >= 1  # identity always intertwines
        stacked = Matrix.from_rows(FQ, [list(m.entries) for m in b.basis])
        assert stacked.rank() == b.dim


def test_basis_equations_hold_exactly_on_random_pairs():
    rng = random.Random(8)
    for _ in range(8):
        x = rand_rational_tuple(rng, 3, 2, -2, 2)
        p = rand_invertible_int(rng, FQ, 3, -2, 2)
        y = x.conjugated(p)
        for with_star in (False, True):
            b = intertwiner_basis(x, y, with_star)
            assert basis_satisfies_equations(b, x, y)


def test_basis_residuals_float():
    import numpy as np
    rng = random.Random(9)
    for _ in range(5):
        x = MatrixTuple.of(*(Matrix.from_rows(
            FR, [[rng.gauss(0, 1) for _ in range(4)] for _ in range(4)])
            for _ in range(2)))
        q, _ = np.linalg.qr(np.array([[rng.gauss(0, 1) for _ in range(4)]
                                      for _ in range(4)]))
        y = x.star_conjugated(Matrix.from_numpy(FR, q))
        b = intertwiner_basis(x, y, with_star=True)
        assert b.dim >= 1
        scale = max(1.0, x.maxabs())
        assert basis_satisfies_equations(b, x, y, tol=1e-10 * scale)


def test_scalar_tuple_space_is_at_least_n():
    x = MatrixTuple.of(Matrix.identity(FQ, 3).scale(5))
    b = intertwiner_basis(x, x, with_star=False)
    assert b.dim >= 3


# -- find_invertible ---------------------------------------------------------------

def test_full_matrix_space_contains_identity():
    basis = tuple(Matrix.unit(FQ, 2, i, j) for i in range(2) for j in range(2))
    b = IntertwinerBasis(2, False, FQ, basis)
    p = find_invertible(b, trials=0)
    assert p is not None and p.det() != 0


def test_nilpotent_line_is_proven_singular():
    b = IntertwinerBasis(2, False, FQ, (Matrix.unit(FQ, 2, 0, 1),))
    assert find_invertible(b, trials=0) is None
    assert find_invertible(b, seed=1, trials=10) is None


def test_diagonal_span_monte_carlo_finds_witness():
    basis = (Matrix.diagonal(FQ, [1, 0]), Matrix.diagonal(FQ, [0, 1]))
    b = IntertwinerBasis(2, False, FQ, basis)
    p = find_invertible(b, seed=0, trials=20)
    assert p is not None and p.det() != 0


def test_deterministic_grid_budget_guard():
    basis = tuple(Matrix.unit(FQ, 4, i, j) for i in range(4) for j in range(4))
    b = IntertwinerBasis(4, False, FQ, basis)
    with pytest.raises(BudgetExceededError):
        find_invertible(b, trials=0, budget=100)


def test_empty_basis_has_no_invertible():
    b = IntertwinerBasis(2, False, FQ, ())
    assert find_invertible(b, trials=0) is None


# -- gl_similar ----------------------------------------------------------------------

def test_gl_similar_reflexive():
    x = MatrixTuple.of(Matrix.diagonal(FQ, [1, 2, 3]))
    v = gl_similar(x, x)
    assert v.verdict == "similar"
    assert v.witness is not None


def test_gl_similar_nilpotent_scaling():
    x = MatrixTuple.of(Matrix.from_rows(FQ, [[0, 1], [0, 0]]))
    y = MatrixTuple.of(Matrix.from_rows(FQ, [[0, 2], [0, 0]]))
    v = gl_similar(x, y)
    assert v.verdict == "similar"
    p = v.witness
    for xi, yi in zip(x, y):
        assert p * xi == yi * p
    assert p.det() != 0


def test_gl_similar_rejects_rank_gap():
    x = MatrixTuple.of(Matrix.unit(FQ, 4, 0, 1) + Matrix.unit(FQ, 4, 2, 3))
    y = MatrixTuple.of(Matrix.unit(FQ, 4, 0, 1))
    v = gl_similar(x, y, mode="deterministic")
    assert v.verdict == "not_similar"
    assert "rank" in v.detail


def test_gl_similar_grid_proof_without_filters():
    x = MatrixTuple.of(Matrix.unit(FQ, 4, 0, 1) + Matrix.unit(FQ, 4, 2, 3))
    y = MatrixTuple.of(Matrix.unit(FQ, 4, 0, 1))
    v = gl_similar(x, y, mode="deterministic", filters=False)
    assert v.verdict == "not_similar"
    assert "grid" in v.detail


def test_gl_similar_symmetric_verdicts():
    rng = random.Random(1)
    for _ in range(6):
        x = rand_rational_tuple(rng, 2, 2, -2, 2)
        y = rand_rational_tuple(rng, 2, 2, -2, 2)
        vxy = gl_similar(x, y, mode="deterministic")
        vyx = gl_similar(y, x, mode="deterministic")
        assert vxy.verdict == vyx.verdict


def test_gl_round_trip_with_exact_witness():
    rng = random.Random(2)
    for _ in range(10):
        n = rng.randint(2, 4)
        d = rng.randint(1, 3)
        x = rand_rational_tuple(rng, n, d, -3, 3)
        p0 = rand_invertible_int(rng, FQ, n, -3, 3)
        y = x.conjugated(p0)
        v = gl_similar(x, y, mode="monte_carlo", seed=5)
        assert v.verdict == "similar"
        p = v.witness
        assert p.det() != 0
        for xi, yi in zip(x, y):
            assert p * xi == yi * p  # exact


def test_monte_carlo_negative_is_labeled_probable():
    x = MatrixTuple.of(Matrix.diagonal(FQ, [1, 2, 2]))
    y = MatrixTuple.of(Matrix.diagonal(FQ, [1, 1, 2]))
    v = gl_similar(x, y, mode="monte_carlo", filters=False)
    assert v.verdict == "not_similar_probable"


def test_float_round_trip():
    rng = random.Random(3)
    for _ in range(5):
        x = MatrixTuple.of(*(Matrix.from_rows(FR, [[rng.gauss(0, 1) for _ in range(3)]
                                                   for _ in range(3)]) for _ in range(2)))
        p_rows = [[rng.gauss(0, 1) for _ in range(3)] for _ in range(3)]
        p0 = Matrix.from_rows(FR, p_rows)
        y = x.conjugated(p0)
        v = gl_similar(x, y, mode="monte_carlo", seed=9)
        assert v.verdict == "similar"
        p = v.witness
        scale = max(1.0, p.maxabs()) * max(1.0, x.maxabs())
        for xi, yi in zip(x, y):
            assert (p * xi - yi * p).maxabs() <= 1e-9 * scale
