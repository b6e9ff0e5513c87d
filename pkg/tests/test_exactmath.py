import random
from fractions import Fraction

import pytest

from orbitcal.exactmath import (
    REFUTATION,
    SOLUTION,
    ConsistencyWitness,
    SparseMatrix,
    det,
    integer_left_kernel,
    invert,
    rank,
    solve_or_refute,
)


def test_solution_for_trivial_system():
    w = solve_or_refute(SparseMatrix.from_rows([[1, 0]]), [0])
    assert w.kind == SOLUTION
    assert w.vector == (0, 0)


def test_refutation_for_zero_equals_one():
    w = solve_or_refute(SparseMatrix.from_rows([[0, 0]]), [1])
    assert w.kind == REFUTATION
    assert w.vector == (1,)


def test_refutation_for_proportional_rows():
    # 2*row1 - row2 gives 0 = -1
    A = SparseMatrix.from_rows([[1, 1], [2, 2]])
    w = solve_or_refute(A, [1, 3])
    assert w.kind == REFUTATION
    assert w.verify(A, [1, 3])
    assert w.vector == (-2, 1)


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        solve_or_refute(SparseMatrix.from_rows([[1, 0]]), [1, 2])
    with pytest.raises(ValueError):
        solve_or_refute(SparseMatrix(0, 0), [])


def _random_sparse(rng, rows, cols, density=0.4):
    m = SparseMatrix(rows, cols)
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                v = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                if v:
                    m.entries[(i, j)] = v
    return m


def test_witnesses_verify_on_random_systems():
    rng = random.Random(7)
    solutions = refutations = 0
    for _ in range(60):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        A = _random_sparse(rng, rows, cols)
        if rng.random() < 0.5:
            x = [Fraction(rng.randint(-4, 4)) for _ in range(cols)]
            v = A.mul_vector(x)  # consistent by construction
        else:
            v = [Fraction(rng.randint(-4, 4)) for _ in range(rows)]
        w = solve_or_refute(A, v)
        assert w.verify(A, v)
        if w.kind == SOLUTION:
            solutions += 1
            assert A.mul_vector(w.vector) == list(v)
        else:
            refutations += 1
            assert not any(A.left_mul_vector(w.vector))
            assert sum(u * b for u, b in zip(w.vector, v)) != 0
    assert solutions and refutations


def test_tampered_witnesses_fail_verification():
    A = SparseMatrix.from_rows([[1, 2], [0, 1]])
    v = [3, 1]
    w = solve_or_refute(A, v)
    assert w.kind == SOLUTION
    bumped = list(w.vector)
    bumped[0] += 1
    assert not ConsistencyWitness(SOLUTION, bumped).verify(A, v)
    assert not ConsistencyWitness(REFUTATION, [0, 0]).verify(A, v)


def test_rank_basic():
    assert rank(SparseMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3
    assert rank(SparseMatrix(3, 4)) == 0
    assert rank(SparseMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_rank_of_transpose_matches():
    rng = random.Random(11)
    for _ in range(40):
        A = _random_sparse(rng, rng.randint(1, 5), rng.randint(1, 5))
        assert rank(A) == rank(A.transpose())


def test_rank_with_fractional_entries():
    A = SparseMatrix.from_rows(
        [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]]
    )
    assert rank(A) == 1


def test_integer_left_kernel_examples():
    assert integer_left_kernel([[1], [2]]) == [(2, -1)]
    assert integer_left_kernel([[1, 0], [0, 1]]) == []
    assert integer_left_kernel([[0], [0]]) == [(1, 0), (0, 1)]


def test_integer_left_kernel_properties():
    rng = random.Random(3)
    for _ in range(40):
        rows, cols = rng.randint(1, 5), rng.randint(1, 4)
        M = [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)]
        basis = integer_left_kernel(M)
        for c in basis:
            prod = [sum(ci * M[i][j] for i, ci in enumerate(c)) for j in range(cols)]
            assert not any(prod)
        assert len(basis) == rows - rank(SparseMatrix.from_rows(M))


def test_sparse_and_dense_rank_paths_agree():
    from orbitcal.exactmath import _sparse_rank

    rng = random.Random(19)
    for _ in range(25):
        A = _random_sparse(rng, rng.randint(1, 8), rng.randint(1, 8), density=0.3)
        assert rank(A) == _sparse_rank(A)
    # the sparse path engages above the densification threshold
    big = SparseMatrix(150, 150)
    for k in range(149):
        big.entries[(k, k + 1)] = Fraction(k + 1)
    assert rank(big) == 149


def test_det_and_invert():
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[1, 2], [2, 4]]) == 0
    S = [[1, 1], [0, 1]]
    Sinv = invert(S)
    assert Sinv == [[Fraction(1), Fraction(-1)], [Fraction(0), Fraction(1)]]
    with pytest.raises(ValueError):
        invert([[1, 2], [2, 4]])
