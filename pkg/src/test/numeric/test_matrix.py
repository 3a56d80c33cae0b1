import random
from fractions import Fraction

import pytest

from src.main.errors import DimensionMismatch, NoSolution
from src.main.numeric.gaussian import GaussRational, I, ONE, ZERO
from src.main.numeric.matrix import ExactMatrix, hermitian_signature, solve_linear
from src.main.numeric.subspace import Subspace, intersection, kernel


def random_matrix(rng, rows, cols, bound=3):
    return ExactMatrix([[Fraction(rng.randint(-bound, bound), rng.randint(1, 2)) for _ in range(cols)]
                        for _ in range(rows)])


def test_solve_identity():
    solution = solve_linear(ExactMatrix.identity(3), ExactMatrix.column([1, 0, 0]))
    assert solution.particular == ExactMatrix.column([1, 0, 0])
    assert solution.kernel == []


def test_solve_zero_matrix():
    solution = solve_linear(ExactMatrix.zeros(2, 2), ExactMatrix.zeros(2, 1))
    assert solution.kernel_dimension == 2


def test_solve_single_row():
    solution = solve_linear(ExactMatrix([[1, 1]]), ExactMatrix.column([1]))
    assert solution.kernel == [[ONE, GaussRational(-1)]]
    assert solution.particular == ExactMatrix.column([1, 0])


def test_inconsistent_system():
    with pytest.raises(NoSolution):
        solve_linear(ExactMatrix([[1, 1], [1, 1]]), ExactMatrix.column([0, 1]))
    with pytest.raises(DimensionMismatch):
        solve_linear(ExactMatrix.identity(2), ExactMatrix.column([1, 2, 3]))


def test_rank_nullity_on_random_matrices():
    rng = random.Random(11)
    for _ in range(60):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = random_matrix(rng, rows, cols)
        assert m.rank() + len(m.nullspace()) == cols
        for v in m.nullspace():
            assert m @ ExactMatrix.column(v) == ExactMatrix.zeros(rows, 1)


def test_determinant_and_inverse():
    m = ExactMatrix([[2, 1], [1, 1]])
    assert m.determinant() == 1
    assert m @ m.inverse() == ExactMatrix.identity(2)
    with pytest.raises(NoSolution):
        ExactMatrix([[1, 2], [2, 4]]).inverse()


def test_complex_matrix_operations():
    m = ExactMatrix([[1, I], [-I, 2]])
    assert m.is_hermitian()
    assert m.adjoint() == m
    assert m.determinant() == 1


def test_hermitian_signature_examples():
    assert hermitian_signature(ExactMatrix.diagonal([1, -2, 0])) == (1, 1, 1)
    # zero diagonal, off-diagonal coupling
    assert hermitian_signature(ExactMatrix([[0, 1], [1, 0]])) == (1, 1, 0)
    assert hermitian_signature(ExactMatrix([[0, I], [-I, 0]])) == (1, 1, 0)
    assert hermitian_signature(ExactMatrix.zeros(3, 3)) == (0, 0, 3)
    with pytest.raises(ValueError):
        hermitian_signature(ExactMatrix([[1, 2], [3, 4]]))


def test_signature_invariant_under_triangular_congruence():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(1, 4)
        diag = [rng.choice([-2, -1, 0, 1, 3]) for _ in range(n)]
        h = ExactMatrix.diagonal(diag)
        rows = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = GaussRational(rng.choice([1, 2, -1]), rng.choice([0, 1]))
            for j in range(i + 1, n):
                rows[i][j] = GaussRational(rng.randint(-2, 2), rng.randint(-2, 2))
        p = ExactMatrix(rows)
        congruent = p.adjoint() @ h @ p
        expected = (sum(1 for d in diag if d > 0), sum(1 for d in diag if d < 0),
                    sum(1 for d in diag if d == 0))
        assert hermitian_signature(congruent) == expected


def test_subspace_reduce_and_express():
    space = Subspace(3, [{0: ONE, 1: ONE}, {1: ONE}])
    assert space.dim == 2
    assert space.contains({0: GaussRational(2)})
    assert not space.contains({2: ONE})
    assert space.express({0: ONE}) == {0: ONE, 1: GaussRational(-1)}
    assert space.add({0: ONE, 1: GaussRational(2)}) is not None
    assert space.pivots() == [0, 1]


def test_kernel_and_intersection():
    images = [{0: ONE}, {0: ONE}, {1: ONE}]
    assert kernel(images, 2) == [{0: ONE, 1: GaussRational(-1)}]
    assert kernel([{0: ONE}, {1: ONE}], 2) == []
    meet = intersection(3, [{0: ONE}, {1: ONE}], [{1: ONE, 0: ONE}, {2: ONE}])
    assert len(meet) == 1
    assert Subspace(3, meet).contains({0: ONE, 1: ONE})
