import random

import pytest
from fractions import Fraction

from g2ks.errors import InconsistentSystemError, PreconditionError, SingularMatrixError
from g2ks.linalg import RFMatrix, clear_local_poles, linsolve, smith_local_valuations
from g2ks.poly import Poly
from g2ks.ratfunc import RatFunc, S, rf


def test_linsolve_identity():
    M = RFMatrix.identity(3)
    b = [S, S + 1, rf(4)]
    assert linsolve(M, b) == (S, S + 1, rf(4))


def test_linsolve_diagonal_scaling():
    M = RFMatrix([[S, 0], [0, S]])
    x = linsolve(M, [S, S * S])
    assert x == (rf(1), S)


def test_linsolve_overdetermined_consistent():
    M = RFMatrix([[S], [S * S]])
    x = linsolve(M, [S * S, S * S * S])
    assert x == (S,)


def test_linsolve_rank_deficient_vs_inconsistent_distinct():
    M = RFMatrix([[S, S], [S, S]])
    with pytest.raises(SingularMatrixError):
        linsolve(M, [S, S])
    M2 = RFMatrix([[S], [S * S]])
    with pytest.raises(InconsistentSystemError):
        linsolve(M2, [S * S, rf(1)])


def test_linsolve_round_trip_random():
    rng = random.Random(99)
    for _ in range(15):
        n = rng.randrange(1, 4)
        cols = rng.randrange(1, n + 1)
        while True:
            M = RFMatrix(
                [
                    [
                        RatFunc(Poly([rng.randrange(-3, 4) for _ in range(2)]))
                        for _ in range(cols)
                    ]
                    for _ in range(n)
                ]
            )
            if M.rank() == cols:
                break
        x = [RatFunc(Poly([rng.randrange(-3, 4), rng.randrange(-2, 3)])) for _ in range(cols)]
        b = [sum((M[i, j] * x[j] for j in range(cols)), rf(0)) for i in range(n)]
        assert linsolve(M, b) == tuple(x)


def test_matrix_product_and_hstack():
    A = RFMatrix([[1, 2], [3, 4]])
    B = RFMatrix([[S, 0], [0, S]])
    assert A * B == RFMatrix([[S, 2 * S], [3 * S, 4 * S]])
    assert RFMatrix.hstack([A, B]) == RFMatrix([[1, 2, S, 0], [3, 4, 0, S]])


def test_rank():
    assert RFMatrix([[S, S], [S, S]]).rank() == 1
    assert RFMatrix.identity(3).rank() == 3
    assert RFMatrix.zeros(2, 2).rank() == 0


def test_smith_diagonal():
    M = RFMatrix.diagonal([rf(1), S - 2, (S - 2) ** 2])
    assert smith_local_valuations(M, 2) == (0, 1, 2)


def test_smith_triangular():
    M = RFMatrix([[1, 1], [0, S - 2]])
    assert smith_local_valuations(M, 2) == (0, 1)


def test_smith_requires_square_and_regular():
    with pytest.raises(PreconditionError):
        smith_local_valuations(RFMatrix([[1, 0]]), 2)
    with pytest.raises(PreconditionError):
        smith_local_valuations(RFMatrix([[1 / (S - 2)]]), 2)


def test_smith_detects_identically_singular():
    M = RFMatrix([[S, S], [S, S]])
    with pytest.raises(SingularMatrixError):
        smith_local_valuations(M, 2)


def _random_unimodular_at(rng, n, s0):
    """Random product of elementary matrices that are invertible at s0."""
    M = RFMatrix.identity(n)
    for _ in range(4):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        E = [[rf(1) if r == c else rf(0) for c in range(n)] for r in range(n)]
        E[i][j] = RatFunc(Poly([rng.randrange(-2, 3), rng.randrange(-2, 3)]))
        M = M * RFMatrix(E)
    # a diagonal unit at s0: (s - s0 + 1) is invertible there
    D = RFMatrix.diagonal([(S - Fraction(s0) + 1) for _ in range(n)])
    return M * D


def test_smith_invariant_under_unimodular_factors():
    rng = random.Random(5)
    s0 = Fraction(2)
    M = RFMatrix.diagonal([rf(1), S - 2, (S - 2) ** 3])
    base = smith_local_valuations(M, s0)
    for _ in range(6):
        U = _random_unimodular_at(rng, 3, s0)
        V = _random_unimodular_at(rng, 3, s0)
        assert smith_local_valuations(U * M * V, s0) == base


def test_clear_local_poles():
    M = RFMatrix([[1 / (S - 2), 1], [0, (S - 2) ** 2]])
    cleared, power = clear_local_poles(M, 2)
    assert power == 1
    assert cleared[0, 0] == rf(1)
    assert cleared[1, 1] == (S - 2) ** 3
    same, zero = clear_local_poles(RFMatrix.identity(2), 2)
    assert zero == 0 and same == RFMatrix.identity(2)


def test_smith_regression_intertwiner_block_from_published_entries():
    # Rebuild the even-series block at (6,2) from its published closed-form
    # entries (diagonal eigenvalues and corner constant; the corner sign does
    # not affect valuations) and freeze the local Smith data at s0 = 2.
    st = 3 - S
    mu0 = st * (st + 1) / (S * (S + 1))
    mu2_anchor = st**2 * (3 * st - 1) * (3 * st + 1) / (S**2 * (3 * S - 1) * (3 * S + 1))
    half = Fraction(1, 2)
    mu2 = (
        ((st - 3) * half) * ((st - 1) * half) * ((st + 2) * half) * ((4 - st) * half)
        / (((S - 3) * half) * ((S - 1) * half) * ((S + 2) * half) * ((4 - S) * half))
    ) * mu2_anchor
    xi = 4 * st * (2 * S - 3) / (S * (S - 1) * (S + 2) * (3 * S - 1) * (3 * S + 1))
    block = RFMatrix([[mu0, xi], [0, mu2]])
    cleared, power = clear_local_poles(block, 2)
    assert power == 0
    assert smith_local_valuations(cleared, 2) == (0, 1)
