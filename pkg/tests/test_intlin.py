#  Copyright (c) torichow authors 2026-10-18.

from itertools import combinations
from math import gcd

import numpy as np
import pytest
import sympy

from torichow.types import InvalidInputError
from torichow.utils.intlin import (
    cokernel,
    det,
    hnf,
    identity,
    int_matrix,
    kernel,
    mat_mul,
    mat_vec,
    snf,
    solve,
    to_lists,
)


def determinantal_divisors(m: list) -> list:
    """``d₁⋯d_k = gcd of k×k minors``, the oracle for invariant factors."""
    matrix = sympy.Matrix(m)
    rows, cols = matrix.shape
    divisors = []
    previous = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for r in combinations(range(rows), k):
            for c in combinations(range(cols), k):
                g = gcd(g, int(matrix.extract(list(r), list(c)).det()))
        if not g:
            break
        divisors.append(g // previous)
        previous = g
    return divisors


def random_matrix(rng, rows: int, cols: int, bound: int = 6):
    return int_matrix(rng.integers(-bound, bound + 1, size=(rows, cols)).tolist())


def random_unimodular(rng, n: int, steps: int = 8):
    u = identity(n)
    for _ in range(steps):
        i, j = (int(v) for v in rng.choice(n, size=2, replace=False))
        u[i] += int(rng.integers(-2, 3)) * u[j]
        if rng.integers(2):
            u[[i, j]] = u[[j, i]]
    return u


class TestSnf:
    @pytest.mark.parametrize(
        "m, diagonal",
        [
            pytest.param([[1, 0], [0, 1]], (1, 1), id="identity"),
            pytest.param([[2, 0], [0, 4]], (2, 4), id="diag_2_4"),
            pytest.param([[2, 4], [6, 8]], (2, 4), id="minors"),
            pytest.param([[2, -3]], (1,), id="row"),
            pytest.param([[0, 0], [0, 0]], (), id="zero"),
        ],
    )
    def test_diagonal(self, m, diagonal):
        assert snf(int_matrix(m)).diagonal == diagonal

    def test_identity_transforms(self):
        result = snf(int_matrix([[1, 0], [0, 1]]))
        assert to_lists(result.u) == [[1, 0], [0, 1]]
        assert to_lists(result.v) == [[1, 0], [0, 1]]

    def test_empty(self):
        result = snf(int_matrix([], 0, 3))
        assert result.rank == 0
        assert result.v.shape == (3, 3)

    def test_random_axioms(self):
        rng = np.random.default_rng(2026)
        for _ in range(1000):
            rows, cols = rng.integers(1, 5, size=2)
            m = random_matrix(rng, int(rows), int(cols))
            result = snf(m)
            assert to_lists(mat_mul(mat_mul(result.u, m), result.v)) == to_lists(result.d)
            assert abs(det(result.u)) == 1
            assert abs(det(result.v)) == 1
            diagonal = result.diagonal
            assert all(d > 0 for d in diagonal)
            assert all(b % a == 0 for a, b in zip(diagonal, diagonal[1:]))
            off = result.d.copy()
            for i in range(result.rank):
                off[i, i] = 0
            assert not off.any()

    def test_random_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            m = random_matrix(rng, 3, 4)
            assert list(snf(m).diagonal) == determinantal_divisors(to_lists(m))


class TestHnf:
    def test_random(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            m = random_matrix(rng, 3, 4)
            h, t = hnf(m)
            assert to_lists(mat_mul(m, t)) == to_lists(h)
            assert abs(det(t)) == 1


class TestKernel:
    def test_example(self):
        k = kernel(int_matrix([[2, -3]]))
        assert k.shape == (2, 1)
        assert abs(int(k[0, 0])) == 3 and abs(int(k[1, 0])) == 2

    def test_random(self):
        rng = np.random.default_rng(13)
        for _ in range(200):
            m = random_matrix(rng, 2, 4)
            k = kernel(m)
            assert not mat_mul(m, k).any()
            assert k.shape[1] == 4 - snf(m).rank


class TestSolve:
    def test_example(self):
        m = int_matrix([[2, -3]])
        x = solve(m, [1])
        assert mat_vec(m, x) == (1,)

    def test_deterministic(self):
        m = int_matrix([[2, -3]])
        assert solve(m, [1]) == solve(m, [1])

    def test_no_solution(self):
        assert solve(int_matrix([[2, 4]]), [1]) is None

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            solve(int_matrix([[2, 4]]), [1, 2])

    def test_random(self):
        rng = np.random.default_rng(17)
        for _ in range(300):
            m = random_matrix(rng, 3, 3)
            x = rng.integers(-4, 5, size=3).tolist()
            b = mat_vec(m, x)
            y = solve(m, b)
            assert y is not None
            assert mat_vec(m, y) == b


class TestCokernel:
    def test_gale_example(self):
        # [B, Q] transposed for the P(6,4) stacky fan
        result = cokernel(int_matrix([[2, 1], [-3, 0], [0, 2]]))
        assert result.free_rank == 1
        assert result.torsion == ()
        assert not mat_mul(
            result.projection, int_matrix([[2, 1], [-3, 0], [0, 2]])
        ).any()

    def test_torsion(self):
        result = cokernel(int_matrix([[2, 0], [0, 4]]))
        assert result.free_rank == 0
        assert result.torsion == (2, 4)

    def test_random_order(self):
        rng = np.random.default_rng(19)
        for _ in range(100):
            m = random_matrix(rng, 3, 3)
            if not det(m):
                continue
            result = cokernel(m)
            assert result.free_rank == 0
            order = 1
            for t in result.torsion:
                order *= t
            assert order == abs(det(m))

    @pytest.mark.parametrize("shape", [(3, 3), (3, 4), (4, 2)])
    def test_unimodular_invariance(self, shape):
        rng = np.random.default_rng(67)
        rows, cols = shape
        for _ in range(30):
            m = random_matrix(rng, rows, cols)
            u, v = random_unimodular(rng, rows), random_unimodular(rng, cols)
            assert abs(det(u)) == abs(det(v)) == 1
            changed = cokernel(mat_mul(mat_mul(u, m), v))
            result = cokernel(m)
            assert changed.free_rank == result.free_rank
            assert changed.torsion == result.torsion
