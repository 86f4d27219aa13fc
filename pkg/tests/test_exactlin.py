import random

from fractions import Fraction

import pytest

from posetalg import exactlin
from posetalg.exactlin import (Matrix, PrimeField, QQ, coincide_as_subspaces,
                               field_from_spec, rank, rank_and_kernel)


def test_identity_over_gf5():
    F = PrimeField(5)
    m = Matrix.identity(2, F)
    r, kernel = rank_and_kernel(m)
    assert r == 2
    assert kernel == []


def test_one_by_two_kernel_over_q():
    m = Matrix(1, 2, [[1, 1]], QQ)
    r, kernel = rank_and_kernel(m)
    assert r == 1
    assert len(kernel) == 1
    # the kernel is spanned by (1, -1)
    assert coincide_as_subspaces(kernel, [(Fraction(1), Fraction(-1))], QQ)


def test_random_gf7_rank_nullity_and_kernel_oracle():
    F = PrimeField(7)
    rng = random.Random(11)
    for _ in range(20):
        entries = [[rng.randrange(7) for _ in range(9)] for _ in range(6)]
        m = Matrix(6, 9, entries, F)
        r, kernel = rank_and_kernel(m)
        assert r + len(kernel) == 9
        for v in kernel:
            assert all(F.is_zero(x) for x in m.mul_vector(list(v)))
        assert rank([list(v) for v in kernel], F) == len(kernel)


def test_coincide_scalar_multiple():
    assert coincide_as_subspaces([(1, 0)], [(2, 0)], QQ)
    assert not coincide_as_subspaces([(1, 0)], [(0, 1)], QQ)


def test_coincide_rejects_mismatched_lengths():
    with pytest.raises(ValueError):
        coincide_as_subspaces([(1, 0)], [(1, 0, 0)], QQ)


def test_coincide_random_recombination():
    rng = random.Random(7)
    for _ in range(10):
        a = [[Fraction(rng.randrange(-3, 4)) for _ in range(5)]
             for _ in range(3)]
        # invertible recombination: add multiples of rows to each other
        b = [list(r) for r in a]
        for _ in range(6):
            i, j = rng.randrange(3), rng.randrange(3)
            if i == j:
                continue
            c = Fraction(rng.randrange(1, 3))
            b[i] = [x + c * y for x, y in zip(b[i], b[j])]
        assert coincide_as_subspaces(a, b, QQ)


def test_rank_equals_rank_of_transpose():
    rng = random.Random(3)
    for _ in range(15):
        rows, cols = rng.randrange(1, 6), rng.randrange(1, 6)
        m = Matrix(rows, cols,
                   [[rng.randrange(-4, 5) for _ in range(cols)]
                    for _ in range(rows)], QQ)
        assert rank(m.entries, QQ) == rank(m.transpose().entries, QQ)


def test_gfp_and_q_ranks_agree_for_small_integer_matrices():
    # p exceeds every pivot denominator that can appear for entries in 0..3
    F = PrimeField(10007)
    rng = random.Random(5)
    for _ in range(15):
        entries = [[rng.randrange(4) for _ in range(6)] for _ in range(5)]
        assert rank(entries, QQ) == rank([[F.of(x) for x in row]
                                          for row in entries], F)


def test_prime_field_validation():
    with pytest.raises(ValueError):
        PrimeField(6)
    with pytest.raises(ValueError):
        PrimeField(1)
    assert PrimeField(2).inv(1) == 1
    assert PrimeField(7).inv(3) == 5


def test_field_from_spec():
    assert field_from_spec("rationals") is QQ
    assert field_from_spec("prime field", 5).p == 5
    with pytest.raises(ValueError):
        field_from_spec("rationals", 5)


def test_solve_coordinates():
    basis = [[Fraction(1), Fraction(0)], [Fraction(1), Fraction(1)]]
    coords = exactlin.solve_coordinates(basis, [Fraction(3), Fraction(2)], QQ)
    assert coords == [Fraction(1), Fraction(2)]
    assert exactlin.solve_coordinates([[Fraction(1), Fraction(0)]],
                                      [Fraction(0), Fraction(1)], QQ) is None
