import random

import pytest

from openkh.linalg import (
    Gf2Eliminator,
    bareiss_det,
    f2_cokernel,
    f2_in_span,
    f2_rank,
    int_rank,
    smith_normal_form,
)


def matmul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def test_f2_rank_basics():
    assert f2_rank([0b1, 0b10, 0b100, 0b1000, 0b10000]) == 5
    assert f2_rank([0, 0, 0]) == 0
    assert f2_rank([0b11, 0b11]) == 1


def test_f2_span_membership():
    rows = [0b101, 0b011]
    assert f2_in_span(0b110, rows)
    assert not f2_in_span(0b001, rows)
    e = Gf2Eliminator(rows)
    assert e.rank == 2
    assert e.contains(0)


def test_f2_cokernel_tracking():
    # relations e0, e1+e2 over 3 columns: quotient has basis {e2} and
    # [e1] = [e2]
    basis, classes = f2_cokernel([0b001, 0b110], 3)
    assert basis == [2]
    assert classes[0] == 0
    assert classes[1] == classes[2] == 1


def test_f2_cokernel_deterministic_leftmost():
    basis, classes = f2_cokernel([0b11], 2)
    # pivot at the leftmost column, so column 1 survives as the basis
    assert basis == [1]
    assert classes[0] == classes[1] == 1


def test_bareiss_det():
    assert bareiss_det([[2, 0], [0, 3]]) == 6
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([]) == 1
    rng = random.Random(1)
    for _ in range(50):
        n = rng.randint(1, 6)
        m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        # compare against cofactor expansion
        def cof(mat):
            if len(mat) == 1:
                return mat[0][0]
            return sum(
                (-1) ** j * mat[0][j] * cof(
                    [row[:j] + row[j + 1:] for row in mat[1:]]
                )
                for j in range(len(mat))
            )
        assert bareiss_det(m) == cof(m)


def test_int_rank():
    assert int_rank([[2, 4], [1, 2]]) == 1
    assert int_rank([[1, 0], [0, 1]]) == 2
    assert int_rank([]) == 0


def test_snf_examples():
    diag, _, _ = smith_normal_form([[0, 1], [1, 0]])
    assert diag == [1, 1]
    diag, _, _ = smith_normal_form([[0] * 3 for _ in range(3)])
    assert diag == [0, 0, 0]
    diag, _, _ = smith_normal_form([[2, 0], [0, 3]])
    assert diag == [1, 6]


def test_snf_random_properties():
    rng = random.Random(7)
    for _ in range(150):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        mat = [[rng.randint(-5, 5) for _ in range(m)] for _ in range(n)]
        diag, u, v = smith_normal_form(mat)
        prod = matmul(matmul(u, mat), v)
        for i in range(n):
            for j in range(m):
                want = diag[i] if i == j and i < len(diag) else 0
                assert prod[i][j] == want
        assert abs(bareiss_det(u)) == 1
        assert abs(bareiss_det(v)) == 1
        assert all(d >= 0 for d in diag)
        for a, b in zip(diag, diag[1:]):
            if a:
                assert b % a == 0
            else:
                assert b == 0
