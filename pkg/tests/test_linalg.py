import random

import pytest

from ppcalc.linalg import GF, QQ, DimensionMismatch, Mat, Subspace, quotient_basis

F2 = GF(2)
F3 = GF(3)


def rand_mat(field, rows, cols, rng):
    if field.is_prime_field:
        return Mat.from_rows(
            field, [[rng.randrange(field.p) for _ in range(cols)] for _ in range(rows)]
        )
    return Mat.from_rows(
        field, [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
    )


def test_rref_repeated_row_f2():
    m = Mat.from_rows(F2, [[1, 1], [1, 1]])
    red, piv = m.rref()
    assert red.to_rows() == [[1, 1], [0, 0]]
    assert piv == [0]


def test_rref_identity_qq():
    m = Mat.identity(QQ, 3)
    red, piv = m.rref()
    assert red == m
    assert piv == [0, 1, 2]


def test_rref_hand_reduction_qq():
    # swap rows, scale, eliminate: [[0,2],[1,3]] -> [[1,0],[0,1]]
    m = Mat.from_rows(QQ, [[0, 2], [1, 3]])
    red, piv = m.rref()
    assert red == Mat.identity(QQ, 2)
    assert piv == [0, 1]


@pytest.mark.parametrize("field", [F2, F3, QQ])
def test_rref_idempotent(field):
    rng = random.Random(7)
    for _ in range(25):
        m = rand_mat(field, rng.randrange(1, 5), rng.randrange(1, 5), rng)
        red, piv = m.rref()
        again, piv2 = red.rref()
        assert red == again and piv == piv2


@pytest.mark.parametrize("field", [F2, F3, QQ])
def test_rank_nullity(field):
    rng = random.Random(11)
    for _ in range(30):
        r, c = rng.randrange(1, 6), rng.randrange(1, 6)
        m = rand_mat(field, r, c, rng)
        assert m.rank() + m.kernel().rows == r


def test_kernel_members_annihilate():
    rng = random.Random(3)
    for _ in range(20):
        m = rand_mat(F3, rng.randrange(1, 6), rng.randrange(1, 6), rng)
        ker = m.kernel()
        if ker.rows:
            assert (ker @ m).is_zero()


def test_kernel_of_zero_matrix_is_full():
    ker = Mat.zeros(F2, 2, 2).kernel()
    assert Subspace.from_vectors(F2, 2, ker) == Subspace.full(F2, 2)


def test_intersect_complementary_lines():
    u = Subspace.from_vectors(QQ, 2, [[1, 0]])
    v = Subspace.from_vectors(QQ, 2, [[0, 1]])
    assert u.intersect(v).dim == 0


def test_modular_dimension_identity_seeded():
    # dim(U+V) + dim(U cap V) == dim U + dim V, 50 seeded pairs in dim 5 over F3.
    rng = random.Random(2024)

    def rand_vectors():
        return [
            [rng.randrange(3) for _ in range(5)] for _ in range(rng.randrange(0, 4))
        ]

    for _ in range(50):
        u = Subspace.from_vectors(F3, 5, rand_vectors())
        v = Subspace.from_vectors(F3, 5, rand_vectors())
        s = u.sum_with(v)
        i = u.intersect(v)
        assert s.dim + i.dim == u.dim + v.dim
        assert s.contains(u) and s.contains(v)
        assert u.contains(i) and v.contains(i)


def test_subspace_equality_is_canonical():
    u = Subspace.from_vectors(F3, 3, [[1, 1, 0], [0, 1, 1]])
    v = Subspace.from_vectors(F3, 3, [[1, 0, 2], [2, 2, 0]])
    # same span given by different spanning sets
    assert u == v
    assert u.basis == v.basis


def test_membership_and_reduce():
    u = Subspace.from_vectors(F2, 3, [[1, 0, 1]])
    assert u.contains_vector(Mat.from_rows(F2, [[1, 0, 1]]))
    assert not u.contains_vector(Mat.from_rows(F2, [[1, 1, 0]]))
    red = u.reduce(Mat.from_rows(F2, [[1, 1, 1]]))
    assert red == Mat.from_rows(F2, [[0, 1, 0]])


def test_solve_left_and_inverse():
    a = Mat.from_rows(QQ, [[2, 1], [1, 1]])
    inv = a.inverse()
    assert inv @ a == Mat.identity(QQ, 2)
    b = Mat.from_rows(QQ, [[1, 0]])
    x = a.solve_left(b)
    assert x @ a == b
    # inconsistent system
    sing = Mat.from_rows(QQ, [[1, 1], [1, 1]])
    assert sing.solve_left(Mat.from_rows(QQ, [[1, 0]])) is None


def test_quotient_basis():
    inner = Subspace.from_vectors(F3, 3, [[1, 0, 0]])
    outer = Subspace.full(F3, 3)
    reps = quotient_basis(inner, outer)
    assert len(reps) == 2
    span = inner
    for r in reps:
        span = span.sum_with(Subspace.from_vectors(F3, 3, r))
    assert span == outer
    with pytest.raises(DimensionMismatch):
        quotient_basis(outer, inner)


def test_ambient_mismatch_errors():
    u = Subspace.full(F2, 2)
    v = Subspace.full(F2, 3)
    with pytest.raises(DimensionMismatch):
        u.sum_with(v)
    with pytest.raises(DimensionMismatch):
        u.intersect(v)


def test_power_and_trace():
    n = Mat.from_rows(F2, [[0, 1], [0, 0]])
    assert n.power(2).is_zero()
    assert n.power(0) == Mat.identity(F2, 2)
    assert Mat.from_rows(QQ, [[2, 5], [0, 3]]).trace() == 5


def test_gf2_packed_rref_matches_generic():
    from ppcalc.linalg import _gf2_rref, _gf_rref
    import numpy as np

    rng = random.Random(99)
    for trial in range(10):
        r = rng.randrange(1, 90)
        c = rng.randrange(1, 200)
        a = np.array(
            [[rng.randrange(2) for _ in range(c)] for _ in range(r)], dtype=np.int64
        )
        fast, piv_fast = _gf2_rref(a)
        slow, piv_slow = _gf_rref(a, 2)
        assert piv_fast == piv_slow
        assert (fast == slow).all()
