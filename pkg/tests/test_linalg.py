import numpy as np
from hypothesis import given, strategies as st

from surfalg.field import GF, QQ
from surfalg.linalg import Subspace, inverse, left_kernel, rank, rank_gf2, rref, solve_left

F2 = GF(2)


def test_rank_by_hand():
    M = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert rank(F2, M) == 2               # rows sum to zero over GF(2)
    assert rank(GF(3), M) == 3            # determinant 2 over the integers
    assert rank(QQ(), M.astype(object)) == 3


def test_solve_and_kernel_by_hand():
    M = np.array([[1, 0], [1, 1], [0, 1]])
    K = left_kernel(F2, M)
    assert K.shape == (1, 3) and list(K[0]) == [1, 1, 1]
    x = solve_left(F2, M, np.array([0, 1]))
    assert list(F2.matmul(x, M)) == [0, 1]
    assert solve_left(F2, np.array([[1, 1]]), np.array([1, 0])) is None


def test_inverse_singular():
    assert inverse(F2, np.array([[1, 1], [1, 1]])) is None
    I = inverse(GF(5), np.array([[2, 1], [1, 1]]))
    assert np.array_equal(GF(5).matmul(I, np.array([[2, 1], [1, 1]])), np.eye(2, dtype=np.int64))


FIELDS = [GF(2), GF(3), GF(4), GF(7)]


@st.composite
def matrices(draw, max_n=6):
    F = draw(st.sampled_from(FIELDS))
    n, m = draw(st.integers(1, max_n)), draw(st.integers(1, max_n))
    els = F.elements()
    M = np.array([[draw(st.sampled_from(els)) for _ in range(m)] for _ in range(n)], dtype=np.int64)
    return F, M


@given(matrices())
def test_rank_nullity(fm):
    F, M = fm
    r = rank(F, M)
    K = left_kernel(F, M)
    assert K.shape[0] == M.shape[0] - r
    assert not np.any(F.matmul(K, M)) if K.shape[0] else True
    assert rank(F, K) == K.shape[0] if K.shape[0] else True


@given(matrices())
def test_rref_row_space(fm):
    F, M = fm
    R, piv = rref(F, M)
    assert len(piv) == rank(F, M)
    S = Subspace(F, M.shape[1], M)
    assert S.contains_all(R[: len(piv)])
    for i, p in enumerate(piv):
        assert R[i, p] == F.one


@given(matrices(), st.data())
def test_solve_left_consistent(fm, data):
    F, M = fm
    x = np.array([data.draw(st.sampled_from(F.elements())) for _ in range(M.shape[0])], dtype=np.int64)
    b = F.matmul(x, M)
    y = solve_left(F, M, b)
    assert y is not None
    assert np.array_equal(F.matmul(y, M), b)


@given(st.integers(1, 70), st.integers(1, 70), st.randoms(use_true_random=False))
def test_bitpacked_rank_agrees(n, m, rnd):
    M = np.array([[rnd.randint(0, 1) for _ in range(m)] for _ in range(n)], dtype=np.int64)
    assert rank_gf2(M) == len(rref(F2, M)[1])
