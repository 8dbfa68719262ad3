import itertools

import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from agpd.field import field_for_tower
from agpd.linalg import LinearMap, matmul, rank, rref, same_row_space

F9 = field_for_tower(3, 2)
F4 = field_for_tower(2, 2)


def naive_matmul(F, A, B):
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for i, j in itertools.product(range(A.shape[0]), range(B.shape[1])):
        acc = 0
        for k in range(A.shape[1]):
            acc = F.add(acc, F.mul(int(A[i, k]), int(B[k, j])))
        out[i, j] = acc
    return out


def brute_rank(F, M):
    """Rank as log_Q of the number of distinct vectors in the row span."""
    rows, _ = M.shape
    span = {tuple(matmul(F, np.array([c]), M)[0]) for c in itertools.product(range(F.order), repeat=rows)}
    r = 0
    while F.order**r < len(span):
        r += 1
    return r


mats = arrays(np.int64, st.tuples(st.integers(1, 3), st.integers(1, 4)), elements=st.integers(0, 8))


@st.composite
def compatible_pair(draw):
    r, k, c = (draw(st.integers(1, 4)) for _ in range(3))
    A = draw(arrays(np.int64, (r, k), elements=st.integers(0, 8)))
    B = draw(arrays(np.int64, (k, c), elements=st.integers(0, 8)))
    return A, B


@given(compatible_pair())
def test_matmul_matches_naive(pair):
    A, B = pair
    assert np.array_equal(matmul(F9, A, B), naive_matmul(F9, A, B))


@given(mats)
def test_rank_matches_span_size(M):
    assert rank(F9, M) == brute_rank(F9, M)


@given(mats)
def test_rref_shape(M):
    R, piv = rref(F9, M)
    for r, c in enumerate(piv):
        col = R[:, c]
        assert col[r] == 1 and np.count_nonzero(col) == 1
    assert not R[len(piv):].any()
    assert same_row_space(F9, M, R)


def test_linear_map_batches():
    rng = np.random.default_rng(0)
    M = rng.integers(0, 4, size=(3, 5))
    V = rng.integers(0, 4, size=(7, 5))
    assert np.array_equal(LinearMap(F4, M)(V), matmul(F4, V, M.T))
