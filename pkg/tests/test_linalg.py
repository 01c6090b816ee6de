import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from s4lie.errors import SolveError
from s4lie.fields import QQ
from s4lie.linalg import Matrix, Subspace, echelon_span, invert_matrix, kernel

ONE = mpq(1)


def m(rows):
    return Matrix.from_dense([[mpq(v) for v in r] for r in rows])


def test_kernel_of_rank_one_matrix():
    # ker [[1,1],[2,2]] = span{(1,-1)}
    ker = kernel(m([[1, 1], [2, 2]]).rows, 2, ONE)
    assert ker.dim == 1
    assert ker.rows == [{0: mpq(1), 1: mpq(-1)}]


def test_echelon_span_canonical():
    # span{(2,4),(1,2)} = span{(1,2)}
    s = echelon_span([[mpq(2), mpq(4)], [mpq(1), mpq(2)]], 2)
    assert s.dim == 1
    assert s.rows == [{0: mpq(1), 1: mpq(2)}]
    assert s.contains([mpq(-3), mpq(-6)])
    assert not s.contains([mpq(1), mpq(1)])


def test_coords_checked_and_unchecked():
    s = echelon_span([[mpq(1), mpq(0), mpq(1)], [mpq(0), mpq(1), mpq(1)]], 3)
    assert s.coords([mpq(2), mpq(3), mpq(5)]) == [mpq(2), mpq(3)]
    with pytest.raises(SolveError):
        s.coords([mpq(1), mpq(0), mpq(0)])
    # unchecked coordinates just read pivot positions
    assert s.coords([mpq(1), mpq(0), mpq(0)], check=False) == [mpq(1), mpq(0)]


def test_matmul_and_commutator():
    a = m([[0, 1], [0, 0]])
    b = m([[0, 0], [1, 0]])
    h = a.commutator(b)
    assert h == m([[1, 0], [0, -1]])
    assert a @ b == m([[1, 0], [0, 0]])


def test_apply():
    a = m([[1, 2], [3, 4]])
    assert a.apply([mpq(1), mpq(1)]) == [mpq(3), mpq(7)]
    assert a.apply_sparse({1: mpq(2)}) == {0: mpq(4), 1: mpq(8)}


def test_flatten_roundtrip():
    a = m([[0, 5], [7, 0]])
    assert Matrix.from_flat(a.flatten(), 2, 2) == a
    assert a.flatten() == {1: mpq(5), 2: mpq(7)}


def test_invert():
    a = m([[1, 2], [3, 4]])
    ainv = invert_matrix(a, ONE)
    assert a @ ainv == Matrix.identity(2, ONE)
    with pytest.raises(SolveError):
        invert_matrix(m([[1, 1], [1, 1]]), ONE)


def test_subspace_equality_is_canonical():
    s1 = echelon_span([[mpq(1), mpq(1)], [mpq(1), mpq(-1)]], 2)
    s2 = echelon_span([[mpq(0), mpq(3)], [mpq(2), mpq(0)]], 2)
    assert s1 == s2


small_mats = st.lists(
    st.lists(st.integers(-5, 5), min_size=4, max_size=4),
    min_size=2,
    max_size=6,
)


@settings(max_examples=60)
@given(small_mats)
def test_rank_nullity(rows):
    rows_q = [[mpq(v) for v in r] for r in rows]
    span = echelon_span(rows_q, 4)
    ker = kernel([dict(enumerate(r)) for r in rows_q], 4, ONE)
    assert span.dim + ker.dim == 4
    # kernel vectors really solve the system
    for kv in ker.rows:
        for r in rows_q:
            assert sum((r[c] * v for c, v in kv.items()), mpq(0)) == 0
