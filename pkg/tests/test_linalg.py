from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfext.errors import FieldMismatchError
from hopfext.fields import GF, QQ
from hopfext.linalg import Matrix, Subspace, kernel, membership, quotient, solve


def qmat(rows):
    return Matrix(QQ, [[F(x) for x in r] for r in rows])


def test_kernel_zero_map():
    assert qmat([[0]]).kernel().dim == 1


def test_kernel_identity():
    assert Matrix.identity(QQ, 3).kernel().dim == 0


def test_kernel_rank_one():
    # [[1,2],[2,4]] has kernel spanned by (-2, 1)
    k = qmat([[1, 2], [2, 4]]).kernel()
    assert k.dim == 1
    assert k.contains([F(-2), F(1)])


def test_kernel_rank_nullity():
    m = qmat([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert m.rank() + m.kernel().dim == m.ncols


def test_solve_identity():
    b = [F(3), F(-1)]
    assert Matrix.identity(QQ, 2).solve(b) == b


def test_solve_pivot_convention():
    # free variable set to zero under canonical pivoting
    assert qmat([[1, 1]]).solve([F(1)]) == [F(1), F(0)]


def test_solve_inconsistent():
    assert qmat([[0]]).solve([F(1)]) is None


def test_membership():
    s = Subspace(QQ, 2, [[F(1), F(2)]])
    assert membership(s, [F(0), F(0)])
    assert membership(s, [F(2), F(4)])
    assert not membership(Subspace(QQ, 2, [[F(1), F(0)]]), [F(0), F(1)])


def test_quotient_trivial_and_full():
    q = quotient(2, Subspace(QQ, 2, []))
    assert q.dim == 2
    assert q.projection == Matrix.identity(QQ, 2)
    q2 = quotient(2, Subspace(QQ, 2, [[F(1), F(0)], [F(0), F(1)]]))
    assert q2.dim == 0


def test_quotient_projection_section():
    s = Subspace(QQ, 3, [[F(1), F(1), F(0)]])
    q = quotient(3, s)
    assert q.dim == 2
    assert (q.projection @ q.section) == Matrix.identity(QQ, 2)
    for b in s.basis:
        assert q.project(list(b)) == [F(0), F(0)]


def test_canonical_echelon_two_spanning_sets():
    a = Subspace(QQ, 3, [[F(1), F(2), F(3)], [F(0), F(1), F(1)]])
    b = Subspace(QQ, 3, [[F(1), F(3), F(4)], [F(2), F(5), F(7)]])
    assert a.basis == b.basis


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        qmat([[1]]) @ Matrix(GF(5), [[1]])


def test_fp_arithmetic():
    # (2,4,1) = 2*(1,2,3) mod 5, so the rank drops compared with Q
    m = Matrix(GF(5), [[1, 2, 3], [2, 4, 1]])
    assert m.rank() == 1
    assert Matrix(QQ, [[F(1), F(2), F(3)], [F(2), F(4), F(1)]]).rank() == 2
    m2 = Matrix(GF(5), [[1, 2, 3], [2, 4, 2]])
    assert m2.rank() == 2
    assert m2.kernel().dim == 1


def test_inverse():
    m = qmat([[2, 1], [1, 1]])
    inv = m.inverse()
    assert m @ inv == Matrix.identity(QQ, 2)
    assert qmat([[1, 2], [2, 4]]).inverse() is None


small_entries = st.integers(min_value=-4, max_value=4)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_entries, min_size=3, max_size=3), min_size=1, max_size=4))
def test_kernel_property(rows):
    m = qmat(rows)
    k = m.kernel()
    assert m.rank() + k.dim == m.ncols
    for v in k.basis:
        assert all(x == 0 for x in m.apply(list(v)))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_entries, min_size=4, max_size=4), min_size=1, max_size=3))
def test_quotient_invariant_random(rows):
    s = Subspace(QQ, 4, [[F(x) for x in r] for r in rows])
    q = quotient(4, s)
    assert (q.projection @ q.section) == Matrix.identity(QQ, q.dim)
    assert q.projection.kernel() == s


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_entries, min_size=3, max_size=3), min_size=1, max_size=3),
       st.lists(st.lists(small_entries, min_size=3, max_size=3), min_size=1, max_size=3))
def test_canonical_form_reordered(rows_a, rows_b):
    vs = [[F(x) for x in r] for r in rows_a + rows_b]
    ws = [[F(x) for x in r] for r in rows_b + rows_a]
    assert Subspace(QQ, 3, vs).basis == Subspace(QQ, 3, ws).basis
