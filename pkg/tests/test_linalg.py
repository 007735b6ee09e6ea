from fractions import Fraction

from hypothesis import given, strategies as st

from agelab.linalg import Echelon, nullspace, rank, rref

F = Fraction

rows_st = st.lists(
    st.dictionaries(st.integers(0, 5), st.fractions(max_denominator=3).filter(bool), max_size=4),
    max_size=6,
)


def dot(r, v):
    return sum((c * v.get(k, 0) for k, c in r.items()), F(0))


def test_small_rank_and_kernel():
    rows = [{0: F(1), 1: F(2)}, {0: F(2), 1: F(4)}, {2: F(1)}]
    assert rank(rows) == 2
    ker = nullspace(rows, [0, 1, 2])
    assert ker == [{1: F(1), 0: F(-2)}]


@given(rows_st)
def test_rank_nullity(rows):
    cols = list(range(6))
    ker = nullspace(rows, cols)
    assert rank(rows) + len(ker) == len(cols)
    for v in ker:
        assert all(dot(r, v) == 0 for r in rows)
    assert rank(ker) == len(ker)


@given(rows_st)
def test_echelon_agrees_with_rref(rows):
    ech = Echelon(rows)
    assert len(ech) == len(rref(rows)[1])
    for r in rows:
        assert ech.contains(r)
