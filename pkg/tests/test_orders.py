import pytest
from hypothesis import given, settings, strategies as st

from agelab.orders import (
    MultiIndex, ZERO, principal2_cmp, principal4_cmp, revlex_cmp, size, weight,
)

eps = MultiIndex.eps


# independent oracle: dense vectors, compared straight from the definitions
def dense(i, n=12):
    return [i[s] for s in range(1, n + 1)]


def oracle_revlex(i, j):
    for a, b in zip(dense(i), dense(j)):
        if a != b:
            return 1 if a > b else -1
    return 0


def test_weight_and_size():
    assert weight(eps(3)) == 3 and size(eps(3)) == 1
    two = MultiIndex({1: 2, 4: 1})
    assert weight(two) == 6 and size(two) == 3
    assert weight(ZERO) == 0 and size(ZERO) == 0


def test_revlex_examples():
    assert revlex_cmp(eps(1), eps(2)) == 1
    i = MultiIndex({2: 1, 5: 3})
    assert revlex_cmp(i, i) == 0
    assert revlex_cmp(eps(2), MultiIndex({1: 3})) == -1


def test_principal2_examples():
    assert principal2_cmp((eps(2), ZERO), (eps(1), eps(5))) == 1
    assert principal2_cmp((eps(1), ZERO), (eps(1), ZERO)) == 0
    assert principal2_cmp((eps(1), eps(2)), (eps(1), eps(3))) == 1


def test_principal4_examples():
    a = (ZERO, ZERO, eps(1), ZERO)
    b = (eps(9), eps(9), ZERO, ZERO)
    assert principal4_cmp(a, b) == 1
    assert principal4_cmp(a, a) == 0
    assert principal4_cmp((ZERO, ZERO, ZERO, eps(2)), (ZERO, ZERO, eps(2), ZERO)) == 1


def test_subtraction_guard():
    assert eps(2) + eps(2) - eps(2) == eps(2)
    with pytest.raises(ValueError):
        eps(1) - eps(2)
    with pytest.raises(ValueError):
        MultiIndex({0: 1})
    with pytest.raises(ValueError):
        ZERO.min_position()


mi = st.dictionaries(st.integers(1, 6), st.integers(0, 3), max_size=4).map(MultiIndex)


@given(mi, mi)
def test_revlex_matches_oracle(i, j):
    assert revlex_cmp(i, j) == oracle_revlex(i, j)


@given(mi, mi)
def test_additivity(i, j):
    assert weight(i + j) == weight(i) + weight(j)
    assert size(i + j) == size(i) + size(j)


pairs = st.tuples(mi, mi)
quads = st.tuples(mi, mi, mi, mi)


@pytest.mark.parametrize("cmp, strat", [(revlex_cmp, mi), (principal2_cmp, pairs), (principal4_cmp, quads)])
def test_total_and_transitive(cmp, strat):
    @settings(max_examples=300)
    @given(strat, strat, strat)
    def check(a, b, c):
        assert cmp(a, b) == -cmp(b, a)
        assert (cmp(a, b) == 0) == (a == b)
        if cmp(a, b) >= 0 and cmp(b, c) >= 0:
            assert cmp(a, c) >= 0
    check()


@given(pairs, pairs)
def test_principal2_refines_weight(a, b):
    if weight(a[0]) > weight(b[0]):
        assert principal2_cmp(a, b) == 1


@given(quads, quads)
def test_principal4_refines_weight(a, b):
    if weight(a[2] + a[3]) > weight(b[2] + b[3]):
        assert principal4_cmp(a, b) == 1
