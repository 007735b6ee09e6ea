from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from agelab.cohomology import (
    Cochain1, Cochain2, coboundary, cocycle_space_dim, cyclic_sum, interior_pairs, is_cocycle,
    normalize_cocycle, standard_cocycle,
)
from agelab.lie_core import E, H, P, Q, Z, GenRef, generators


def test_standard_values():
    f = standard_cocycle()
    assert f(H(3), H(-3)) == 3
    assert f(H(3), H(-2)) == 0
    assert f(P(1), Q(-1)) == 0
    assert is_cocycle(f, 4)[0]


def test_antisymmetric_storage():
    f = Cochain2({(E(1), P(-1)): 1})
    assert f(P(-1), E(1)) == -1
    assert f(E(1), E(1)) == 0
    with pytest.raises(ValueError):
        Cochain2({(E(1), E(1)): 1})


def test_non_cocycle_is_reported():
    f = Cochain2({(E(1), P(-1)): 1})
    ok, bad = is_cocycle(f, 3)
    assert not ok
    # hand expansion: f(h0,[e1,p-1]) + f(p-1,[h0,e1]) + f(e1,[p-1,h0]) = 0 - 2 - 1
    assert cyclic_sum(f, H(0), E(1), P(-1)) == -3
    assert any({a, b, c} == {H(0), E(1), P(-1)} for a, b, c, _ in bad)


def test_zero_cochain():
    assert is_cocycle(Cochain2(), 2) == (True, [])


def test_coboundary_examples():
    g = Cochain1({P(0): 1})
    d = coboundary(g)
    assert d(E(1), Q(-1)) == 1
    assert all(d(Z(m), y) == 0 for m in range(-2, 3) for y in generators(-2, 2))
    assert coboundary(Cochain1())(E(1), Q(-1)) == 0


def test_normalize_standard_is_fixed():
    fp, g = normalize_cocycle(standard_cocycle(), 3)
    assert not g.values
    assert all(fp(a, b) == standard_cocycle()(a, b) for a, b in interior_pairs(3))


def test_normalize_rejects_non_cocycle():
    with pytest.raises(ValueError):
        normalize_cocycle(Cochain2({(E(1), P(-1)): 1}), 3)


g_st = st.dictionaries(
    st.builds(GenRef, st.sampled_from("EPQHZ"), st.integers(-10, 10)),
    st.fractions(max_denominator=3), max_size=12,
).map(Cochain1)


@settings(max_examples=10, deadline=None)
@given(g_st, st.integers(2, 5))
def test_coboundaries_are_cocycles(g, window):
    assert is_cocycle(coboundary(g), window)[0]


@settings(max_examples=8, deadline=None)
@given(g_st, st.booleans())
def test_normalize_perturbed(g0, with_standard):
    std = standard_cocycle()
    f = std + coboundary(g0) if with_standard else coboundary(g0)
    fp, g = normalize_cocycle(f, 5)
    dg = coboundary(g)
    for a, b in interior_pairs(5):
        assert f(a, b) - fp(a, b) == dg(a, b)
        if a.kind == b.kind == "H":
            assert fp(a, b) == (std(a, b) if with_standard else 0)
        else:
            assert fp(a, b) == 0


def test_space_window_range():
    with pytest.raises(ValueError):
        cocycle_space_dim(1)
    with pytest.raises(ValueError):
        cocycle_space_dim(7)


def test_space_window_two_standard_not_coboundary():
    assert cocycle_space_dim(2).standard_independent


def test_space_window_three_values():
    # Frozen after an independent count: every interior (h, h) pair carries its own class
    # (h is never a bracket, so those values are unconstrained), and nothing else survives.
    s = cocycle_space_dim(3)
    assert (s.dim_Z, s.dim_B, s.dim_H_interior, s.dim_H_off_hh) == (133, 52, 10, 0)
    assert len(s.basis) == s.dim_H_interior
