from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from agelab import lie_core
from agelab.lie_core import (
    E, H, K, P, Q, Z, GenRef, LieElement, bracket, bracket_lin, generators, invariant_form, loop_degree,
)

# --- independent oracle: the finite algebra as differential operators in one variable
# q = x, p = d/dx, e = (1/2) d^2/dx^2, h = -x d/dx, z = 1.  Operators are dicts
# {(a, b): c} meaning c * x^a d^b in normal order.

OPS = {
    "Q": {(1, 0): Fraction(1)},
    "P": {(0, 1): Fraction(1)},
    "E": {(0, 2): Fraction(1, 2)},
    "H": {(1, 1): Fraction(-1)},
    "Z": {(0, 0): Fraction(1)},
}


def _falling(n, k):
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _binom(n, k):
    return _falling(n, k) // _falling(k, k)


def op_mul(A, B):
    # (x^a d^b)(x^c d^e) = sum_k C(b,k) c!/(c-k)! x^{a+c-k} d^{b+e-k}
    out = {}
    for (a, b), c1 in A.items():
        for (c, e), c2 in B.items():
            for k in range(min(b, c) + 1):
                key = (a + c - k, b + e - k)
                out[key] = out.get(key, 0) + c1 * c2 * _binom(b, k) * _falling(c, k)
    return {k: v for k, v in out.items() if v}


def op_bracket(A, B):
    ab, ba = op_mul(A, B), op_mul(B, A)
    keys = set(ab) | set(ba)
    return {k: ab.get(k, 0) - ba.get(k, 0) for k in keys if ab.get(k, 0) != ba.get(k, 0)}


def decompose(op):
    out = {}
    for kind, basis in OPS.items():
        (key, c), = basis.items()
        if key in op:
            out[kind] = op[key] / c
    assert sum(1 for _ in op) == len(out)
    return out


def oracle_bracket(x, y):
    if x.kind == "K" or y.kind == "K":
        return LieElement()
    terms = [(GenRef(kind, x.mode + y.mode), c) for kind, c in decompose(op_bracket(OPS[x.kind], OPS[y.kind])).items()]
    if x.kind == y.kind == "H" and x.mode + y.mode == 0:
        terms.append((K, x.mode))
    return LieElement(terms)


def test_bracket_matches_operator_oracle():
    gens = generators(-3, 3, central=True)
    for x, y in product(gens, gens):
        assert bracket(x, y) == oracle_bracket(x, y), (x, y)


@pytest.mark.parametrize("x, y, expected", [
    (H(1), E(-1), "2*e(0)"),
    (H(2), H(-2), "2*k"),
    (P(3), Q(-3), "z(0)"),
    (E(5), P(7), "0"),
    (Z(2), Q(-9), "0"),
])
def test_bracket_examples(x, y, expected):
    assert str(bracket(x, y)) == expected


def test_bracket_lin_examples():
    x = LieElement({E(0): 1, H(1): 1})
    assert bracket_lin(x, LieElement.of(Q(0))) == LieElement.parse("p(0) - q(1)")
    assert not bracket_lin(x, x)
    assert not bracket_lin(LieElement(), x)


def test_invariant_form():
    assert invariant_form(H(0), H(0)) == 1
    assert invariant_form(P(0), Q(0)) == 0
    assert invariant_form(E(0), E(0)) == 0


def test_loop_degree():
    assert loop_degree(LieElement({E(3): 1, Z(3): 2})) == 3
    assert loop_degree(LieElement.of(K)) == 0
    assert loop_degree(LieElement({E(1): 1, Q(2): 1})) == "mixed"
    with pytest.raises(ValueError):
        loop_degree(LieElement())


def test_render_and_parse_roundtrip():
    x = LieElement({E(0): 2, H(-2): Fraction(-1, 3), K: 1})
    assert str(x) == "2*e(0) - 1/3*h(-2) + k"
    assert LieElement.parse(str(x)) == x
    assert LieElement.parse("-p(-1) + 3*z(4) - 3*z(4)") == LieElement.of(P(-1), -1)


def test_antisymmetry_and_jacobi_exhaustive_small():
    assert lie_core.antisymmetry_violations(5) == []
    assert lie_core.jacobi_violations(3) == []


def test_centrality():
    for y in generators(-4, 4, central=True):
        for n in range(-4, 5):
            assert not bracket(Z(n), y)
        assert not bracket(K, y)


def test_mutated_table_breaks_jacobi(monkeypatch):
    monkeypatch.setitem(lie_core.STRUCTURE, ("H", "P"), (2, "P"))
    assert lie_core.jacobi_violations(2)


gen_st = st.builds(GenRef, st.sampled_from("EPQHZ"), st.integers(-6, 6)) | st.just(K)
elem_st = st.lists(st.tuples(gen_st, st.fractions(max_denominator=4).filter(bool)), max_size=4).map(LieElement)


@given(gen_st, gen_st)
def test_antisymmetry_property(x, y):
    assert bracket(x, y) == -bracket(y, x)


@settings(max_examples=60)
@given(elem_st, elem_st, elem_st)
def test_jacobi_random_elements(x, y, z):
    assert not lie_core.jacobi_sum(x, y, z)


@given(gen_st, gen_st)
def test_grading(x, y):
    for g, _ in bracket(x, y):
        if g.kind == "K":
            assert x.mode + y.mode == 0
        else:
            assert g.mode == x.mode + y.mode
