from fractions import Fraction

import pytest

from agelab.lie_core import E, H, P, Q, Z, GenRef
from agelab.module_zoo import (
    ZSequence, imaginary_verma, induced, one_dim, quotient_Uh, quotient_Uq, verma, whittaker_block,
    whittaker_full, whittaker_M,
)
from agelab.orders import MultiIndex
from agelab.pbw_engine import ModuleElement, act, element, parse_element
from agelab.rng import SplitMix64
from agelab.selftest import second_instance, shaped_element
from agelab.simplicity_lab import (
    _Cols, check_induction_conditions, compute_N_subspace, descend_to_vacuum, find_primitive_mod,
    find_singular, least_admissible_l, random_element, replay, verify_degree_step, verify_quotient_iso,
)
from agelab.linalg import Echelon


def _span_contains(vectors, target):
    cols = _Cols()
    return Echelon(cols.vec(v) for v in vectors).contains(cols.vec(target))


@pytest.mark.parametrize("h,k", [(2, 3), (Fraction(-1, 2), 0)])
def test_verma_grade_one_singular(h, k):
    V = verma(h, k)
    basis = find_singular(V, 1, 3)
    assert _span_contains(basis, element(V, [(Z(-1), 1)]))
    # every grade-one singular vector is a combination of the four letters at mode -1
    for kind in "PEQ":
        assert _span_contains(basis, element(V, [(GenRef(kind, -1), 1)]))


def test_uh_has_no_singular_vectors():
    uh = quotient_Uh(1, 2)
    for s in (1, 2, 3):
        assert find_singular(uh, s, 3) == []


def test_primitive_modulo_z_submodule():
    V = verma(1, 1)
    gens = [element(V, [(GenRef(kind, -1), 1)]) for kind in "PQEZ"]
    found = find_primitive_mod(V, 2, 3, gens)
    assert _span_contains(found, element(V, [(E(-2), 1)]))


def test_uh_descent_certificate():
    uh = quotient_Uh(1, 2)
    cert = descend_to_vacuum(uh, parse_element(uh, "h(-1)^3 | w"))
    assert cert.ok and len(cert.steps) == 3 and replay(cert)
    assert [s.case for s in cert.steps] == ["uh_claim2"] * 3
    assert cert.terminal == 48 * uh.cyclic()


def test_uh_descent_needs_k():
    uh = quotient_Uh(1, 0)
    with pytest.raises(ValueError):
        descend_to_vacuum(uh, parse_element(uh, "h(-1) | w"))


def test_budget_status():
    uh = quotient_Uh(1, 2)
    cert = descend_to_vacuum(uh, parse_element(uh, "h(-1)^3 | w"), budget=1)
    assert cert.status == "budget" and len(cert.steps) == 1


def test_imaginary_descent_both_tails():
    rng = SplitMix64(5)
    for tail, r in (("zero_up", -1), ("zero_down", 1)):
        iv = imaginary_verma(2, 3, ZSequence.make({r: 4}, tail, r))
        for _ in range(20):
            cert = descend_to_vacuum(iv, random_element(iv, rng, 4, 3, 3))
            assert cert.ok and replay(cert) and all(s.matches for s in cert.steps)


def test_degree_step_shape_mismatch():
    W = whittaker_full({"p(0)": 1})
    with pytest.raises(ValueError, match="shape mismatch"):
        verify_degree_step(W, "ind_4", parse_element(W, "h(-1) ⊗ [ | w ]"))


@pytest.mark.parametrize("case", ["ind_1", "ind_2", "ind_3", "ind_4"])
def test_degree_steps_on_both_triples(case):
    rng = SplitMix64(17)
    for spec in (whittaker_full({"p(0)": 1, "q(1)": 2, "h(1)": -1}), second_instance(rng)):
        for _ in range(10):
            ok, predicted, actual = verify_degree_step(spec, case, shaped_element(spec, case, rng))
            assert ok and predicted == actual


def test_whittaker_descent_through_inner():
    W = whittaker_full({"p(0)": 1, "q(1)": 2})
    v = parse_element(W, "1 ⊗ [ h(0) e(-1) | w ]")
    assert not descend_to_vacuum(W, v).steps
    cert = descend_to_vacuum(W, v, through=True)
    assert cert.ok and replay(cert)
    assert set(cert.terminal.keys()) == {((), W.base.inner.cyclic_key)}
    assert {s.scope for s in cert.steps} == {"inner"}


def test_conditions_standard_whittaker():
    rep = check_induction_conditions((-1, -1, 1), whittaker_M({"p(0)": 1}), 0, 4)
    assert rep["a_injective"] and rep["b_ok"]


def test_conditions_detect_vanishing_p():
    rep = check_induction_conditions((-1, -1, 1), whittaker_M({}), 0, 3)
    assert not rep["a_injective"]


def test_conditions_reject_small_l():
    with pytest.raises(ValueError):
        check_induction_conditions((-1, -1, 1), whittaker_M({"p(0)": 1}), -1, 3)


def test_second_triple_admissible_l():
    inner = whittaker_block((0, 0, 1), {"p(1)": 1})
    assert least_admissible_l((0, 0, 1), inner, 3) == 1


def test_nspace_on_verma():
    V = verma(1, 1)
    # everything is killed by strictly positive modes at grade zero
    assert len(compute_N_subspace(V, (0, 0, 0, 0), 2, 0)) == 1
    # h(-1)v is not killed by h(1) once k != 0
    basis = compute_N_subspace(V, (-1, -1, 0, -1), 2, 1)
    assert not _span_contains(basis, element(V, [(H(-1), 1)]))
    assert _span_contains(basis, V.cyclic())


def test_quotient_iso_valid_and_invalid():
    rng = SplitMix64(9)
    z = ZSequence.make({0: 2}, "zero_up", 0)
    parent = imaginary_verma(1, 0, z)
    gens = [element(parent, [(H(-1), 1)])]
    ok, fails = verify_quotient_iso(quotient_Uq(1, 0, z), parent, "imaginary_to_Uq", gens, 60, rng)
    assert ok, fails
    ok, _ = verify_quotient_iso(quotient_Uh(1, 1), imaginary_verma(1, 1, z), "imaginary_to_Uh",
                                (), 60, SplitMix64(9))
    assert not ok       # U_h needs the z-sequence to vanish
    ok, _ = verify_quotient_iso(quotient_Uh(1, 1), imaginary_verma(1, 1), "imaginary_to_Uh", (), 60, rng)
    assert ok


def test_one_dim_is_the_k_zero_quotient():
    triv = one_dim()
    proj = lambda t, v: ModuleElement({((), None): c for (m, _t), c in v.items() if not m})
    ok, fails = verify_quotient_iso(triv, quotient_Uh(0, 0), proj, samples=80, rng=SplitMix64(1))
    assert ok, fails
