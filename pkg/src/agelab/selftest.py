"""The acceptance suite: eleven checks, each returning a JSON-ready record.

Every check draws from its own SplitMix64 stream forked from the run seed,
so the report depends only on the seed and is byte-identical across runs.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, List

from . import lie_core
from .cohomology import (
    Cochain1, coboundary, cocycle_space_dim, interior_pairs, normalize_cocycle, standard_cocycle,
)
from .lie_core import GenRef, LieElement, bracket, generators
from .linalg import Echelon
from .module_zoo import (
    ZSequence, imaginary_verma, induced, one_dim, quotient_Uh, quotient_Uq, verma, whittaker_block,
    whittaker_full, whittaker_M,
)
from .pbw_engine import ModuleElement, act, act_lin, element, render
from .rng import SplitMix64
from .simplicity_lab import (
    _Cols, _deg, _plan, _scheme, _random_key, check_induction_conditions, descend_to_vacuum,
    find_singular, random_element, replay, verify_degree_step, verify_quotient_iso,
)

SCHEMA = 1


def scalar_json(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _record(cid: int, anchor: str, passed: bool, params: dict, details: dict) -> dict:
    return {"id": cid, "anchor": anchor, "passed": bool(passed), "params": params, "details": details}


def threads() -> int:
    try:
        return max(1, int(os.environ.get("AGE_LAB_THREADS", "1")))
    except ValueError:
        return 1


# ----------------------------------------------------------------------------
# shared fixtures


def zoo(rng: SplitMix64) -> List:
    """The seven specs exercised by the representation-axiom check."""
    r_up, r_down = rng.randint(-3, 0), rng.randint(0, 3)
    z_up = ZSequence.make({r_up: rng.fraction(), r_up - 1: rng.fraction()}, "zero_up", r_up)
    z_down = ZSequence.make({r_down: rng.fraction(), r_down + 2: rng.fraction()}, "zero_down", r_down)
    phi = {"p(0)": rng.fraction(), "q(1)": rng.fraction(), "h(1)": rng.fraction()}
    return [
        verma(rng.fraction(), rng.fraction()),
        imaginary_verma(rng.fraction(), rng.fraction(), z_up),
        imaginary_verma(rng.fraction(), rng.fraction(), z_down),
        quotient_Uh(rng.fraction(), rng.fraction()),
        quotient_Uq(rng.fraction(), 0, z_up),
        whittaker_M(phi),
        whittaker_full(phi),
    ]


def second_instance(rng: SplitMix64):
    """Induced module over the ``(0,0,1)`` subalgebra at ``l = 1``."""
    inner = whittaker_block((0, 0, 1), {"p(1)": rng.fraction(), "q(1)": rng.fraction(), "h(1)": rng.fraction()})
    return induced((0, 0, 1), inner, l=1)


def whittaker_instance(rng: SplitMix64):
    return {"p(0)": Fraction(1), "q(1)": rng.fraction(nonzero=False), "h(1)": rng.fraction(nonzero=False)}


# ----------------------------------------------------------------------------
# the eleven checks


def check_brackets(rng: SplitMix64) -> dict:
    anti = lie_core.antisymmetry_violations(4)
    jac = lie_core.jacobi_violations(4)
    rand_bad = 0
    gens = generators(-4, 4, central=True)
    for _ in range(200):
        x, y, z = (LieElement({rng.choice(gens): rng.fraction() for _ in range(3)}) for _ in range(3))
        if lie_core.jacobi_sum(x, y, z):
            rand_bad += 1
    n = len(gens)
    return _record(1, "bracket table: antisymmetry and Jacobi identity", not anti and not jac and not rand_bad,
                   {"window": 4, "random_triples": 200},
                   {"ordered_triples": n ** 3, "antisymmetry_violations": len(anti),
                    "jacobi_violations": len(jac), "random_violations": rand_bad,
                    "first_violation": [str(g) for g in jac[0]] if jac else None})


def _rand_gen(spec, rng, window=3):
    while True:
        g = GenRef(rng.choice("EPQHZ"), rng.randint(-window, window)) if rng.below(12) else lie_core.K
        if spec.ambient(g):
            return g


def check_representation(rng: SplitMix64, samples: int = 500) -> dict:
    per = {}
    ok = True
    for spec in zoo(rng.fork("zoo")):
        bad = []
        for _ in range(samples):
            x, y = _rand_gen(spec, rng), _rand_gen(spec, rng)
            v = random_element(spec, rng, max_size=4, terms=3, window=3)
            lhs = act(spec, x, act(spec, y, v)) - act(spec, y, act(spec, x, v))
            if lhs != act_lin(spec, bracket(x, y), v):
                bad.append({"x": str(x), "y": str(y), "v": render(spec, v)})
        per[spec.name] = len(bad)
        ok = ok and not bad
    return _record(2, "module action respects the bracket on every zoo module", ok,
                   {"samples_per_spec": samples, "modes": [-3, 3], "max_size": 4}, {"failures": per})


def check_cocycles(rng: SplitMix64, trials: int = 50, window: int = 5) -> dict:
    std = standard_cocycle()
    pairs = interior_pairs(window)
    gens_all = generators(-window, window, "EPQHZ")
    all_pairs = [(a, b) for i, a in enumerate(gens_all) for b in gens_all[i + 1:]]
    vanish_bad = diff_bad = 0
    for _ in range(trials):
        g0 = Cochain1({GenRef(k, m): rng.fraction(nonzero=False) for k in "EPQHZ" for m in range(-2 * window, 2 * window + 1)})
        f = std + coboundary(g0)
        fprime, g = normalize_cocycle(f, window)
        if any(fprime(a, b) for a, b in pairs if not (a.kind == b.kind == "H")):
            vanish_bad += 1
        dg = coboundary(g)
        if any(f(a, b) - fprime(a, b) != dg(a, b) for a, b in all_pairs):
            diff_bad += 1
    space = cocycle_space_dim(3)
    normalize_ok = not vanish_bad and not diff_bad
    dim_ok = space.dim_H_interior == 1
    return _record(3, "2-cocycles: normalization and the truncated cohomology dimension",
                   normalize_ok and dim_ok and space.standard_independent,
                   {"trials": trials, "window": window, "dimension_window": 3},
                   {"normalize_vanishing_failures": vanish_bad, "coboundary_difference_failures": diff_bad,
                    "dim_Z": space.dim_Z, "dim_B": space.dim_B, "dim_H_interior": space.dim_H_interior,
                    "expected_dim_H_interior": 1, "dim_H_off_hh": space.dim_H_off_hh,
                    "standard_independent": space.standard_independent})


def _contains(vectors: List[ModuleElement], target: ModuleElement) -> bool:
    cols = _Cols()
    ech = Echelon(cols.vec(v) for v in vectors)
    return ech.contains(cols.vec(target))


def check_verma_singular(rng: SplitMix64) -> dict:
    rows = []
    ok = True
    for n in range(5):
        h, k = rng.fraction(), (Fraction(0) if n == 0 else rng.fraction())
        spec = verma(h, k)
        basis = find_singular(spec, 1, 3)
        hit = _contains(basis, element(spec, [(GenRef("Z", -1), 1)]))
        rows.append({"h": scalar_json(h), "k": scalar_json(k), "dim": len(basis), "contains_z(-1)v": hit})
        ok = ok and hit
    return _record(4, "Verma module: z(-1)v is singular in grade 1", ok, {"grade": 1, "window": 3}, {"cases": rows})


def check_uh(rng: SplitMix64, samples: int = 200) -> dict:
    spec = quotient_Uh(rng.fraction(), rng.fraction())
    fails = 0
    for _ in range(samples):
        v = random_element(spec, rng, max_size=6, terms=4, window=4)
        cert = descend_to_vacuum(spec, v)
        strict = all(spec.degree.cmp(s.deg_after, s.deg_before) < 0 for s in cert.steps if s.deg_after is not None)
        if not (cert.ok and strict and replay(cert)):
            fails += 1
    triv = one_dim(0)
    w = triv.cyclic()
    nonzero = [str(g) for g in generators(-5, 5, central=True) if act(triv, g, w)]
    iso_ok, _ = verify_quotient_iso(triv, quotient_Uh(0, 0), lambda t, v: ModuleElement(
        {((), None): c for (m, _t), c in v.items() if not m}), samples=100, rng=rng.fork("one_dim"))
    return _record(5, "U_h is reached by h-descent; k = 0 collapses to the trivial module",
                   not fails and not nonzero and iso_ok,
                   {"samples": samples, "max_size": 6, "trivial_modes": [-5, 5]},
                   {"descent_failures": fails, "trivial_nonzero_generators": nonzero, "trivial_quotient_map": iso_ok})


def check_imaginary_h_span(rng: SplitMix64) -> dict:
    z = ZSequence.make({-1: rng.fraction(), -3: rng.fraction()}, "zero_up", -1)
    spec = imaginary_verma(rng.fraction(), rng.fraction(), z)
    from .simplicity_lab import _monomials

    letters = [GenRef("H", -s) for s in range(4, 0, -1)]
    bad, count = [], 0
    for mono in _monomials(letters, 4):
        u = ModuleElement({(spec.canonical(mono), None): 1})
        for j in range(-5, 6):
            for kind in "PE":
                count += 1
                if act(spec, GenRef(kind, j), u):
                    bad.append(f"{kind.lower()}({j}) on {render(spec, u)}")
    return _record(6, "imaginary Verma: p_j and e_j kill the h-monomial span", not bad,
                   {"max_size": 4, "h_modes": [-4, -1], "j": [-5, 5]}, {"checked": count, "failures": bad[:5]})


def check_imaginary_simple(rng: SplitMix64, samples: int = 200) -> dict:
    out = {}
    ok = True
    for tail in ("zero_up", "zero_down"):
        r = rng.randint(-2, 2)
        other = r - 2 if tail == "zero_up" else r + 2
        z = ZSequence.make({r: rng.fraction(), other: rng.fraction()}, tail, r)
        spec = imaginary_verma(rng.fraction(), rng.fraction(), z)
        fails = steps = 0
        for _ in range(samples):
            v = random_element(spec, rng, max_size=5, terms=3, window=4)
            cert = descend_to_vacuum(spec, v)
            steps += len(cert.steps)
            if not (cert.ok and all(s.matches for s in cert.steps) and replay(cert)):
                fails += 1
        out[tail] = {"failures": fails, "steps": steps, "r": r}
        ok = ok and not fails
    return _record(7, "imaginary Verma: two-stage descent reaches v for both tail shapes", ok,
                   {"samples": samples, "max_size": 5, "window": 4}, out)


def check_quotients(rng: SplitMix64, samples: int = 100) -> dict:
    r = rng.randint(-2, 2)
    z = ZSequence.make({r: rng.fraction()}, "zero_up", r)
    h = rng.fraction()
    parent = imaginary_verma(h, 0, z)
    hs = [element(parent, [(GenRef("H", -s), 1)]) for s in range(1, 4)]
    ok_q, fail_q = verify_quotient_iso(quotient_Uq(h, 0, z), parent, "imaginary_to_Uq", hs, samples, rng.fork("uq"))
    h2, k2 = rng.fraction(), rng.fraction()
    parent2 = imaginary_verma(h2, k2)
    qs = [element(parent2, [(GenRef("Q", n), 1)]) for n in range(-2, 3)]
    ok_h, fail_h = verify_quotient_iso(quotient_Uh(h2, k2), parent2, "imaginary_to_Uh", qs, samples, rng.fork("uh"))
    return _record(8, "imaginary Verma quotients map onto U_q and U_h", ok_q and ok_h, {"samples": samples},
                   {"U_q": {"ok": ok_q, "failures": fail_q[:3]}, "U_h": {"ok": ok_h, "failures": fail_h[:3]}})


_CASE_KINDS = {"ind_1": "PEQH", "ind_2": "PEQ", "ind_3": "PE", "ind_4": "P"}


def shaped_element(spec, case: str, rng: SplitMix64, max_size: int = 4, window: int = 3):
    """Random element whose degree falls under ``case`` of the induced schedule."""
    scheme = _scheme(spec)
    allowed = _CASE_KINDS[case]
    while True:
        d = {}
        for _ in range(rng.randint(1, 3)):
            mono, tag = _random_key(spec, rng, rng.randint(1, max_size), window)
            mono = tuple((g, e) for g, e in mono if g.kind in allowed)
            d[(mono, tag)] = rng.fraction()
        v = ModuleElement(d)
        if not v:
            continue
        deg = _deg(spec, scheme, v, None)
        if deg == scheme.zero():
            continue
        plan = _plan(spec, scheme, deg, None)
        if plan is not None and plan[2] == case:
            return v


def check_induced_steps(rng: SplitMix64, samples: int = 100) -> dict:
    out = {}
    ok = True
    specs = [whittaker_full(whittaker_instance(rng)), second_instance(rng)]
    for spec in specs:
        row = {}
        for case in ("ind_1", "ind_2", "ind_3", "ind_4"):
            fails = 0
            for _ in range(samples):
                good, _, _ = verify_degree_step(spec, case, shaped_element(spec, case, rng))
                fails += not good
            row[case] = fails
            ok = ok and not fails
        out[str(list(spec.params["triple"].as_tuple()))] = row
    return _record(9, "induced modules: the four degree-lowering cases", ok, {"samples_per_case": samples}, {"failures": out})


def check_whittaker(rng: SplitMix64, samples: int = 200) -> dict:
    phi = whittaker_instance(rng)
    inner = whittaker_M(phi)
    cond = check_induction_conditions((-1, -1, 1), inner, 0, 5)
    full = whittaker_full(phi)
    fail_full = fail_m = 0
    for _ in range(samples):
        cert = descend_to_vacuum(full, random_element(full, rng, 5, 3, 3))
        in_v = cert.terminal is not None and all(not m for (m, _t) in cert.terminal.keys())
        if not (cert.ok and cert.terminal and in_v and replay(cert)):
            fail_full += 1
        cert = descend_to_vacuum(inner, random_element(inner, rng, 5, 3, 3))
        at_w = cert.terminal is not None and set(cert.terminal.keys()) == {inner.cyclic_key}
        if not (cert.ok and at_w and replay(cert)):
            fail_m += 1
    ok = cond["a_injective"] and cond["b_ok"] and not fail_full and not fail_m
    return _record(10, "standard Whittaker module: induction conditions and descent", ok,
                   {"phi": {k: scalar_json(v) for k, v in phi.items()}, "depth": 5, "samples": samples},
                   {"a_injective": cond["a_injective"], "a_rank": cond["a_rank"], "basis_size": cond["basis_size"],
                    "b_failures": cond["b_failures"][:3], "full_descent_failures": fail_full,
                    "inner_descent_failures": fail_m})


CHECKS: List[Callable[[SplitMix64], dict]] = [
    check_brackets, check_representation, check_cocycles, check_verma_singular, check_uh,
    check_imaginary_h_span, check_imaginary_simple, check_quotients, check_induced_steps, check_whittaker,
]

RANDOM_CHECKS = (1, 4, 6, 7, 8, 9)  # indices into CHECKS that consume randomness


def run_checks(seed: int, indices=None) -> List[dict]:
    root = SplitMix64(seed)
    indices = range(len(CHECKS)) if indices is None else indices
    jobs = [(CHECKS[i], root.fork(CHECKS[i].__name__)) for i in indices]
    with ThreadPoolExecutor(max_workers=threads()) as pool:
        return list(pool.map(lambda job: job[0](job[1]), jobs))


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


def selftest(seed: int = 42) -> dict:
    records = run_checks(seed)
    again = run_checks(seed, RANDOM_CHECKS)
    first = [records[i] for i in RANDOM_CHECKS]
    same = dumps({"r": first}) == dumps({"r": again})
    records.append(_record(11, "determinism: identical output for identical seed", same,
                           {"seed": seed}, {"rerun_checks": [c["id"] for c in again]}))
    return {"schema": SCHEMA, "command": "selftest", "seed": seed,
            "passed": all(r["passed"] for r in records), "checks": records}
