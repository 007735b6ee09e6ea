"""Verification procedures on concrete modules.

* singular / primitive vector search on graded components,
* single degree-lowering steps and full descent certificates,
* the injectivity / annihilation conditions for induced modules,
* annihilator subspaces ``N_{x1,x2,x3,x4}``,
* module-map checks for the irreducible quotients.

Everything infinite is truncated by explicit ``window`` (mode bound) and
``depth`` (PBW size bound) parameters, and reported with them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .lie_core import GenRef, format_scalar, generators
from .linalg import Echelon, nullspace, rank
from .module_zoo import SubalgebraTriple, subalgebra_contains
from .orders import MultiIndex
from .pbw_engine import (
    Functional, HIndexScheme, ImaginaryScheme, ModuleElement, ModuleSpec, Nested,
    Principal4Scheme, TripleScheme, act, act_affine, deg_of, grade, render,
)
from .rng import SplitMix64

__all__ = [
    "graded_basis", "basis_up_to", "submodule_span", "find_singular", "find_primitive_mod",
    "DescentStep", "Certificate", "verify_degree_step", "descend_to_vacuum", "replay",
    "check_induction_conditions", "least_admissible_l", "compute_N_subspace",
    "verify_quotient_iso", "PROJECTIONS", "random_element", "degree_json",
]

LOOP_KINDS = "EPQHZ"


def degree_json(d):
    return [m.to_json() for m in d]


# ----------------------------------------------------------------------------
# enumerating basis vectors


def _letters(spec: ModuleSpec, window: int) -> List[GenRef]:
    """Complement generators with ``|mode| <= window``, in canonical order."""
    out = []
    for fam in spec.complement:
        lo = -window if fam.lo is None else max(fam.lo, -window)
        hi = window if fam.hi is None else min(fam.hi - 1, window)
        out.extend(GenRef(fam.kind, n) for n in range(lo, hi + 1))
    return sorted(out, key=spec.position)


def _monomials(letters: Sequence[GenRef], max_size: int):
    for size in range(max_size + 1):
        for combo in combinations_with_replacement(letters, size):
            acc: Dict[GenRef, int] = {}
            for g in combo:
                acc[g] = acc.get(g, 0) + 1
            yield tuple((g, acc[g]) for g in dict.fromkeys(combo))


def basis_up_to(spec: ModuleSpec, depth: int, window: int) -> List[tuple]:
    """Basis keys of total PBW size ``<= depth`` with letters inside the window."""
    letters = _letters(spec, window)
    keys = []
    if isinstance(spec.base, Nested):
        for mono in _monomials(letters, depth):
            size = sum(e for _, e in mono)
            for tag in basis_up_to(spec.base.inner, depth - size, window):
                keys.append((mono, tag))
    else:
        keys = [(mono, None) for mono in _monomials(letters, depth)]
    return keys


def graded_basis(spec: ModuleSpec, s: int, window: int) -> List[tuple]:
    """Basis keys of grade ``s`` whose letters have ``|mode| <= window``."""
    if not spec.graded:
        raise ValueError(f"{spec.name} is not graded")
    letters = [g for g in _letters(spec, window) if g.mode < 0]
    if any(g.mode >= 0 for g in _letters(spec, window)):
        raise ValueError("graded components need negative-mode complement letters")
    out = []

    def rec(i, left, acc):
        if left == 0:
            out.append((tuple(acc), None))
            return
        if i == len(letters):
            return
        g = letters[i]
        w = -g.mode
        for e in range(left // w, -1, -1):
            rec(i + 1, left - e * w, acc + ([(g, e)] if e else []))

    rec(0, s, [])
    return out


def _positive(spec: ModuleSpec, window: int) -> List[GenRef]:
    return [g for g in generators(1, window, LOOP_KINDS) if spec.ambient(g) and not spec.is_complement(g)]


# ----------------------------------------------------------------------------
# linear algebra over module elements


class _Cols:
    """Stable integer labels for basis keys."""

    def __init__(self):
        self.index: Dict[tuple, int] = {}

    def vec(self, v: ModuleElement) -> Dict[int, Fraction]:
        out = {}
        for key, c in v.items():
            j = self.index.setdefault(key, len(self.index))
            out[j] = c
        return out


def _split_grades(spec: ModuleSpec, v: ModuleElement) -> Dict[int, ModuleElement]:
    parts: Dict[int, dict] = {}
    for key, c in v.items():
        parts.setdefault(grade(spec, key[0]), {})[key] = c
    return {s: ModuleElement(d) for s, d in parts.items()}


def submodule_span(spec: ModuleSpec, gens: Sequence[ModuleElement], window: int, max_word: int = 4, cap: int = 0):
    """Truncated span of ``U(g) gens``, graded.

    Generators with ``|mode| <= window`` are applied breadth-first for at most
    ``max_word`` rounds, only to vectors that enlarged the span, and only
    homogeneous pieces with grade in ``[0, cap]`` are kept.
    Returns ``(cols, {grade: Echelon})``.
    """
    cols = _Cols()
    spans: Dict[int, Echelon] = {}
    letters = [g for g in generators(-window, window, LOOP_KINDS) if spec.ambient(g)]

    def push(v, frontier):
        for s, piece in _split_grades(spec, v).items():
            if 0 <= s <= cap and spans.setdefault(s, Echelon()).add(cols.vec(piece)):
                frontier.append(piece)

    frontier: List[ModuleElement] = []
    for g in gens:
        push(g, frontier)
    for _ in range(max_word):
        nxt: List[ModuleElement] = []
        for v in frontier:
            for x in letters:
                push(act(spec, x, v), nxt)
        if not nxt:
            break
        frontier = nxt
    return cols, spans


def find_primitive_mod(spec: ModuleSpec, s: int, window: int, submodule_gens: Sequence[ModuleElement] = (),
                       max_word: int = 4) -> List[ModuleElement]:
    """Vectors of grade ``s`` sent into the submodule by every positive generator,
    reported modulo the submodule (truncated as in :func:`submodule_span`)."""
    if not spec.graded:
        raise ValueError(f"{spec.name} is not graded")
    if s < 1:
        raise ValueError("grade must be >= 1")
    cols, spans = submodule_span(spec, submodule_gens, window, max_word, cap=s) if submodule_gens else (_Cols(), {})
    keys = graded_basis(spec, s, window)
    unknowns = list(range(len(keys)))
    rows: Dict[Tuple[GenRef, int], Dict[int, Fraction]] = {}
    for u, key in enumerate(keys):
        base = ModuleElement({key: 1})
        for x in _positive(spec, window):
            img = act(spec, x, base)
            if not img:
                continue
            red = cols.vec(img)
            ech = spans.get(s - x.mode)
            if ech is not None:
                red = ech.reduce(red)
            for j, c in red.items():
                rows.setdefault((x, j), {})[u] = c
    kernel = nullspace(list(rows.values()), unknowns)
    quotient = Echelon(spans[s].basis()) if s in spans else Echelon()
    out = []
    for vec in kernel:
        elem = ModuleElement({keys[u]: c for u, c in vec.items()})
        if quotient.add(cols.vec(elem)):
            out.append(elem)
    return out


def find_singular(spec: ModuleSpec, s: int, window: int) -> List[ModuleElement]:
    """Vectors of grade ``s`` killed by every positive generator with mode ``<= window``."""
    return find_primitive_mod(spec, s, window, ())


# ----------------------------------------------------------------------------
# degree steps


@dataclass
class DescentStep:
    operator: GenRef
    shift: Fraction
    case: str
    deg_before: tuple
    deg_after: Optional[tuple]
    predicted: tuple
    scope: str = "outer"

    @property
    def matches(self) -> bool:
        return self.deg_after == self.predicted

    def to_json(self):
        op = str(self.operator)
        if self.shift:
            op = f"{op} - {format_scalar(self.shift)}"
        return {
            "operator": op,
            "case": self.case,
            "scope": self.scope,
            "deg_before": degree_json(self.deg_before),
            "deg_after": None if self.deg_after is None else degree_json(self.deg_after),
            "predicted": degree_json(self.predicted),
        }


@dataclass
class Certificate:
    spec: ModuleSpec
    start: ModuleElement
    steps: List[DescentStep] = field(default_factory=list)
    terminal: Optional[ModuleElement] = None
    status: str = "reached"
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "reached"

    def to_json(self):
        return {
            "start": render(self.spec, self.start),
            "steps": [s.to_json() for s in self.steps],
            "terminal": None if self.terminal is None else render(self.spec, self.terminal),
            "status": self.status,
            "message": self.message,
        }


def _minpos(m: MultiIndex) -> int:
    return m.min_position()


def _eps(i: int) -> MultiIndex:
    return MultiIndex.eps(i)


def _phi(spec: ModuleSpec, g: GenRef) -> Fraction:
    if isinstance(spec.base, Functional):
        return spec.base.value(g)
    return Fraction(0)


def _z_r(spec: ModuleSpec) -> int:
    z = spec.params.get("z")
    if z is None or z.r is None or not z(z.r):
        raise ValueError(f"{spec.name}: the z-sequence has no nonzero z_r with a zero tail")
    return z.r


def _plan(spec: ModuleSpec, scheme, d: tuple, anchor, case: Optional[str] = None):
    """Operator, shift, case id and predicted degree for one step from degree ``d``.

    With ``case`` given, the shape hypothesis of that case is enforced;
    otherwise the first applicable case is chosen.
    """
    def want(cid, ok):
        if case is not None and case == cid and not ok:
            raise ValueError(f"shape mismatch: case {cid} does not apply to degree {degree_json(d)}")
        return ok and (case is None or case == cid)

    if isinstance(scheme, HIndexScheme):
        (i,) = d
        if want("uh_claim2", bool(i)):
            r = _minpos(i)
            return GenRef("H", r), Fraction(0), "uh_claim2", (i - _eps(r),)
    elif isinstance(scheme, ImaginaryScheme):
        i, j = d
        if want("iv_claim1", bool(i)):
            a, r = _minpos(i), _z_r(spec)
            mode = a - anchor + r if scheme.direction == "up" else r - anchor - a
            return GenRef("P", mode), Fraction(0), "iv_claim1", (i - _eps(a), j)
        if want("iv_claim2", not i and bool(j)):
            b = _minpos(j)
            return GenRef("H", b), Fraction(0), "iv_claim2", (i, j - _eps(b))
    elif isinstance(scheme, Principal4Scheme):
        i, j, m, n = d
        t, l = spec.params["triple"], spec.params.get("l")
        if l is None:
            raise ValueError(f"{spec.name}: the induction parameter l is not set")
        zero = MultiIndex()
        if want("ind_1", bool(n)):
            r = _minpos(n)
            return GenRef("P", l + r), Fraction(0), "ind_1", (i, j, m, n - _eps(r))
        if want("ind_2", not n and bool(m)):
            a = _minpos(m)
            return GenRef("E", a + l - t.d3), Fraction(0), "ind_2", (i, j, m - _eps(a), zero)
        if want("ind_3", not n and not m and bool(j)):
            b = _minpos(j)
            return GenRef("Q", b - t.d1 + l), Fraction(0), "ind_3", (i, j - _eps(b), zero, zero)
        if want("ind_4", not n and not m and not j and bool(i)):
            c = _minpos(i)
            return GenRef("H", c - t.d2 + l), Fraction(0), "ind_4", (i - _eps(c), zero, zero, zero)
    elif isinstance(scheme, TripleScheme):
        (i,) = d
        t = spec.params["triple"]
        if want("wh_1", bool(i[1])):
            g = GenRef("P", t.d2 + 1)
            return g, _phi(spec, g), "wh_1", (i - _eps(1),)
        if want("wh_2", not i[1] and bool(i[2])):
            g = GenRef("Q", t.d3)
            return g, _phi(spec, g), "wh_2", (i - _eps(2),)
        if want("wh_3", not i[1] and not i[2] and bool(i[3])):
            g = GenRef("H", 1)
            return g, _phi(spec, g), "wh_3", (i - _eps(3),)
    if case is not None:
        raise ValueError(f"unknown case {case!r} for the {scheme.name} order")
    return None


def _needs_k(spec: ModuleSpec, case: str):
    if case in ("uh_claim2", "iv_claim2") and not spec.params.get("k"):
        raise ValueError(f"case {case} needs k != 0")


def _scheme(spec: ModuleSpec):
    if spec.degree is not None:
        return spec.degree
    if spec.kind == "verma":
        return HIndexScheme()
    raise ValueError(f"{spec.name} declares no degree order")


def _deg(spec: ModuleSpec, scheme, v: ModuleElement, anchor):
    monos = {k[0] for k in v.keys()}
    best = None
    for mono in monos:
        t = scheme.project(mono, anchor)
        if best is None or scheme.cmp(t, best) > 0:
            best = t
    return best


def verify_degree_step(spec: ModuleSpec, case_id: str, v: ModuleElement):
    """Apply the operator prescribed by ``case_id`` and compare degrees.

    Returns ``(ok, predicted, actual)``; ``actual`` is ``None`` when the
    result vanished.
    """
    if not v:
        raise ValueError("v must be nonzero")
    scheme = _scheme(spec)
    anchor = scheme.anchor_for({k[0] for k in v.keys()})
    d = _deg(spec, scheme, v, anchor)
    op, shift, case, predicted = _plan(spec, scheme, d, anchor, case_id)
    _needs_k(spec, case)
    out = act_affine(spec, op, shift, v)
    actual = _deg(spec, scheme, out, anchor) if out else None
    return actual == predicted, predicted, actual


def _lift_inner(spec: ModuleSpec, u: ModuleElement) -> ModuleElement:
    return ModuleElement({((), t): c for t, c in u.items()})


def _inner_part(v: ModuleElement) -> ModuleElement:
    return ModuleElement({t: c for (mono, t), c in v.items()})


def descend_to_vacuum(spec: ModuleSpec, v: ModuleElement, budget: Optional[int] = None, through: bool = False) -> Certificate:
    """Lower the degree step by step until only the cyclic part is left.

    For induced specs the descent stops on ``1 ⊗ V``; with ``through=True``
    it continues inside the inner module using the inner schedule.
    Status is ``reached``, ``obstruction`` (a step missed its predicted
    degree or vanished) or ``budget``.
    """
    if not v:
        raise ValueError("v must be nonzero")
    if budget is None:
        budget = 10 * max(1, v.exponent_total())
    cert = Certificate(spec, v)
    scheme = _scheme(spec)
    anchor = scheme.anchor_for({k[0] for k in v.keys()})
    cur = v
    zero = scheme.zero()
    while True:
        d = _deg(spec, scheme, cur, anchor)
        if d == zero:
            break
        if len(cert.steps) >= budget:
            cert.status, cert.message, cert.terminal = "budget", f"budget of {budget} steps exhausted", cur
            return cert
        plan = _plan(spec, scheme, d, anchor)
        if plan is None:
            cert.status, cert.message, cert.terminal = "obstruction", "no case applies", cur
            return cert
        op, shift, case, predicted = plan
        _needs_k(spec, case)
        nxt = act_affine(spec, op, shift, cur)
        after = _deg(spec, scheme, nxt, anchor) if nxt else None
        cert.steps.append(DescentStep(op, shift, case, d, after, predicted))
        if after is None or after != predicted or scheme.cmp(after, d) >= 0:
            cert.status, cert.terminal = "obstruction", nxt
            cert.message = "step vanished" if after is None else "degree differs from the prediction"
            return cert
        cur = nxt
    if through and isinstance(spec.base, Nested):
        inner_cert = descend_to_vacuum(spec.base.inner, _inner_part(cur), budget - len(cert.steps), through=True)
        for st in inner_cert.steps:
            st.scope = "inner"
            cert.steps.append(st)
        cert.status, cert.message = inner_cert.status, inner_cert.message
        cert.terminal = _lift_inner(spec, inner_cert.terminal)
        return cert
    cert.terminal = cur
    return cert


def replay(cert: Certificate) -> bool:
    """Fold the recorded operators over the start element and compare."""
    v = cert.start
    for st in cert.steps:
        v = act_affine(cert.spec, st.operator, st.shift, v)
    return v == cert.terminal


# ----------------------------------------------------------------------------
# induced-module conditions


def condition_generators(t: SubalgebraTriple, l: int, i: int) -> List[GenRef]:
    return [
        GenRef("P", l + i),
        GenRef("Z", l + t.d2 - t.d1 + i - 1),
        GenRef("E", l - t.d3 + i),
        GenRef("Q", l - t.d1 + i),
        GenRef("H", l - t.d2 + i),
    ]


def check_induction_conditions(t, inner: ModuleSpec, l: int, depth: int, window: int = 3) -> dict:
    """(a) injectivity of ``p_l`` and (b) the annihilation conditions, on the
    basis of ``inner`` up to PBW size ``depth``."""
    if not isinstance(t, SubalgebraTriple):
        t = SubalgebraTriple(*t)
    if l <= t.d2:
        raise ValueError(f"l must exceed d2={t.d2}")
    keys = basis_up_to(inner, depth, window)
    cols = _Cols()
    pl = GenRef("P", l)
    images = [cols.vec(act(inner, pl, ModuleElement({k: 1}))) for k in keys]
    rk = rank(images)
    failures, skipped = [], []
    for i in range(1, depth + window + 1):
        for g in condition_generators(t, l, i):
            if not subalgebra_contains(t, g) or not inner.ambient(g):
                skipped.append(str(g))
                continue
            for k in keys:
                u = ModuleElement({k: 1})
                img = act(inner, g, u)
                if img:
                    failures.append({"generator": str(g), "vector": render(inner, u), "image": render(inner, img)})
                    break
    return {
        "triple": list(t.as_tuple()),
        "l": l,
        "depth": depth,
        "window": window,
        "basis_size": len(keys),
        "a_rank": rk,
        "a_injective": rk == len(keys),
        "b_failures": failures,
        "b_ok": not failures,
        "skipped": sorted(set(skipped)),
    }


def least_admissible_l(t, inner: ModuleSpec, depth: int, window: int = 3, search: int = 6) -> Optional[int]:
    if not isinstance(t, SubalgebraTriple):
        t = SubalgebraTriple(*t)
    for l in range(t.d2 + 1, t.d2 + 1 + search):
        rep = check_induction_conditions(t, inner, l, depth, window)
        if rep["a_injective"] and rep["b_ok"]:
            return l
    return None


# ----------------------------------------------------------------------------
# annihilator subspaces


def compute_N_subspace(spec: ModuleSpec, x: Sequence[int], window: int, depth: int) -> List[ModuleElement]:
    """Span of basis vectors (size ``<= depth``) killed by ``p_{x1+i}, e_{x2+i},
    h_{x3+i}, q_{x4+i}`` for ``i = 1..window``."""
    x1, x2, x3, x4 = x
    ops = []
    for i in range(1, window + 1):
        ops += [GenRef("P", x1 + i), GenRef("E", x2 + i), GenRef("H", x3 + i), GenRef("Q", x4 + i)]
    ops = [g for g in ops if spec.ambient(g)]
    keys = basis_up_to(spec, depth, window)
    cols = _Cols()
    rows: Dict[Tuple[GenRef, int], Dict[int, Fraction]] = {}
    for u, key in enumerate(keys):
        for g in ops:
            for j, c in cols.vec(act(spec, g, ModuleElement({key: 1}))).items():
                rows.setdefault((g, j), {})[u] = c
    kernel = nullspace(list(rows.values()), list(range(len(keys))))
    return [ModuleElement({keys[u]: c for u, c in vec.items()}) for vec in kernel]


# ----------------------------------------------------------------------------
# quotient maps


def _project_by(keep: Callable[[GenRef], bool]):
    def proj(target: ModuleSpec, v: ModuleElement) -> ModuleElement:
        out = {}
        for (mono, tag), c in v.items():
            if all(keep(g) for g, _ in mono):
                out[(mono, None)] = c
        return ModuleElement(out)
    return proj


PROJECTIONS = {
    "verma_to_Uh": _project_by(lambda g: g.kind == "H"),
    "imaginary_to_Uq": _project_by(lambda g: g.kind == "Q"),
    "imaginary_to_Uh": _project_by(lambda g: g.kind == "H"),
    "identity": lambda target, v: v,
}


def verify_quotient_iso(quotient_spec: ModuleSpec, parent_spec: ModuleSpec, projection, submodule_gens=(),
                        samples: int = 100, rng: Optional[SplitMix64] = None, window: int = 3, depth: int = 4):
    """Check that ``projection`` intertwines the two actions on random samples.

    ``projection`` is a name from :data:`PROJECTIONS` or a callable
    ``(quotient_spec, parent_element) -> quotient_element``; its kernel plays
    the role of the submodule, so it must kill ``submodule_gens``.
    Returns ``(ok, failures)``.
    """
    proj = PROJECTIONS[projection] if isinstance(projection, str) else projection
    rng = rng or SplitMix64(0)
    failures = []
    for g in submodule_gens:
        if proj(quotient_spec, g):
            failures.append({"reason": "submodule generator survives", "vector": render(parent_spec, g)})
    gens = [g for g in generators(-window, window, LOOP_KINDS, central=True) if parent_spec.ambient(g)]
    for _ in range(samples):
        x = rng.choice(gens)
        u = random_element(parent_spec, rng, max_size=depth, terms=1, window=window)
        left = proj(quotient_spec, act(parent_spec, x, u))
        right = act(quotient_spec, x, proj(quotient_spec, u))
        if left != right:
            failures.append({"generator": str(x), "vector": render(parent_spec, u),
                             "parent_side": render(quotient_spec, left), "quotient_side": render(quotient_spec, right)})
    return not failures, failures


# ----------------------------------------------------------------------------
# random elements


def _random_key(spec: ModuleSpec, rng: SplitMix64, size: int, window: int):
    letters = _letters(spec, window)
    inner_size = 0
    if isinstance(spec.base, Nested):
        inner_size = rng.randint(0, size)
        size -= inner_size
    acc: Dict[GenRef, int] = {}
    if letters:
        for _ in range(size):
            g = rng.choice(letters)
            acc[g] = acc.get(g, 0) + 1
    mono = spec.canonical(acc.items())
    tag = None
    if isinstance(spec.base, Nested):
        tag = _random_key(spec.base.inner, rng, inner_size, window)
    return (mono, tag)


def random_element(spec: ModuleSpec, rng: SplitMix64, max_size: int = 4, terms: int = 3, window: int = 3) -> ModuleElement:
    """Nonzero combination of up to ``terms`` basis vectors of PBW size ``<= max_size``."""
    while True:
        d = {}
        for _ in range(rng.randint(1, terms)):
            d[_random_key(spec, rng, rng.randint(0, max_size), window)] = rng.fraction()
        v = ModuleElement(d)
        if v:
            return v
