"""Normal-ordering engine for cyclic modules of the affine ageing algebra.

A module is described by a :class:`ModuleSpec`: a *complement* (families of
generators whose ordered monomials, applied to the cyclic vector, form a
basis) and a *base*, which either assigns a scalar to every remaining
generator (:class:`Functional`) or hands it to an inner module
(:class:`Nested`, for induced modules).

Basis keys are pairs ``(monomial, tag)``.  A monomial is a tuple of
``(GenRef, exponent)`` pairs in the spec's canonical order; ``tag`` is
``None`` for a functional base and an inner basis key for a nested one.

Acting by ``x`` on ``y·rest·v`` uses ``x·y = y·x + [x, y]``: a complement
generator that already sorts before ``y`` is simply prepended, anything else
is commuted to the right until it lands on the cyclic vector.  Each bracket
turns a two-letter word into a one-letter word, so the recursion terminates.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .lie_core import (
    GenRef, LieElement, K, bracket, format_scalar, parse_genref, to_fraction,
)
from .orders import MultiIndex, principal2_cmp, principal4_cmp, revlex_tuple_cmp

ONE = Fraction(1)

Monomial = Tuple[Tuple[GenRef, int], ...]


# ----------------------------------------------------------------------------
# spec pieces


@dataclass(frozen=True)
class Family:
    """Generators of one kind with mode in ``[lo, hi)``; ``None`` means unbounded."""

    kind: str
    lo: Optional[int] = None
    hi: Optional[int] = None

    def contains(self, g: GenRef) -> bool:
        if g.kind != self.kind:
            return False
        if self.lo is not None and g.mode < self.lo:
            return False
        if self.hi is not None and g.mode >= self.hi:
            return False
        return True

    def describe(self) -> str:
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{self.kind.lower()}[{lo},{hi})"


class Functional:
    """One-dimensional base: every base generator acts by a scalar (0 if unlisted)."""

    def __init__(self, values: Mapping[GenRef, Fraction] = (), rule: Optional[Callable[[GenRef], Fraction]] = None):
        self.values = {g: to_fraction(c) for g, c in dict(values).items() if to_fraction(c)}
        self.rule = rule

    def value(self, g: GenRef) -> Fraction:
        c = self.values.get(g)
        if c is not None:
            return c
        if self.rule is not None:
            return self.rule(g)
        return Fraction(0)


class Nested:
    def __init__(self, inner: "ModuleSpec"):
        self.inner = inner


def whole_algebra(g: GenRef) -> bool:
    return True


@dataclass(eq=False)
class ModuleSpec:
    name: str
    kind: str
    complement: Tuple[Family, ...]
    base: Union[Functional, Nested]
    ambient: Callable[[GenRef], bool] = whole_algebra
    vector: str = "v"
    graded: bool = False
    params: dict = field(default_factory=dict)
    flags: List[str] = field(default_factory=list)
    degree: Optional["DegreeScheme"] = None
    memoize: bool = False
    _memo: dict = field(default_factory=dict, repr=False)

    def classify(self, g: GenRef) -> str:
        return "complement" if self.family_index(g) is not None else "base"

    def family_index(self, g: GenRef) -> Optional[int]:
        for i, fam in enumerate(self.complement):
            if fam.contains(g):
                return i
        return None

    def is_complement(self, g: GenRef) -> bool:
        return self.family_index(g) is not None

    def position(self, g: GenRef) -> Tuple[int, int]:
        return (self.family_index(g), g.mode)

    def canonical(self, letters: Iterable[Tuple[GenRef, int]]) -> Monomial:
        """Sort and merge complement letters into a canonical monomial."""
        acc: Dict[GenRef, int] = {}
        for g, e in letters:
            if not self.is_complement(g):
                raise ValueError(f"{g} is not a complement generator of {self.name}")
            acc[g] = acc.get(g, 0) + e
        return tuple((g, acc[g]) for g in sorted(acc, key=self.position) if acc[g])

    @property
    def cyclic_key(self):
        if isinstance(self.base, Nested):
            return ((), self.base.inner.cyclic_key)
        return ((), None)

    def cyclic(self) -> "ModuleElement":
        return ModuleElement({self.cyclic_key: ONE})

    def describe(self) -> dict:
        out = {
            "name": self.name,
            "kind": self.kind,
            "complement": [f.describe() for f in self.complement],
            "vector": self.vector,
        }
        if isinstance(self.base, Nested):
            out["inner"] = self.base.inner.describe()
        if self.flags:
            out["flags"] = list(self.flags)
        return out


# ----------------------------------------------------------------------------
# elements


class ModuleElement:
    """Finite combination of basis keys with nonzero rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        t: Dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, c in items:
                c = to_fraction(c)
                if c:
                    s = t.get(key, 0) + c
                    if s:
                        t[key] = s
                    else:
                        del t[key]
        self._terms = t

    @classmethod
    def _raw(cls, d: dict) -> "ModuleElement":
        out = cls.__new__(cls)
        out._terms = d
        return out

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        d = dict(self._terms)
        _axpy(ONE, other._terms, d)
        return ModuleElement._raw(d)

    def __neg__(self):
        return ModuleElement._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        d = dict(self._terms)
        _axpy(-ONE, other._terms, d)
        return ModuleElement._raw(d)

    def __rmul__(self, c):
        c = to_fraction(c)
        if not c:
            return ModuleElement()
        return ModuleElement._raw({k: c * x for k, x in self._terms.items()})

    __mul__ = __rmul__

    def as_dict(self) -> dict:
        return dict(self._terms)

    def exponent_total(self) -> int:
        """Largest total PBW exponent over the support (inner monomials included)."""
        return max((_key_size(k) for k in self._terms), default=0)

    def __repr__(self):
        return f"ModuleElement({len(self._terms)} terms)"


def _key_size(key) -> int:
    mono, tag = key
    n = sum(e for _, e in mono)
    return n + (_key_size(tag) if tag is not None else 0)


def _axpy(a: Fraction, x: dict, y: dict) -> None:
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


# ----------------------------------------------------------------------------
# the action


def _act_key(spec: ModuleSpec, x: GenRef, key) -> dict:
    if spec.memoize:
        hit = spec._memo.get((x, key))
        if hit is not None:
            return dict(hit)
        out = _act_key_raw(spec, x, key)
        spec._memo[(x, key)] = dict(out)
        return out
    return _act_key_raw(spec, x, key)


def _act_key_raw(spec: ModuleSpec, x: GenRef, key) -> dict:
    mono, tag = key
    xc = spec.is_complement(x)
    if not xc and (x.kind == "Z" or x.kind == "K"):
        # central base element: acts on the cyclic part only
        return _at_vector(spec, x, mono, tag)
    if not mono:
        if xc:
            return {(((x, 1),), tag): ONE}
        return _at_vector(spec, x, mono, tag)
    y, a = mono[0]
    if xc:
        px, py = spec.position(x), spec.position(y)
        if px < py:
            return {(((x, 1),) + mono, tag): ONE}
        if px == py:
            return {(((x, a + 1),) + mono[1:], tag): ONE}
    rest = mono[1:] if a == 1 else ((y, a - 1),) + mono[1:]
    inner = _act_key(spec, x, (rest, tag))
    out = _act_dict(spec, y, inner)
    for g, c in bracket(x, y):
        _axpy(c, _act_key(spec, g, (rest, tag)), out)
    return out


def _at_vector(spec: ModuleSpec, x: GenRef, mono, tag) -> dict:
    """Base element ``x`` reaching the cyclic part (``x`` central or ``mono`` empty)."""
    if isinstance(spec.base, Functional):
        c = spec.base.value(x)
        return {(mono, tag): c} if c else {}
    res = _act_key(spec.base.inner, x, tag)
    return {(mono, t): c for t, c in res.items()}


def _act_dict(spec: ModuleSpec, x: GenRef, vec: dict) -> dict:
    out: dict = {}
    for key, c in vec.items():
        _axpy(c, _act_key(spec, x, key), out)
    return out


def _check_ambient(spec: ModuleSpec, x: GenRef):
    if not spec.ambient(x):
        raise ValueError(f"{x} does not act on {spec.name}")


def act(spec: ModuleSpec, x: GenRef, v: ModuleElement) -> ModuleElement:
    _check_ambient(spec, x)
    return ModuleElement._raw(_act_dict(spec, x, v.as_dict()))


def act_lin(spec: ModuleSpec, x: LieElement, v: ModuleElement) -> ModuleElement:
    out: dict = {}
    for g, c in x:
        _check_ambient(spec, g)
        _axpy(c, _act_dict(spec, g, v.as_dict()), out)
    return ModuleElement._raw(out)


def act_word(spec: ModuleSpec, word: Sequence[GenRef], v: ModuleElement) -> ModuleElement:
    """Apply ``word[0] word[1] ... word[-1]`` to ``v`` (rightmost letter first)."""
    for g in reversed(word):
        v = act(spec, g, v)
    return v


def act_affine(spec: ModuleSpec, x: GenRef, shift: Fraction, v: ModuleElement) -> ModuleElement:
    """Apply ``x - shift``."""
    out = act(spec, x, v)
    return out - shift * v if shift else out


def element(spec: ModuleSpec, letters: Iterable[Tuple[GenRef, int]] = (), tag=None, coeff=1) -> ModuleElement:
    """Basis element from complement letters (canonicalized)."""
    if tag is None and isinstance(spec.base, Nested):
        tag = spec.base.inner.cyclic_key
    return ModuleElement({(spec.canonical(letters), tag): coeff})


def nested_element(spec: ModuleSpec, letters, inner: ModuleElement) -> ModuleElement:
    """``monomial ⊗ inner`` in an induced module."""
    mono = spec.canonical(letters)
    return ModuleElement({(mono, t): c for t, c in inner.items()})


# ----------------------------------------------------------------------------
# grading


def grade(spec: ModuleSpec, mono: Monomial) -> int:
    if not spec.graded:
        raise ValueError(f"{spec.name} carries no grading")
    return -sum(g.mode * e for g, e in mono)


def element_grades(spec: ModuleSpec, v: ModuleElement):
    return sorted({grade(spec, k[0]) for k in v.keys()})


# ----------------------------------------------------------------------------
# rendering and parsing


def render_monomial(mono: Monomial) -> str:
    return " ".join(str(g) if e == 1 else f"{g}^{e}" for g, e in mono)


def _render_key(spec: ModuleSpec, key) -> str:
    mono, tag = key
    if isinstance(spec.base, Nested):
        inner = _render_key(spec.base.inner, tag)
        return f"{render_monomial(mono) or '1'} ⊗ [ {inner} ]"
    m = render_monomial(mono)
    return f"{m} | {spec.vector}" if m else f"| {spec.vector}"


def sort_keys(keys):
    return sorted(keys, key=_keysort)


def _keysort(key):
    mono, tag = key
    return (tuple((g.sort_key(), e) for g, e in mono), () if tag is None else _keysort(tag))


def render(spec: ModuleSpec, v: ModuleElement) -> str:
    if not v:
        return "0"
    pieces = []
    for key in sort_keys(v.keys()):
        c = v[key]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = _render_key(spec, key)
        if a != 1 or (sign == "-" and body.startswith("|")):
            body = f"{format_scalar(a)} * {body}"
        pieces.append((sign, body))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


_TOKEN = re.compile(
    r"\s*(?:(?P<gen>[ephqzEPHQZ]\s*\(\s*[+-]?\d+\s*\)|k(?![A-Za-z_0-9]))(?:\^(?P<exp>\d+))?"
    r"|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<tensor>⊗|\(x\))"
    r"|(?P<op>[|*+\-\[\]])"
    r"|(?P<name>[A-Za-z_]\w*))"
)


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        if m.group("gen"):
            out.append(("gen", parse_genref(m.group("gen")), int(m.group("exp") or 1)))
        elif m.group("num"):
            out.append(("num", Fraction(m.group("num"))))
        elif m.group("tensor"):
            out.append(("tensor",))
        elif m.group("op"):
            out.append(("op", m.group("op")))
        else:
            out.append(("name", m.group("name")))
    return out


def parse_element(spec: ModuleSpec, text: str) -> ModuleElement:
    """Parse e.g. ``"h(-1)^2 | w - 3/2 * h(-2) | w"``.

    Each term's word is applied to the cyclic vector through the engine, so
    words need not be in canonical order.  Nested terms read
    ``word ⊗ [ inner element ]`` (``(x)`` is accepted for ``⊗``).
    """
    toks = _tokenize(text)
    val, pos = _parse_sum(spec, toks, 0)
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return val


def _parse_sum(spec, toks, pos):
    total = ModuleElement()
    sign = ONE
    first = True
    while True:
        while pos < len(toks) and toks[pos] in (("op", "+"), ("op", "-")):
            if toks[pos][1] == "-":
                sign = -sign
            pos += 1
        if not first and pos >= len(toks):
            raise ValueError("dangling sign")
        term, pos = _parse_term(spec, toks, pos)
        total = total + sign * term
        first = False
        sign = ONE
        if pos < len(toks) and toks[pos] in (("op", "+"), ("op", "-")):
            continue
        return total, pos


def _parse_term(spec, toks, pos):
    coeff = ONE
    if pos < len(toks) and toks[pos][0] == "num":
        coeff = toks[pos][1]
        pos += 1
        if pos < len(toks) and toks[pos] == ("op", "*"):
            pos += 1
    word: List[GenRef] = []
    while pos < len(toks) and toks[pos][0] == "gen":
        word.extend([toks[pos][1]] * toks[pos][2])
        pos += 1
    if isinstance(spec.base, Nested):
        if pos >= len(toks) or toks[pos][0] != "tensor":
            raise ValueError("expected ⊗ in an induced-module element")
        pos += 1
        if pos >= len(toks) or toks[pos] != ("op", "["):
            raise ValueError("expected [ after ⊗")
        inner, pos = _parse_sum(spec.base.inner, toks, pos + 1)
        if pos >= len(toks) or toks[pos] != ("op", "]"):
            raise ValueError("expected ]")
        pos += 1
        start = ModuleElement({((), t): c for t, c in inner.items()})
    else:
        if pos < len(toks) and toks[pos] == ("op", "|"):
            pos += 1
        if pos >= len(toks) or toks[pos][0] != "name":
            raise ValueError("expected the cyclic vector name")
        pos += 1
        start = spec.cyclic()
    return coeff * act_word(spec, word, start), pos


# ----------------------------------------------------------------------------
# degrees


class DegreeScheme:
    """Projects monomials to tuples of multi-indices compared by a total order."""

    name = "abstract"
    cmp: Callable = staticmethod(revlex_tuple_cmp)

    def project(self, mono: Monomial, anchor=None) -> Tuple[MultiIndex, ...]:
        raise NotImplementedError

    def anchor_for(self, monos) -> Optional[int]:
        return None

    def zero(self) -> Tuple[MultiIndex, ...]:
        raise NotImplementedError


def _index(pairs) -> MultiIndex:
    acc: Dict[int, int] = {}
    for pos, e in pairs:
        if pos < 1:
            raise ValueError(f"monomial letter outside the declared index range (position {pos})")
        acc[pos] = acc.get(pos, 0) + e
    return MultiIndex(acc)


class HIndexScheme(DegreeScheme):
    """``h^i``: position ``s`` counts ``h_{-s}``; reverse lexicographic order."""

    name = "revlex"

    def project(self, mono, anchor=None):
        for g, _ in mono:
            if g.kind != "H":
                raise ValueError(f"{g} lies outside the h-span this order covers")
        return (_index((-g.mode, e) for g, e in mono),)

    def zero(self):
        return (MultiIndex(),)


class ImaginaryScheme(DegreeScheme):
    """``q_d^i h^j`` for the imaginary Verma family.

    ``direction="up"``: position ``s`` of ``i`` counts ``q_{d-s}``;
    ``direction="down"``: it counts ``q_{d+s}``.  ``j`` counts ``h_{-s}``.
    """

    name = "principal2"
    cmp = staticmethod(principal2_cmp)

    def __init__(self, direction: str = "up"):
        if direction not in ("up", "down"):
            raise ValueError(direction)
        self.direction = direction

    def _qpos(self, mode, d):
        return d - mode if self.direction == "up" else mode - d

    def project(self, mono, anchor=None):
        if anchor is None:
            anchor = self.anchor_for([mono])
        i = _index((self._qpos(g.mode, anchor), e) for g, e in mono if g.kind == "Q")
        j = _index((-g.mode, e) for g, e in mono if g.kind == "H")
        return (i, j)

    def anchor_for(self, monos) -> int:
        qmodes = [g.mode for mono in monos for g, _ in mono if g.kind == "Q"]
        if not qmodes:
            return 0
        return max(qmodes) + 1 if self.direction == "up" else min(qmodes) - 1

    def zero(self):
        return (MultiIndex(), MultiIndex())


class Principal4Scheme(DegreeScheme):
    """``p^i e^j q^m h^n`` over the subalgebra with offsets ``(d1, d2, d3)``."""

    name = "principal4"
    cmp = staticmethod(principal4_cmp)

    def __init__(self, d1: int, d2: int, d3: int):
        self.offsets = {"P": d2, "E": d1, "Q": d3, "H": 0}

    def project(self, mono, anchor=None):
        parts = {"P": [], "E": [], "Q": [], "H": []}
        for g, e in mono:
            parts[g.kind].append((self.offsets[g.kind] - g.mode, e))
        return tuple(_index(parts[kind]) for kind in ("P", "E", "Q", "H"))

    def zero(self):
        return (MultiIndex(),) * 4


class TripleScheme(DegreeScheme):
    """``p^{j3} e^{j2} h^{j1}`` with one mode per family, compared from ``j1`` upward."""

    name = "revlex3"

    def __init__(self, p_mode: int, e_mode: int, h_mode: int = 0):
        self.slots = {GenRef("H", h_mode): 1, GenRef("E", e_mode): 2, GenRef("P", p_mode): 3}

    def project(self, mono, anchor=None):
        return (_index((self.slots[g], e) for g, e in mono),)

    def zero(self):
        return (MultiIndex(),)


def deg_of(spec: ModuleSpec, v: ModuleElement, anchor=None) -> Tuple[MultiIndex, ...]:
    """Maximal projected monomial of ``v`` under the spec's order."""
    if not v:
        raise ValueError("deg(0) is undefined")
    scheme = spec.degree
    if scheme is None:
        raise ValueError(f"{spec.name} declares no degree order")
    monos = {k[0] for k in v.keys()}
    if anchor is None:
        anchor = scheme.anchor_for(monos)
    best = None
    for mono in monos:
        t = scheme.project(mono, anchor)
        if best is None or scheme.cmp(t, best) > 0:
            best = t
    return best


def support(spec: ModuleSpec, v: ModuleElement, anchor=None):
    scheme = spec.degree
    monos = {k[0] for k in v.keys()}
    if anchor is None:
        anchor = scheme.anchor_for(monos)
    return {scheme.project(m, anchor) for m in monos}
