"""The affine ageing algebra: generators, bracket table, invariant form.

Basis elements are ``e_n, p_n, q_n, h_n, z_n`` (``n`` any integer) and the
central element ``k``.  Coefficients are :class:`fractions.Fraction`.

    >>> bracket(H(1), E(-1))
    LieElement('2*e(0)')
    >>> bracket(H(2), H(-2))
    LieElement('2*k')
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, NamedTuple, Tuple, Union

__all__ = [
    "KINDS", "GenRef", "LieElement", "E", "P", "Q", "H", "Z", "K",
    "bracket", "loop_bracket", "bracket_lin", "invariant_form",
    "loop_degree", "to_fraction", "format_scalar", "parse_genref",
    "generators", "jacobi_sum", "jacobi_violations", "antisymmetry_violations",
]

KINDS = ("E", "P", "Q", "H", "Z", "K")
_RANK = {kind: i for i, kind in enumerate(KINDS)}

Scalar = Fraction


def to_fraction(x: Union[int, str, Fraction]) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class GenRef(NamedTuple):
    """A basis element ``kind_mode``.  ``K`` carries mode 0 by convention."""

    kind: str
    mode: int = 0

    def sort_key(self) -> Tuple[int, int]:
        return (_RANK[self.kind], self.mode)

    def __str__(self) -> str:
        if self.kind == "K":
            return "k"
        return f"{self.kind.lower()}({self.mode})"

    def __repr__(self) -> str:
        return f"GenRef({str(self)!r})"


def E(n: int) -> GenRef:
    return GenRef("E", n)


def P(n: int) -> GenRef:
    return GenRef("P", n)


def Q(n: int) -> GenRef:
    return GenRef("Q", n)


def H(n: int) -> GenRef:
    return GenRef("H", n)


def Z(n: int) -> GenRef:
    return GenRef("Z", n)


K = GenRef("K", 0)


def generators(lo: int, hi: int, kinds: Iterable[str] = "EPQHZ", central: bool = False):
    """All generators with kind in ``kinds`` and mode in ``[lo, hi]``."""
    out = [GenRef(kind, n) for kind in kinds for n in range(lo, hi + 1)]
    if central:
        out.append(K)
    return out


_GEN_RE = re.compile(r"\s*([ephqzEPHQZ])\s*\(\s*([+-]?\d+)\s*\)\s*|\s*([kK])\s*")


def parse_genref(text: str) -> GenRef:
    m = _GEN_RE.fullmatch(text)
    if not m:
        raise ValueError(f"cannot parse generator {text!r}")
    if m.group(3):
        return K
    return GenRef(m.group(1).upper(), int(m.group(2)))


class LieElement:
    """Finite linear combination of generators, immutable.

    Zero coefficients are never stored; iteration yields ``(GenRef, Fraction)``
    pairs in canonical order (kind rank ``E<P<Q<H<Z<K``, then mode).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc: Dict[GenRef, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, dict) else terms
            for g, c in items:
                c = to_fraction(c)
                if c:
                    acc[g] = acc.get(g, Fraction(0)) + c
        self._terms = {g: acc[g] for g in sorted(acc, key=GenRef.sort_key) if acc[g]}

    @classmethod
    def of(cls, g: GenRef, c=1) -> "LieElement":
        return cls({g: c})

    @classmethod
    def parse(cls, text: str) -> "LieElement":
        return _parse_lie(text)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[Tuple[GenRef, Fraction]]:
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, g: GenRef) -> Fraction:
        return self._terms.get(g, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, LieElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "LieElement":
        return LieElement({g: -c for g, c in self._terms.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __rmul__(self, c) -> "LieElement":
        c = to_fraction(c)
        return LieElement({g: c * x for g, x in self._terms.items()})

    __mul__ = __rmul__

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for g, c in self._terms.items():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = str(g) if a == 1 else f"{format_scalar(a)}*{g}"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"LieElement({str(self)!r})"


_TERM_RE = re.compile(
    r"\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*\s*)?(?P<gen>[ephqzEPHQZ]\s*\(\s*[+-]?\d+\s*\)|[kK])\s*"
)


def _split_signed(text: str):
    """Split ``a - b + c`` into signed chunks, ignoring signs inside parentheses."""
    chunks, depth, cur, sign = [], 0, "", 1
    for ch in text.strip():
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-":
            if cur.strip():
                chunks.append((sign, cur))
                cur = ""
                sign = 1 if ch == "+" else -1
            else:
                sign = sign * (1 if ch == "+" else -1)
            continue
        cur += ch
    if cur.strip():
        chunks.append((sign, cur))
    return chunks


def _parse_lie(text: str) -> LieElement:
    if text.strip() == "0":
        return LieElement()
    terms = []
    for sign, chunk in _split_signed(text):
        m = _TERM_RE.fullmatch(chunk)
        if not m:
            raise ValueError(f"cannot parse term {chunk!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        terms.append((parse_genref(m.group("gen")), sign * coef))
    return LieElement(terms)


# Structure constants of the loop part: (kind_x, kind_y) -> (coefficient, result kind).
# Only one orientation is listed; the other follows by antisymmetry.
STRUCTURE: Dict[Tuple[str, str], Tuple[int, str]] = {
    ("H", "E"): (2, "E"),
    ("H", "P"): (1, "P"),
    ("H", "Q"): (-1, "Q"),
    ("E", "Q"): (1, "P"),
    ("P", "Q"): (1, "Z"),
}


def invariant_form(x: GenRef, y: GenRef) -> Fraction:
    """The invariant symmetric form on the finite-dimensional algebra, by kind."""
    return Fraction(1) if x.kind == "H" and y.kind == "H" else Fraction(0)


def _loop_terms(x: GenRef, y: GenRef):
    entry = STRUCTURE.get((x.kind, y.kind))
    if entry is not None:
        c, kind = entry
        return [(GenRef(kind, x.mode + y.mode), c)]
    entry = STRUCTURE.get((y.kind, x.kind))
    if entry is not None:
        c, kind = entry
        return [(GenRef(kind, x.mode + y.mode), -c)]
    return []


def loop_bracket(x: GenRef, y: GenRef) -> LieElement:
    """Bracket in the loop algebra, i.e. without the central term."""
    if x.kind == "K" or y.kind == "K":
        return LieElement()
    return LieElement(_loop_terms(x, y))


def bracket(x: GenRef, y: GenRef) -> LieElement:
    if x.kind == "K" or y.kind == "K":
        return LieElement()
    terms = _loop_terms(x, y)
    if x.mode + y.mode == 0:
        c = x.mode * invariant_form(x, y)
        if c:
            terms.append((K, c))
    return LieElement(terms)


def bracket_lin(x: LieElement, y: LieElement) -> LieElement:
    terms = []
    for gx, cx in x:
        for gy, cy in y:
            for g, c in bracket(gx, gy):
                terms.append((g, cx * cy * c))
    return LieElement(terms)


def loop_degree(x: LieElement):
    """Common mode of all terms, or ``"mixed"``.  ``k`` counts as mode 0."""
    if not x:
        raise ValueError("degree of 0 is undefined")
    modes = {g.mode for g, _ in x}
    return modes.pop() if len(modes) == 1 else "mixed"


def jacobi_sum(x: LieElement, y: LieElement, z: LieElement) -> LieElement:
    return bracket_lin(x, bracket_lin(y, z)) + bracket_lin(z, bracket_lin(x, y)) + bracket_lin(y, bracket_lin(z, x))


def antisymmetry_violations(window: int = 5):
    gens = generators(-window, window, central=True)
    return [(x, y) for x in gens for y in gens if bracket(x, y) != -bracket(y, x)]


def jacobi_violations(window: int = 4):
    """All ordered generator triples with modes in ``[-window, window]`` whose
    cyclic bracket sum is nonzero."""
    gens = generators(-window, window, central=True)
    table = {(a, b): bracket(a, b) for a in gens for b in gens}

    def br(a, b):
        out = table.get((a, b))
        return out if out is not None else bracket(a, b)

    bad = []
    for x in gens:
        for y in gens:
            for z in gens:
                acc: Dict[GenRef, Fraction] = {}
                for a, b, c in ((x, y, z), (z, x, y), (y, z, x)):
                    for g, co in br(b, c):
                        for g2, c2 in br(a, g):
                            acc[g2] = acc.get(g2, 0) + co * c2
                if any(acc.values()):
                    bad.append((x, y, z))
    return bad
