"""2-cochains on the loop algebra (no center) and the cocycle identity.

A 2-cochain is any antisymmetric bilinear ``f(x, y)``; here it is either a
finite table (:class:`Cochain2`) or a function wrapped in the same class.
Brackets are taken in the loop algebra, so the central ``k`` never appears.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from .lie_core import GenRef, LieElement, format_scalar, generators, invariant_form, loop_bracket, to_fraction
from .linalg import Echelon, nullspace, rref

__all__ = [
    "Cochain1", "Cochain2", "is_cocycle", "coboundary", "standard_cocycle",
    "normalize_cocycle", "cocycle_space_dim", "CocycleSpace",
]

LOOP_KINDS = "EPQHZ"


def _ordered(x: GenRef, y: GenRef):
    return (x, y, 1) if x.sort_key() < y.sort_key() else (y, x, -1)


class Cochain2:
    """Antisymmetric bilinear form on loop generators.

    Built from a table (only one orientation stored) and/or a function
    ``fn(x, y)`` that is assumed antisymmetric already.
    """

    def __init__(self, values: Optional[Mapping] = None, fn: Optional[Callable[[GenRef, GenRef], Fraction]] = None):
        self.values: Dict[Tuple[GenRef, GenRef], Fraction] = {}
        self.fn = fn
        for (x, y), c in dict(values or {}).items():
            c = to_fraction(c)
            if x == y:
                if c:
                    raise ValueError(f"f({x},{x}) must vanish")
                continue
            a, b, s = _ordered(x, y)
            total = self.values.get((a, b), Fraction(0)) + s * c
            if total:
                self.values[(a, b)] = total
            else:
                self.values.pop((a, b), None)

    def __call__(self, x: GenRef, y: GenRef) -> Fraction:
        if x == y:
            return Fraction(0)
        a, b, s = _ordered(x, y)
        out = s * self.values.get((a, b), Fraction(0))
        if self.fn is not None:
            out += self.fn(x, y)
        return out

    def on(self, x: GenRef, y: LieElement) -> Fraction:
        """``f(x, y)`` with ``y`` a linear combination."""
        return sum((c * self(x, g) for g, c in y), Fraction(0))

    def __sub__(self, other: "Cochain2") -> "Cochain2":
        return Cochain2(fn=lambda x, y: self(x, y) - other(x, y))

    def __add__(self, other: "Cochain2") -> "Cochain2":
        return Cochain2(fn=lambda x, y: self(x, y) + other(x, y))


class Cochain1:
    """Linear functional on loop generators, finite support."""

    def __init__(self, values: Optional[Mapping] = None):
        self.values = {g: to_fraction(c) for g, c in dict(values or {}).items() if to_fraction(c)}

    def __call__(self, x) -> Fraction:
        if isinstance(x, LieElement):
            return sum((c * self.values.get(g, Fraction(0)) for g, c in x), Fraction(0))
        return self.values.get(x, Fraction(0))

    def to_json(self):
        return {str(g): format_scalar(c) for g, c in sorted(self.values.items(), key=lambda t: t[0].sort_key())}


def coboundary(g: Cochain1) -> Cochain2:
    return Cochain2(fn=lambda x, y: g(loop_bracket(x, y)))


def _standard(x: GenRef, y: GenRef) -> Fraction:
    if x.mode + y.mode != 0:
        return Fraction(0)
    return x.mode * invariant_form(x, y)


def standard_cocycle() -> Cochain2:
    return Cochain2(fn=_standard)


def _window_gens(window: int):
    return generators(-window, window, LOOP_KINDS)


def _closure_safe(a: GenRef, b: GenRef, c: GenRef, window: int) -> bool:
    return all(abs(x.mode + y.mode) <= window for x, y in ((a, b), (b, c), (c, a)))


def _safe_triples(window: int):
    for a, b, c in combinations(_window_gens(window), 3):
        if _closure_safe(a, b, c, window):
            yield a, b, c


def cyclic_sum(f: Cochain2, a: GenRef, b: GenRef, c: GenRef) -> Fraction:
    return f.on(a, loop_bracket(b, c)) + f.on(c, loop_bracket(a, b)) + f.on(b, loop_bracket(c, a))


def is_cocycle(f: Cochain2, window: int):
    """Check the cyclic identity on all closure-safe generator triples.

    Returns ``(ok, violations)`` with violations as ``(a, b, c, value)``.
    Triples with a repeated entry satisfy the identity by antisymmetry and
    are skipped.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    bad = []
    for a, b, c in _safe_triples(window):
        s = cyclic_sum(f, a, b, c)
        if s:
            bad.append((a, b, c, s))
    return not bad, bad


def normalize_cocycle(f: Cochain2, window: int):
    """Subtract the coboundary that clears every value off the ``(h, h)`` block.

    Returns ``(fprime, g)`` with ``fprime = f - coboundary(g)``; ``g`` is
    defined on modes ``[-2*window, 2*window]``.
    """
    ok, bad = is_cocycle(f, window)
    if not ok:
        a, b, c, s = bad[0]
        raise ValueError(f"not a cocycle on window {window}: cyclic sum at ({a},{b},{c}) is {s}")
    h0, q0 = GenRef("H", 0), GenRef("Q", 0)
    vals = {}
    for m in range(-2 * window, 2 * window + 1):
        vals[GenRef("E", m)] = f(h0, GenRef("E", m)) / 2
        vals[GenRef("P", m)] = f(h0, GenRef("P", m))
        vals[GenRef("Q", m)] = -f(h0, GenRef("Q", m))
        vals[GenRef("Z", m)] = -f(q0, GenRef("P", m))
    g = Cochain1(vals)
    return f - coboundary(g), g


def interior_pairs(window: int):
    """Unordered generator pairs with modes in ``[-window+1, window-1]``."""
    gens = generators(-window + 1, window - 1, LOOP_KINDS)
    return list(combinations(gens, 2))


# ----------------------------------------------------------------------------
# truncated cocycle space


class CocycleSpace:
    """Result of :func:`cocycle_space_dim`.

    ``dim_H_interior`` is the dimension of the image of ``Z`` modulo the
    image of ``B`` on interior pairs.  ``dim_H_off_hh`` is the same quotient
    after also discarding the ``(h, h)`` coordinates, i.e. the number of
    classes not detected on the ``(h, h)`` block alone.
    """

    def __init__(self, window, dim_Z, dim_B, dim_H_interior, dim_H_off_hh, standard_independent, basis, pairs):
        self.window = window
        self.dim_Z = dim_Z
        self.dim_B = dim_B
        self.dim_H_interior = dim_H_interior
        self.dim_H_off_hh = dim_H_off_hh
        self.standard_independent = standard_independent
        self.basis = basis
        self.pairs = pairs

    def as_tuple(self):
        return (self.dim_Z, self.dim_B, self.dim_H_interior)

    def to_json(self):
        out = []
        for vec in self.basis:
            out.append({f"f({self.pairs[i][0]},{self.pairs[i][1]})": format_scalar(c) for i, c in sorted(vec.items())})
        return {
            "window": self.window,
            "dim_Z": self.dim_Z,
            "dim_B": self.dim_B,
            "dim_H_interior": self.dim_H_interior,
            "dim_H_off_hh": self.dim_H_off_hh,
            "standard_independent": self.standard_independent,
            "interior_basis": out,
        }


def cocycle_space_dim(window: int) -> CocycleSpace:
    if not 2 <= window <= 6:
        raise ValueError("window must lie in [2, 6]")
    gens = _window_gens(window)
    pairs = list(combinations(gens, 2))
    col = {p: i for i, p in enumerate(pairs)}

    def coord(x: GenRef, y: GenRef):
        a, b, s = _ordered(x, y)
        return col[(a, b)], s

    # cyclic identities: each term f(x, [y, w]) expands over the bracket
    rows = []
    for a, b, c in _safe_triples(window):
        row: Dict[int, Fraction] = {}
        for x, (y, w) in ((a, (b, c)), (c, (a, b)), (b, (c, a))):
            for g, coef in loop_bracket(y, w):
                if g == x:
                    continue
                j, s = coord(x, g)
                row[j] = row.get(j, Fraction(0)) + s * coef
        row = {j: v for j, v in row.items() if v}
        if row:
            rows.append(row)
    columns = list(range(len(pairs)))
    z_basis = nullspace(rows, columns)

    # coboundaries of the indicator functionals, restricted to the window pairs
    b_rows: Dict[GenRef, Dict[int, Fraction]] = {}
    for i, (x, y) in enumerate(pairs):
        for g, coef in loop_bracket(x, y):
            b_rows.setdefault(g, {})[i] = coef
    b_vecs = [b_rows[g] for g in sorted(b_rows, key=GenRef.sort_key)]
    dim_B = len(rref(b_vecs)[1])

    inner = {i for i, (x, y) in enumerate(pairs) if abs(x.mode) < window and abs(y.mode) < window}
    hh = {i for i in inner if pairs[i][0].kind == "H" and pairs[i][1].kind == "H"}

    def proj(v, keep):
        return {i: c for i, c in v.items() if i in keep}

    b_int = Echelon(proj(v, inner) for v in b_vecs)
    z_int = Echelon(proj(v, inner) for v in z_basis)
    basis = []
    quotient = Echelon(b_int.basis())
    for v in z_int.basis():
        if quotient.add(v):
            basis.append(v)
    off = inner - hh
    b_off = Echelon(proj(v, off) for v in b_vecs)
    z_off = Echelon(proj(v, off) for v in z_basis)

    std = {}
    for i, (x, y) in enumerate(pairs):
        c = _standard(x, y)
        if c:
            std[i] = c
    standard_independent = not Echelon(b_vecs).contains(std)

    interior_list = sorted(inner)
    reindex = {i: k for k, i in enumerate(interior_list)}
    return CocycleSpace(
        window=window,
        dim_Z=len(z_basis),
        dim_B=dim_B,
        dim_H_interior=len(z_int) - len(b_int),
        dim_H_off_hh=len(z_off) - len(b_off),
        standard_independent=standard_independent,
        basis=[{reindex[i]: c for i, c in v.items()} for v in basis],
        pairs=[pairs[i] for i in interior_list],
    )
