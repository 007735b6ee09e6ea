"""Constructors for the concrete modules: Verma, imaginary Verma, their
irreducible quotients, induced modules and the standard Whittaker module.

Every constructor validates its hypotheses (subalgebra conditions, the
Lie-homomorphism property of the base character on a window) and raises
``ValueError`` on failure.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from .lie_core import GenRef, K, bracket, generators, parse_genref, to_fraction
from .pbw_engine import (
    Family, Functional, HIndexScheme, ImaginaryScheme, ModuleSpec, Nested,
    Principal4Scheme, TripleScheme,
)

__all__ = [
    "ZSequence", "SubalgebraTriple", "verma", "imaginary_verma", "quotient_Uh",
    "quotient_Uq", "one_dim", "subalgebra_contains", "induced", "whittaker_block",
    "whittaker_M", "whittaker_full", "check_base_homomorphism", "WHITTAKER_TRIPLE",
    "spec_from_config", "load_spec",
]

CHECK_WINDOW = 6


@dataclass(frozen=True)
class ZSequence:
    """Values of the central character on ``z_n``.

    ``support`` lists explicit values.  ``tail`` declares the shape:

    * ``"zero_up"``: ``z_{r+i} = 0`` for ``i > 0``; below ``r`` unlisted
      modes take ``fill``.
    * ``"zero_down"``: ``z_{r-i} = 0`` for ``i > 0``; above ``r`` unlisted
      modes take ``fill``.
    * ``"finite"``: only ``support`` is nonzero (``fill`` must be 0).
    """

    support: Tuple[Tuple[int, Fraction], ...] = ()
    tail: str = "finite"
    r: Optional[int] = None
    fill: Fraction = Fraction(0)

    @classmethod
    def make(cls, support: Mapping[int, object] = (), tail: str = "finite", r: Optional[int] = None, fill=0):
        sup = tuple(sorted((int(n), to_fraction(c)) for n, c in dict(support).items() if to_fraction(c)))
        fill = to_fraction(fill)
        if tail not in ("zero_up", "zero_down", "finite"):
            raise ValueError(f"unknown tail shape {tail!r}")
        if tail == "finite":
            if fill:
                raise ValueError("a finite z-sequence cannot have a fill value")
        else:
            if r is None:
                if fill:
                    raise ValueError("r is required when fill is nonzero")
                if sup:
                    r = max(n for n, _ in sup) if tail == "zero_up" else min(n for n, _ in sup)
            if r is not None:
                bad = [n for n, _ in sup if (n > r if tail == "zero_up" else n < r)]
                if bad:
                    raise ValueError(f"support {bad} lies in the declared zero tail beyond r={r}")
        return cls(sup, tail, r, fill)

    def __call__(self, n: int) -> Fraction:
        for m, c in self.support:
            if m == n:
                return c
        if self.fill and self.r is not None:
            if self.tail == "zero_up" and n < self.r:
                return self.fill
            if self.tail == "zero_down" and n > self.r:
                return self.fill
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.support and not self.fill

    def simplicity_shape(self) -> bool:
        """``z_r != 0`` with the declared zero tail on one side of ``r``."""
        return self.tail in ("zero_up", "zero_down") and self.r is not None and self(self.r) != 0

    def to_json(self) -> dict:
        out = {"support": {str(n): str(c) for n, c in self.support}, "tail": self.tail}
        if self.r is not None:
            out["r"] = self.r
        if self.fill:
            out["fill"] = str(self.fill)
        return out


@dataclass(frozen=True)
class SubalgebraTriple:
    d1: int
    d2: int
    d3: int

    def __post_init__(self):
        if self.d1 + self.d3 < self.d2:
            raise ValueError(f"d1 + d3 >= d2 fails for {(self.d1, self.d2, self.d3)}")

    def as_tuple(self):
        return (self.d1, self.d2, self.d3)


WHITTAKER_TRIPLE = SubalgebraTriple(-1, -1, 1)


def subalgebra_contains(t: SubalgebraTriple, x: GenRef) -> bool:
    if x.kind in ("Z", "K"):
        return True
    low = {"H": 0, "E": t.d1, "P": t.d2, "Q": t.d3}[x.kind]
    return x.mode >= low


# ----------------------------------------------------------------------------
# validation


def check_base_homomorphism(spec: ModuleSpec, window: int = CHECK_WINDOW):
    """Check that the base is a subalgebra and the functional kills its brackets.

    Returns a list of violation strings (empty when consistent).
    """
    if not isinstance(spec.base, Functional):
        return []
    base = [g for g in generators(-window, window) if spec.ambient(g) and not spec.is_complement(g)]
    problems = []
    for i, a in enumerate(base):
        for b in base[i + 1:]:
            br = bracket(a, b)
            total = Fraction(0)
            for g, c in br:
                if not spec.ambient(g) or spec.is_complement(g):
                    problems.append(f"[{a},{b}] leaves the base via {g}")
                    break
                total += c * spec.base.value(g)
            else:
                if total:
                    problems.append(f"character does not vanish on [{a},{b}] = {br}")
    return problems


def _validate(spec: ModuleSpec, strict: bool = True, window: int = CHECK_WINDOW) -> ModuleSpec:
    problems = check_base_homomorphism(spec, window)
    if problems:
        if strict:
            raise ValueError(f"{spec.name}: " + "; ".join(problems[:5]))
        spec.flags.append("base character is not a Lie homomorphism: " + problems[0])
        warnings.warn(f"{spec.name}: " + problems[0])
    return spec


# ----------------------------------------------------------------------------
# Verma-type modules


def _hk_values(h_val, k_val):
    return {GenRef("H", 0): to_fraction(h_val), K: to_fraction(k_val)}


def verma(h_val=0, k_val=0) -> ModuleSpec:
    h_val, k_val = to_fraction(h_val), to_fraction(k_val)
    spec = ModuleSpec(
        name=f"M_V({h_val},{k_val})",
        kind="verma",
        complement=tuple(Family(kind, None, 0) for kind in "HPEQZ"),
        base=Functional(_hk_values(h_val, k_val)),
        vector="v",
        graded=True,
        params={"h": h_val, "k": k_val},
    )
    return _validate(spec)


def _z_rule(z: ZSequence):
    def rule(g: GenRef) -> Fraction:
        return z(g.mode) if g.kind == "Z" else Fraction(0)
    return rule


def imaginary_verma(h_val=0, k_val=0, z: Optional[ZSequence] = None) -> ModuleSpec:
    h_val, k_val = to_fraction(h_val), to_fraction(k_val)
    z = z if z is not None else ZSequence()
    direction = "down" if z.tail == "zero_down" else "up"
    spec = ModuleSpec(
        name=f"M_IV({h_val},{k_val},z)",
        kind="imaginary_verma",
        complement=(Family("Q"), Family("H", None, 0)),
        base=Functional(_hk_values(h_val, k_val), rule=_z_rule(z)),
        vector="v",
        params={"h": h_val, "k": k_val, "z": z},
        degree=ImaginaryScheme(direction),
    )
    return _validate(spec)


def quotient_Uh(h_val=0, k_val=0) -> ModuleSpec:
    h_val, k_val = to_fraction(h_val), to_fraction(k_val)
    spec = ModuleSpec(
        name=f"U_h({h_val},{k_val})",
        kind="U_h",
        complement=(Family("H", None, 0),),
        base=Functional(_hk_values(h_val, k_val)),
        vector="w",
        graded=True,
        params={"h": h_val, "k": k_val},
        degree=HIndexScheme(),
    )
    return _validate(spec)


def quotient_Uq(h_val=0, k_val=0, z: Optional[ZSequence] = None) -> ModuleSpec:
    """Irreducible quotient free over the ``q_n``.

    Only a module when ``k_val == 0``; other values build the spec with a
    warning and a flag.
    """
    h_val, k_val = to_fraction(h_val), to_fraction(k_val)
    z = z if z is not None else ZSequence()
    direction = "down" if z.tail == "zero_down" else "up"
    spec = ModuleSpec(
        name=f"U_q({h_val},{k_val},z)",
        kind="U_q",
        complement=(Family("Q"),),
        base=Functional(_hk_values(h_val, k_val), rule=_z_rule(z)),
        vector="w",
        params={"h": h_val, "k": k_val, "z": z},
        degree=ImaginaryScheme(direction),
    )
    if k_val:
        spec.flags.append("k_val != 0: relations h_i w = 0 (i != 0) force k = 0")
    return _validate(spec, strict=not k_val)


def one_dim(h_val=0) -> ModuleSpec:
    """One-dimensional module; only ``h_0`` may act nontrivially (by ``h_val``)."""
    h_val = to_fraction(h_val)
    spec = ModuleSpec(
        name=f"C_w({h_val})",
        kind="one_dim",
        complement=(),
        base=Functional({GenRef("H", 0): h_val}),
        vector="w",
        graded=True,
        params={"h": h_val, "k": Fraction(0)},
    )
    return _validate(spec)


# ----------------------------------------------------------------------------
# induced and Whittaker modules


def induced(t: SubalgebraTriple, inner: ModuleSpec, l: Optional[int] = None, window: int = CHECK_WINDOW) -> ModuleSpec:
    """Module induced from ``inner``, a module over the subalgebra with offsets ``t``."""
    if not isinstance(t, SubalgebraTriple):
        t = SubalgebraTriple(*t)
    mismatch = [g for g in generators(-window, window, central=True) if inner.ambient(g) != subalgebra_contains(t, g)]
    if mismatch:
        raise ValueError(f"{inner.name} is not a module over the subalgebra {t.as_tuple()}: {mismatch[:3]}")
    if l is not None and l <= t.d2:
        raise ValueError(f"l must exceed d2={t.d2}")
    return ModuleSpec(
        name=f"Ind{t.as_tuple()}[{inner.name}]",
        kind="induced",
        complement=(Family("P", None, t.d2), Family("E", None, t.d1), Family("Q", None, t.d3), Family("H", None, 0)),
        base=Nested(inner),
        vector=inner.vector,
        params={"triple": t, "l": l},
        degree=Principal4Scheme(t.d1, t.d2, t.d3),
    )


def _parse_phi(phi: Mapping) -> Dict[GenRef, Fraction]:
    out = {}
    for g, c in dict(phi).items():
        g = parse_genref(g) if isinstance(g, str) else g
        c = to_fraction(c)
        if c:
            out[g] = c
    return out


def whittaker_block(t: SubalgebraTriple, phi: Mapping, window: int = CHECK_WINDOW) -> ModuleSpec:
    """Module over the subalgebra ``t`` induced from a character ``phi``.

    The character lives on the subalgebra spanned by ``h_{i>=1}``,
    ``e_{i>d1}``, ``p_{i>d2}``, ``q_{i>=d3}``, all ``z_i`` and ``k``; the
    module is free over ``p_{d2}, e_{d1}, h_0``, written in that order.
    """
    if not isinstance(t, SubalgebraTriple):
        t = SubalgebraTriple(*t)
    phi = _parse_phi(phi)

    def ambient(g: GenRef) -> bool:
        return subalgebra_contains(t, g)

    comp = (Family("P", t.d2, t.d2 + 1), Family("E", t.d1, t.d1 + 1), Family("H", 0, 1))
    spec = ModuleSpec(
        name=f"W{t.as_tuple()}",
        kind="whittaker_block",
        complement=comp,
        base=Functional(phi),
        ambient=ambient,
        vector="w",
        params={"triple": t, "phi": phi},
        degree=TripleScheme(t.d2, t.d1, 0),
    )
    for g in phi:
        if not ambient(g) or spec.is_complement(g):
            raise ValueError(f"character given on {g}, which is outside the inducing subalgebra")
    return _validate(spec, window=max(window, max((abs(g.mode) for g in phi), default=0) + 2))


def whittaker_M(phi: Mapping) -> ModuleSpec:
    """The ``(-1,-1,1)`` block: free over ``p_{-1}, e_{-1}, h_0``."""
    spec = whittaker_block(WHITTAKER_TRIPLE, phi)
    spec.name = "M(phi)"
    return spec


def whittaker_full(phi: Mapping) -> ModuleSpec:
    spec = induced(WHITTAKER_TRIPLE, whittaker_M(phi), l=0)
    spec.name = "W(phi)"
    return spec


# ----------------------------------------------------------------------------
# JSON configs


def _zseq(cfg) -> ZSequence:
    if cfg is None:
        return ZSequence()
    return ZSequence.make(
        {int(n): c for n, c in cfg.get("support", {}).items()},
        cfg.get("tail", "finite"),
        cfg.get("r"),
        cfg.get("fill", 0),
    )


def _triple(x) -> SubalgebraTriple:
    if isinstance(x, str):
        x = [int(s) for s in x.split(",")]
    return SubalgebraTriple(*[int(s) for s in x])


def spec_from_config(cfg: dict) -> ModuleSpec:
    """Build a spec from a parsed JSON config, e.g.

    ``{"module": "imaginary_verma", "h": "2", "k": "1",
    "z": {"support": {"-1": "3"}, "tail": "zero_up", "r": -1}}``
    """
    if not isinstance(cfg, dict) or "module" not in cfg:
        raise ValueError("config needs a 'module' entry")
    kind = cfg["module"]
    h, k = cfg.get("h", 0), cfg.get("k", 0)
    if kind == "verma":
        return verma(h, k)
    if kind == "imaginary_verma":
        return imaginary_verma(h, k, _zseq(cfg.get("z")))
    if kind == "U_h":
        return quotient_Uh(h, k)
    if kind == "U_q":
        return quotient_Uq(h, k, _zseq(cfg.get("z")))
    if kind == "one_dim":
        return one_dim(h)
    if kind == "whittaker_M":
        return whittaker_M(cfg.get("phi", {}))
    if kind == "whittaker_full":
        return whittaker_full(cfg.get("phi", {}))
    if kind == "whittaker_block":
        return whittaker_block(_triple(cfg["d"]), cfg.get("phi", {}))
    if kind == "induced":
        return induced(_triple(cfg["d"]), spec_from_config(cfg["inner"]), cfg.get("l"))
    raise ValueError(f"unknown module kind {kind!r}")


def load_spec(path) -> ModuleSpec:
    with open(path) as fh:
        return spec_from_config(json.load(fh))
