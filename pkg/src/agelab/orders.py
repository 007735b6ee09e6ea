"""Multi-indices and the total orders used in degree arguments.

A :class:`MultiIndex` is a finitely supported vector ``(..., i_2, i_1)`` of
nonnegative integers, stored as a sorted tuple of ``(position, exponent)``
pairs with positive exponents.  Comparisons return ``-1``, ``0`` or ``1``.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Sequence, Tuple

LESS, EQUAL, GREATER = -1, 0, 1


class MultiIndex:
    __slots__ = ("_items",)

    def __init__(self, entries: Mapping[int, int] | Iterable[Tuple[int, int]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: Dict[int, int] = {}
        for pos, exp in items:
            if pos < 1:
                raise ValueError(f"positions start at 1, got {pos}")
            if exp < 0:
                raise ValueError(f"negative exponent {exp} at position {pos}")
            acc[pos] = acc.get(pos, 0) + exp
        self._items = tuple(sorted((p, e) for p, e in acc.items() if e))

    @classmethod
    def eps(cls, i: int) -> "MultiIndex":
        return cls({i: 1})

    def __getitem__(self, pos: int) -> int:
        for p, e in self._items:
            if p == pos:
                return e
        return 0

    def items(self):
        return self._items

    def __bool__(self):
        return bool(self._items)

    def __eq__(self, other):
        return isinstance(other, MultiIndex) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        return MultiIndex(self._items + other._items)

    def __sub__(self, other: "MultiIndex") -> "MultiIndex":
        out = dict(self._items)
        for p, e in other._items:
            left = out.get(p, 0) - e
            if left < 0:
                raise ValueError(f"{self} - {other} has a negative entry at position {p}")
            out[p] = left
        return MultiIndex(out)

    def min_position(self) -> int:
        """Smallest position with a nonzero entry."""
        if not self._items:
            raise ValueError("zero multi-index has no nonzero entry")
        return self._items[0][0]

    def __repr__(self):
        if not self._items:
            return "0"
        return "+".join(f"{e}*eps{p}" if e > 1 else f"eps{p}" for p, e in self._items)

    def to_json(self):
        return {str(p): e for p, e in self._items}


ZERO = MultiIndex()


def weight(i: MultiIndex) -> int:
    return sum(p * e for p, e in i.items())


def size(i: MultiIndex) -> int:
    return sum(e for _, e in i.items())


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def revlex_cmp(i: MultiIndex, j: MultiIndex) -> int:
    """Compare entry by entry starting from position 1; the first difference decides."""
    a, b = dict(i.items()), dict(j.items())
    for pos in sorted(set(a) | set(b)):
        d = a.get(pos, 0) - b.get(pos, 0)
        if d:
            return _sign(d)
    return EQUAL


def principal2_cmp(a: Sequence[MultiIndex], b: Sequence[MultiIndex]) -> int:
    """Order on pairs ``(i, j)``: weight of ``i``, then ``i`` revlex, then ``j`` revlex."""
    (i, j), (i2, j2) = a, b
    c = _sign(weight(i) - weight(i2))
    if c:
        return c
    c = revlex_cmp(i, i2)
    if c:
        return c
    return revlex_cmp(j, j2)


def principal4_cmp(a: Sequence[MultiIndex], b: Sequence[MultiIndex]) -> int:
    """Order on ``(i, j, m, n)``.

    Decided by, in turn: ``w(m+n)``, ``n``, ``m``, ``w(i+j)``, ``j``, ``i``.
    """
    (i, j, m, n), (i2, j2, m2, n2) = a, b
    c = _sign(weight(m) + weight(n) - weight(m2) - weight(n2))
    if c:
        return c
    c = revlex_cmp(n, n2)
    if c:
        return c
    c = revlex_cmp(m, m2)
    if c:
        return c
    c = _sign(weight(i) + weight(j) - weight(i2) - weight(j2))
    if c:
        return c
    c = revlex_cmp(j, j2)
    if c:
        return c
    return revlex_cmp(i, i2)


def revlex_tuple_cmp(a: Sequence[MultiIndex], b: Sequence[MultiIndex]) -> int:
    """``revlex_cmp`` lifted to 1-tuples, so every order acts on tuples."""
    return revlex_cmp(a[0], b[0])
