"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``column -> Fraction`` with no zero entries.  Columns may be
any hashable, orderable key.  Pivoting picks, for each column in order, the
candidate row whose entry has the smallest absolute value (ties broken by row
position), so ranks and bases come out the same on every run.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence

Vector = Dict[Hashable, Fraction]


def _axpy(a: Fraction, x: Vector, y: Vector) -> None:
    """y += a*x, in place."""
    for col, v in x.items():
        s = y.get(col, 0) + a * v
        if s:
            y[col] = s
        else:
            y.pop(col, None)


class Echelon:
    """Incrementally maintained reduced row-echelon basis of a subspace."""

    def __init__(self, vectors: Iterable[Vector] = ()):
        self.rows: Dict[Hashable, Vector] = {}  # pivot column -> row (pivot entry 1)
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Vector) -> Vector:
        """Canonical remainder of ``v`` modulo the subspace."""
        r = dict(v)
        for col in [c for c in r if c in self.rows]:
            a = r.get(col)
            if a:
                _axpy(-a, self.rows[col], r)
        return r

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def add(self, v: Vector) -> bool:
        """Add ``v``; return True iff it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        col = min(r, key=_colkey)
        inv = 1 / r[col]
        r = {c: x * inv for c, x in r.items()}
        for row in self.rows.values():
            a = row.get(col)
            if a:
                _axpy(-a, r, row)
        self.rows[col] = r
        return True

    def basis(self) -> List[Vector]:
        return [self.rows[c] for c in sorted(self.rows, key=_colkey)]


def _colkey(c):
    return (0, c) if isinstance(c, int) else (1, repr(c))


def rref(rows: Sequence[Vector], columns: Optional[Sequence[Hashable]] = None):
    """Row-reduce a list of sparse rows.

    Returns ``(reduced_rows, pivot_columns)``.  ``columns`` fixes the column
    order; by default the sorted union of all keys.
    """
    if columns is None:
        columns = sorted({c for r in rows for c in r}, key=_colkey)
    work = [dict(r) for r in rows if r]
    pivots = []
    done: List[Vector] = []
    for col in columns:
        cands = [i for i, r in enumerate(work) if r.get(col)]
        if not cands:
            continue
        i = min(cands, key=lambda i: (abs(work[i][col]), i))
        prow = work.pop(i)
        inv = 1 / prow[col]
        prow = {c: x * inv for c, x in prow.items()}
        for r in work:
            a = r.get(col)
            if a:
                _axpy(-a, prow, r)
        for r in done:
            a = r.get(col)
            if a:
                _axpy(-a, prow, r)
        work = [r for r in work if r]
        done.append(prow)
        pivots.append(col)
    return done, pivots


def rank(rows: Sequence[Vector]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Vector], columns: Sequence[Hashable]) -> List[Vector]:
    """Basis of ``{x : row . x = 0 for every row}`` over the given columns."""
    reduced, pivots = rref(rows, columns)
    pivset = set(pivots)
    basis = []
    for free in columns:
        if free in pivset:
            continue
        vec = {free: Fraction(1)}
        for prow, pc in zip(reduced, pivots):
            a = prow.get(free)
            if a:
                vec[pc] = -a
        basis.append(vec)
    return basis
