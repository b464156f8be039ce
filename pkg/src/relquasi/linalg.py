"""Exact sparse linear algebra over Q and Z.

Vectors are plain dicts ``{column: value}`` with no zero entries.  Columns are
any totally ordered hashable keys (usually ints).
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Sequence

Vector = Dict[Hashable, object]


class Echelon:
    """Incremental row echelon form over Q.

    Each stored row is normalized so its smallest column (the pivot) has
    coefficient 1; other rows may still mention that column, so reduction
    walks pivots in increasing order through a heap.
    """

    def __init__(self, rows: Iterable[Vector] = ()):
        self.rows: Dict[Hashable, Dict[Hashable, Fraction]] = {}
        for r in rows:
            self.add(r)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[Hashable]:
        return sorted(self.rows)

    def reduce(self, v: Vector) -> Dict[Hashable, Fraction]:
        """Remainder of ``v`` after eliminating every pivot column."""
        out = {k: Fraction(c) for k, c in v.items() if c}
        heap = [k for k in out if k in self.rows]
        heapq.heapify(heap)
        seen = set()
        while heap:
            p = heapq.heappop(heap)
            if p in seen:
                continue
            c = out.get(p)
            if not c:
                continue
            seen.add(p)
            for k, a in self.rows[p].items():
                val = out.get(k, 0) - c * a
                if val:
                    if k not in out and k in self.rows and k not in seen:
                        heapq.heappush(heap, k)
                    out[k] = val
                else:
                    out.pop(k, None)
        return out

    def add(self, v: Vector) -> bool:
        """Insert ``v``; return True when it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        lead = r[p]
        self.rows[p] = {k: c / lead for k, c in r.items()}
        return True

    def in_span(self, v: Vector) -> bool:
        return not self.reduce(v)


def rank(rows: Iterable[Vector]) -> int:
    return Echelon(rows).rank


def independent_subset(rows: Sequence[Vector]) -> List[int]:
    """Indices of a greedily chosen maximal independent subfamily."""
    ech = Echelon()
    return [i for i, r in enumerate(rows) if ech.add(r)]


def rref(rows: Iterable[Vector], columns: Sequence[Hashable]) -> Dict[Hashable, Dict[Hashable, Fraction]]:
    """Fully reduced row echelon form with column priority given by ``columns``.

    Returns ``{pivot_column: row}`` where each row has a 1 in its pivot and
    zeros in every other pivot column.
    """
    index = {c: i for i, c in enumerate(columns)}
    ech = Echelon({index[k]: c for k, c in r.items()} for r in rows)
    reduced: Dict[int, Dict[int, Fraction]] = {}
    for p in sorted(ech.rows, reverse=True):
        row = dict(ech.rows[p])
        for q in [k for k in row if k != p and k in reduced]:
            c = row[q]
            for k, a in reduced[q].items():
                val = row.get(k, 0) - c * a
                if val:
                    row[k] = val
                else:
                    row.pop(k, None)
        reduced[p] = row
    return {columns[p]: {columns[k]: c for k, c in row.items()} for p, row in reduced.items()}


# ---------------------------------------------------------------------------
# integer lattices

class Lattice:
    """Row-style Hermite normal form of a Z-span, used for membership tests."""

    def __init__(self, rows: Iterable[Vector] = ()):
        self.rows: Dict[Hashable, Dict[Hashable, int]] = {}
        for r in rows:
            self.add(r)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce_against(self, v: Dict[Hashable, int]):
        """Eliminate pivots from ``v``; returns (remainder, first_unmatched_col)."""
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None:
                return v, p
            a, b = v[p], row[p]
            if a % b:
                return v, p
            q = a // b
            for k, c in row.items():
                val = v.get(k, 0) - q * c
                if val:
                    v[k] = val
                else:
                    v.pop(k, None)
        return v, None

    def add(self, vec: Vector) -> None:
        v = {k: int(c) for k, c in vec.items() if c}
        while v:
            v, p = self._reduce_against(v)
            if p is None:
                return
            row = self.rows.get(p)
            if row is None:
                if v[p] < 0:
                    v = {k: -c for k, c in v.items()}
                self.rows[p] = v
                return
            # gcd step between v and the stored row at pivot p
            a, b = v[p], row[p]
            while a:
                q = b // a
                row = _axpy(row, v, -q)
                row, v = v, row
                a, b = v.get(p, 0), row[p]
            if row[p] < 0:
                row = {k: -c for k, c in row.items()}
            self.rows[p] = row

    def contains(self, vec: Vector) -> bool:
        if any(Fraction(c).denominator != 1 for c in vec.values()):
            return False
        v = {k: int(c) for k, c in vec.items() if c}
        rem, _ = self._reduce_against(v)
        return not rem


def _axpy(x: Dict, y: Dict, a: int) -> Dict:
    out = dict(x)
    for k, c in y.items():
        val = out.get(k, 0) + a * c
        if val:
            out[k] = val
        else:
            out.pop(k, None)
    return out


def integer_kernel(rows: Sequence[Vector], ncols: Sequence[Hashable]) -> List[Dict[int, int]]:
    """Z-basis of ``{c in Z^len(rows) : sum_i c_i rows[i] = 0}``.

    Rows are augmented with an identity block and reduced over Z; the rows
    whose original part vanishes span the integer kernel.
    """
    order = {c: i for i, c in enumerate(ncols)}
    n = len(order)
    lat = Lattice()
    for i, r in enumerate(rows):
        v = {order[k]: int(c) for k, c in r.items() if c}
        v[n + i] = 1
        lat.add(v)
    return [{k - n: c for k, c in row.items()} for p, row in lat.rows.items() if p >= n]
