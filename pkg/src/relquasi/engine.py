"""Degreewise exact linear algebra in graded quotients ``Q[vars]/(relations)``.

Normal forms are computed one homogeneous component at a time by a fully
reduced echelon form of the ideal component, with columns in descending
graded-lex order; the non-pivot monomials are the standard monomials.  When
the relations involve disjoint groups of variables, the quotient is the
tensor product of the quotients of each group, and each group is handled
separately.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .algebra import Exponent, PolyRing, Polynomial, monomials_of_degree
from .linalg import rref


class TruncationExceeded(ValueError):
    pass


class _Component:
    def __init__(self, variables: Sequence[int], relations: Sequence[Dict[Exponent, Fraction]]):
        self.vars = tuple(variables)
        self.relations = list(relations)
        self.rel_degrees = [sum(next(iter(r))) for r in self.relations]
        self._rows: Dict[int, Dict[Exponent, Dict[Exponent, Fraction]]] = {}
        self._std: Dict[int, Tuple[Exponent, ...]] = {}

    def _build(self, d: int) -> None:
        nv = len(self.vars)
        monos = monomials_of_degree(nv, d)
        rows = []
        for rel, rd in zip(self.relations, self.rel_degrees):
            if rd > d:
                continue
            for shift in monomials_of_degree(nv, d - rd):
                rows.append({tuple(a + b for a, b in zip(e, shift)): c for e, c in rel.items()})
        reduced = rref(rows, monos) if rows else {}
        self._rows[d] = reduced
        self._std[d] = tuple(m for m in monos if m not in reduced)

    def standard(self, d: int) -> Tuple[Exponent, ...]:
        if d not in self._std:
            self._build(d)
        return self._std[d]

    def nf_monomial(self, e: Exponent) -> Dict[Exponent, Fraction]:
        d = sum(e)
        if d not in self._rows:
            self._build(d)
        row = self._rows[d].get(e)
        if row is None:
            return {e: Fraction(1)}
        return {q: -c for q, c in row.items() if q != e}


class GradedComponentEngine:
    """Quotient of ``ring`` by homogeneous ``relations``, handled degree by degree."""

    def __init__(self, ring: PolyRing, relations: Sequence[Polynomial] = (), max_degree: int = 32):
        self.ring = ring
        self.relations = tuple(r for r in relations if r)
        self.max_degree = max_degree
        for r in self.relations:
            if r.ring != ring:
                raise ValueError("relation lives in another ring")
            if not r.is_homogeneous():
                raise ValueError(f"relation {r} is not homogeneous")
        self.components = self._split()
        self._nf_cache: Dict[Exponent, Dict[Exponent, Fraction]] = {}
        self._std_cache: Dict[int, Tuple[Exponent, ...]] = {}

    def _split(self) -> List[_Component]:
        n = self.ring.nvars
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for r in self.relations:
            used = sorted(r.variables_used())
            for v in used[1:]:
                parent[find(v)] = find(used[0])
        groups: Dict[int, List[int]] = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        comps = []
        for vars_ in sorted(groups.values()):
            rels = []
            for r in self.relations:
                if r.variables_used() and r.variables_used() <= set(vars_):
                    rels.append({tuple(e[i] for i in vars_): c for e, c in r.terms.items()})
            comps.append(_Component(vars_, rels))
        return comps

    def _check(self, d: int) -> None:
        if d > self.max_degree:
            raise TruncationExceeded(f"degree {d} exceeds truncation {self.max_degree}")

    # -- normal forms --------------------------------------------------
    def _nf_exp(self, e: Exponent) -> Dict[Exponent, Fraction]:
        hit = self._nf_cache.get(e)
        if hit is not None:
            return hit
        out: Dict[Exponent, Fraction] = {(0,) * self.ring.nvars: Fraction(1)}
        for comp in self.components:
            part = comp.nf_monomial(tuple(e[i] for i in comp.vars))
            new: Dict[Exponent, Fraction] = {}
            for base, c in out.items():
                for pe, pc in part.items():
                    full = list(base)
                    for i, a in zip(comp.vars, pe):
                        full[i] = a
                    key = tuple(full)
                    new[key] = new.get(key, 0) + c * pc
            out = {k: v for k, v in new.items() if v}
        self._nf_cache[e] = out
        return out

    def nf_terms(self, f: Polynomial) -> Dict[Exponent, Fraction]:
        out: Dict[Exponent, Fraction] = {}
        for e, c in f.terms.items():
            self._check(sum(e))
            for q, a in self._nf_exp(e).items():
                v = out.get(q, 0) + c * a
                if v:
                    out[q] = v
                else:
                    out.pop(q, None)
        return out

    def nf(self, f: Polynomial) -> Polynomial:
        """Canonical representative supported on standard monomials."""
        return Polynomial(self.ring, self.nf_terms(f))

    def is_zero(self, f: Polynomial) -> bool:
        return not self.nf_terms(f)

    # -- dimensions ----------------------------------------------------
    def standard_monomials(self, d: int) -> Tuple[Exponent, ...]:
        self._check(d)
        if d in self._std_cache:
            return self._std_cache[d]
        partial = {0: [(0,) * self.ring.nvars]}
        for comp in self.components:
            nxt: Dict[int, List[Exponent]] = {}
            for deg, bases in partial.items():
                for cd in range(d - deg + 1):
                    std = comp.standard(cd)
                    if not std:
                        continue
                    for base in bases:
                        for pe in std:
                            full = list(base)
                            for i, a in zip(comp.vars, pe):
                                full[i] = a
                            nxt.setdefault(deg + cd, []).append(tuple(full))
            partial = nxt
        result = tuple(sorted(partial.get(d, []), reverse=True))
        self._std_cache[d] = result
        return result

    def dim(self, d: int) -> int:
        self._check(d)
        counts = [1] + [0] * d
        for comp in self.components:
            cdims = [len(comp.standard(j)) for j in range(d + 1)]
            new = [0] * (d + 1)
            for i, a in enumerate(counts):
                if a:
                    for j in range(d + 1 - i):
                        new[i + j] += a * cdims[j]
            counts = new
        return counts[d]

    def hilbert(self, D: int) -> List[int]:
        """``[dim(0), ..., dim(D)]`` in monomial degrees."""
        return [self.dim(d) for d in range(D + 1)]

    def total_dimension(self, bound: int) -> int:
        """Sum of dims up to ``bound``; equals the full dimension when finite."""
        return sum(self.hilbert(bound))
