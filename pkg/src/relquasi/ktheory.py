"""Equivariant K-theory analogues: Laurent representation rings and Theta-congruences.

``R(T)`` is a Laurent ring with a signed-permutation Weyl action (a negative
sign inverts the variable).  The level-m module is the set of ``f`` with
``s.f - f`` divisible by ``Theta^m`` for every reflection ``s``; the window
check compares it with ``R(T)^W + Theta^m R(T)`` on Laurent polynomials with
bounded exponents.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Tuple

from .algebra import (LaurentPolynomial, NotDivisible, PolyRing, elementary_symmetric,
                      laurent_divide_exact, render)
from .catalog import KTheorySpec, lookup, spin7_ktheory
from .linalg import Echelon, Lattice, integer_kernel
from .report import Report
from .weyl import SignedPermutation, WeylGroup


class NoKTheory(ValueError):
    pass


class IdentityFailure(AssertionError):
    pass


@dataclass(frozen=True)
class RepRing:
    name: str
    ring: PolyRing
    group: WeylGroup
    theta: LaurentPolynomial
    generators: Tuple[Tuple[str, LaurentPolynomial], ...]

    @classmethod
    def from_spec(cls, name: str, spec: KTheorySpec) -> "RepRing":
        return cls(name, spec.ring, spec.group, spec.theta, tuple(spec.invariant_generators.items()))

    @property
    def n(self) -> int:
        return self.ring.nvars

    def generator(self, label: str) -> LaurentPolynomial:
        return dict(self.generators)[label]

    def parse(self, text: str) -> LaurentPolynomial:
        return self.ring.parse(text)

    def validate(self) -> Report:
        rep = Report(f"representation ring {self.name}")
        w = self.group.invariance_witness(self.theta)
        if w is not None:
            rep.fail(f"Theta not W-invariant, witness {w.name}")
        for label, f in self.generators:
            w = self.group.invariance_witness(f)
            if w is not None:
                rep.fail(f"{label} not W-invariant, witness {w.name}")
        return rep


def rep_ring(name: str) -> RepRing:
    pair = lookup(name)
    if pair.ktheory is None:
        raise NoKTheory(f"no K-theory data for {pair.name}")
    return RepRing.from_spec(pair.name, pair.ktheory)


def spin7_ring() -> RepRing:
    """Spin(7) characters in the doubled variables; the defining identities are asserted."""
    r = RepRing.from_spec("spin7-g2", spin7_ktheory())
    lam1, lam2, lam3 = (r.generator(f"lambda{i}") for i in (1, 2, 3))
    delta = r.generator("Delta")
    if delta * delta != 1 + lam1 + lam2 + lam3:
        raise IdentityFailure("Delta^2 != 1 + lambda1 + lambda2 + lambda3")
    if r.theta != 1 + lam1 - delta:
        raise IdentityFailure("Theta != 1 + lambda1 - Delta")
    check = r.validate()
    if not check:
        raise IdentityFailure("; ".join(check.failures))
    return r


def unitary_theta_identity(n: int) -> bool:
    """``Theta = sum_i (-1)^i c_i`` for U(n)."""
    r = rep_ring(f"u:{n}")
    zs = r.ring.gens()
    alt = r.ring.one()
    for i in range(1, n + 1):
        alt = alt + elementary_symmetric(i, zs) * (-1) ** i
    return alt == r.theta


@dataclass(frozen=True)
class KMembership:
    member: bool
    witness: Optional[SignedPermutation] = None

    def __bool__(self):
        return self.member


def k_is_member(f: LaurentPolynomial, ring: RepRing, m: int) -> KMembership:
    if m < 0:
        raise ValueError("m must be non-negative")
    if f.ring != ring.ring:
        raise ValueError("element lives in another ring")
    if m == 0:
        return KMembership(True)
    mod = ring.theta ** m
    for s in ring.group.reflections:
        diff = s.act(f) - f
        if not diff:
            continue
        try:
            laurent_divide_exact(diff, mod)
        except NotDivisible:
            return KMembership(False, s)
    return KMembership(True)


# -- window computations ------------------------------------------------------

def window(n: int, bound: int) -> List[Tuple[int, ...]]:
    return list(itertools.product(range(-bound, bound + 1), repeat=n))


def _reach(p: LaurentPolynomial) -> int:
    return max((abs(a) for e in p.terms for a in e), default=0)


def window_members(ring: RepRing, m: int, bound: int) -> List[LaurentPolynomial]:
    """Z-basis of the level-m members supported on exponents in ``[-bound, bound]``.

    Quotients by ``Theta^m`` of window-supported differences stay inside the
    window because ``Theta`` has a nonzero constant term, so eliminating the
    span of ``Theta^m * window`` decides divisibility.  ``Theta`` has unit
    extreme coefficients, so rational and integral divisibility agree and the
    member lattice is the saturation computed by ``integer_kernel``.
    """
    R = ring.ring
    monos = window(ring.n, bound)
    if m == 0:
        return [R.monomial(e) for e in monos]
    mod = ring.theta ** m
    span = Echelon((mod * R.monomial(e)).terms for e in monos)
    rows = []
    for e in monos:
        mu = R.monomial(e)
        row: Dict = {}
        for si, s in enumerate(ring.group.reflections):
            for key, c in span.reduce((s.act(mu) - mu).terms).items():
                row[(si, key)] = c
        rows.append(row)
    scale = lcm(*(Fraction(c).denominator for r in rows for c in r.values())) if any(rows) else 1
    rows = [{k: c * scale for k, c in r.items()} for r in rows]
    cols = sorted({k for r in rows for k in r})
    kernel = integer_kernel(rows, cols)
    return [LaurentPolynomial(R, {monos[i]: c for i, c in vec.items()}) for vec in kernel]


def _presentation_lattice(ring: RepRing, m: int, bound: int) -> Lattice:
    R = ring.ring
    mod = ring.theta ** m
    lat = Lattice()
    monos = [R.monomial(e) for e in window(ring.n, bound)]
    # the Theta^m multiples have unit pivots, so adding them first keeps the reduction gcd-free
    for mu in monos:
        lat.add((mod * mu).terms)
    seen = set()
    for mu in monos:
        orb = ring.group.orbit_sum(mu)
        key = min(orb.terms)
        if key not in seen:
            seen.add(key)
            lat.add(orb.terms)
    return lat


def k_presentation_check(ring: RepRing, m: int, bound: int) -> Report:
    """Window comparison of the level-m module with ``R(T)^W + Theta^m R(T)``."""
    rep = Report(f"K-theory presentation {ring.name} m={m} B={bound}")
    R = ring.ring
    monos = window(ring.n, bound)
    mod = ring.theta ** m
    # (i) the presentation lands in the module
    for e in monos:
        mu = R.monomial(e)
        g = ring.group.orbit_sum(mu)
        for label, f in (("orbit sum", g), ("Theta^m multiple", mod * mu), ("sum", g + mod * mu)):
            hit = k_is_member(f, ring, m)
            if not hit:
                rep.fail(f"{label} of {render(mu)} not a member, witness {hit.witness.name}")
    # (ii) every window member is expressible
    members = window_members(ring, m, bound)
    for f in members:
        if not k_is_member(f, ring, m):
            rep.fail(f"window kernel element {render(f)} fails membership")
    # g and h may need support beyond the window: try it enlarged by the reach of Theta^m, then twice that
    pending = list(members)
    used = bound
    for k in (1, 2):
        if not pending:
            break
        used = bound + k * _reach(mod)
        lat = _presentation_lattice(ring, m, used)
        pending = [f for f in pending if not lat.contains(f.terms)]
    too_small = [render(f) for f in pending]
    for f in too_small:
        rep.note(f"window too small to express {f}")
    rep.data.update({
        "ring": ring.name,
        "m": m,
        "window": bound,
        "enlarged_window": used,
        "monomials_checked": len(monos),
        "members_in_window": len(members),
        "window_too_small": too_small,
    })
    return rep


def k_filtration_check(ring: RepRing, m_max: int, bound: int) -> Report:
    """Window members at level m+1 are members at level m."""
    rep = Report(f"K-theory filtration {ring.name} m<={m_max} B={bound}")
    for m in range(m_max):
        for f in window_members(ring, m + 1, bound):
            if not k_is_member(f, ring, m):
                rep.fail(f"level {m + 1} member {render(f)} fails level {m}")
    rep.data.update({"ring": ring.name, "m_max": m_max, "window": bound})
    return rep
