"""Quasi-invariant modules: membership, free bases, and the linear-algebra oracle.

Every variant is reduced to a ``Setting``: an ambient graded ring (possibly a
quotient handled by ``GradedComponentEngine``), a list of congruence
conditions ``s.f = f mod (modulus)`` over sets of reflections, and optionally
an invariance requirement under a group acting on some variable blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import (NotDivisible, PolyRing, Polynomial, divide_exact, monomials_of_degree, product)
from .catalog import FilteredSpec, PairSpec
from .descent import bcom_rank_zero_basis
from .engine import GradedComponentEngine
from .linalg import Echelon
from .report import Report
from .weyl import SignedPermutation, WeylGroup

VARIANTS = ("flag", "t-equiv", "bcom", "filtered")
DEFAULT_TRUNCATION = 24  # cohomological


class UnsupportedVariant(ValueError):
    pass


@dataclass(frozen=True)
class QuasiInvariantSpec:
    pair: Optional[PairSpec]
    m: Union[int, Tuple[int, ...]]
    variant: str = "flag"
    filtered: Optional[FilteredSpec] = None
    flat: bool = False

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise UnsupportedVariant(f"unknown variant {self.variant!r}")
        ms = self.m if isinstance(self.m, tuple) else (self.m,)
        if any(not isinstance(x, int) or x < 0 for x in ms):
            raise ValueError("multiplicities must be non-negative integers")
        if self.variant == "filtered":
            if self.filtered is None or not isinstance(self.m, tuple) or len(self.m) != self.filtered.length:
                raise ValueError("filtered variant needs a chain and one multiplicity per level")
        elif self.pair is None or isinstance(self.m, tuple):
            raise ValueError(f"{self.variant} variant needs a pair and a single multiplicity")

    @property
    def name(self) -> str:
        return self.filtered.name if self.variant == "filtered" else self.pair.name

    def with_m(self, m) -> "QuasiInvariantSpec":
        return QuasiInvariantSpec(self.pair, m, self.variant, self.filtered, self.flat)


@dataclass(frozen=True)
class Condition:
    elements: Tuple[SignedPermutation, ...]
    modulus: Polynomial
    blocks: Optional[Tuple[int, ...]] = None


@dataclass
class Setting:
    ring: PolyRing
    engine: GradedComponentEngine
    conditions: Tuple[Condition, ...]
    base_degrees: Tuple[int, ...]
    invariance: Optional[Tuple[WeylGroup, Optional[Tuple[int, ...]]]] = None
    _spans: Dict = field(default_factory=dict)

    @property
    def has_relations(self) -> bool:
        return bool(self.engine.relations)

    def modulus_span(self, ci: int, d: int) -> Echelon:
        """Span of ``modulus * R_{d - deg}`` inside the degree-d quotient component."""
        key = (ci, d)
        if key not in self._spans:
            mod = self.conditions[ci].modulus
            md = mod.homogeneous_degree()
            ech = Echelon()
            if d >= md:
                for e in self.engine.standard_monomials(d - md):
                    ech.add(self.engine.nf_terms(mod * self.ring.monomial(e)))
            self._spans[key] = ech
        return self._spans[key]


@dataclass(frozen=True)
class FreeBasis:
    base_degrees: Tuple[int, ...]
    elements: Tuple[Polynomial, ...]

    @property
    def rank(self) -> int:
        return len(self.elements)

    def coh_degrees(self) -> List[int]:
        return [b.coh_degree() for b in self.elements]

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "base_degrees": [2 * d for d in self.base_degrees],
            "elements": [{"coh_degree": b.coh_degree(), "poly": str(b)} for b in self.elements],
        }


@dataclass(frozen=True)
class Membership:
    member: bool
    witness: Optional[str] = None
    degree: Optional[int] = None

    def __bool__(self):
        return self.member


# ---------------------------------------------------------------------------
# settings

def _embed(f: Polynomial, ring: PolyRing, block: int) -> Polynomial:
    n = f.ring.nvars
    return f.change_ring(ring, [block * n + i for i in range(n)])


def doubled_ring(n: int) -> PolyRing:
    return PolyRing.doubled(n, "x", "y")


def _family(pair: PairSpec) -> str:
    name = pair.name.split(":")[0]
    if name in ("u", "su", "sp") and pair.name.count(":") == 1:
        return name
    raise UnsupportedVariant(f"no B_com description for pair {pair.name}")


@lru_cache(maxsize=None)
def build_setting(spec: QuasiInvariantSpec) -> Setting:
    if spec.variant == "flag":
        p = spec.pair
        ring = p.ring
        engine = GradedComponentEngine(ring, p.relations)
        cond = Condition(p.weyl.reflections, p.euler_theta ** spec.m)
        return Setting(ring, engine, (cond,), p.degrees)
    if spec.variant == "t-equiv":
        p = spec.pair
        ring = doubled_ring(p.n)
        rels = [_embed(f, ring, 0) - _embed(f, ring, 1) for f in p.fundamental_invariants]
        rels += [_embed(r, ring, b) for r in p.relations for b in (0, 1)]
        engine = GradedComponentEngine(ring, rels)
        cond = Condition(p.weyl.reflections, _embed(p.euler_theta, ring, 0) ** spec.m, (0,))
        return Setting(ring, engine, (cond,), (1,) * p.rank)
    if spec.variant == "bcom":
        p = spec.pair
        _family(p)
        ring = doubled_ring(p.n)
        rels = [_embed(f, ring, 0) for f in p.fundamental_invariants]
        rels += [_embed(r, ring, b) for r in p.relations for b in (0, 1)]
        engine = GradedComponentEngine(ring, rels)
        cond = Condition(p.weyl.reflections, _embed(p.euler_theta, ring, 1) ** spec.m, (1,))
        return Setting(ring, engine, (cond,), p.degrees, invariance=(p.weyl, None))
    fs = spec.filtered
    ring = fs.ring
    engine = GradedComponentEngine(ring)
    conds = []
    for i, lev in enumerate(fs.levels):
        if spec.flat:
            mod = lev.theta ** spec.m[i]
        else:
            # level i reflections see the product of its own and all later moduli
            mod = product([l.theta ** mj for l, mj in zip(fs.levels[i:], spec.m[i:])], ring)
        conds.append(Condition(lev.group.reflections, mod))
    conds = tuple(conds)
    return Setting(ring, engine, conds, fs.top.degrees)


def with_invariance(setting: Setting, group: WeylGroup, blocks: Optional[Tuple[int, ...]]) -> Setting:
    """Same conditions, additionally requiring invariance under ``group`` on ``blocks``."""
    return Setting(setting.ring, setting.engine, setting.conditions, setting.base_degrees, (group, blocks))


# ---------------------------------------------------------------------------
# membership

def _as_setting(target) -> Setting:
    return target if isinstance(target, Setting) else build_setting(target)


def is_member(f: Polynomial, target) -> Membership:
    """Decide membership degree by degree; on failure name the violated element."""
    setting = _as_setting(target)
    if f.ring != setting.ring:
        raise ValueError("polynomial lives in the wrong ring")
    eng = setting.engine
    for d, part in f.homogeneous_components().items():
        if setting.invariance is not None:
            group, blocks = setting.invariance
            for g in group.generators:
                if eng.nf_terms(g.act(part, blocks) - part):
                    return Membership(False, f"not invariant under {g.name}", d)
        for ci, cond in enumerate(setting.conditions):
            for s in cond.elements:
                diff = s.act(part, cond.blocks) - part
                if not diff:
                    continue
                if setting.has_relations:
                    ok = setting.modulus_span(ci, d).in_span(eng.nf_terms(diff))
                else:
                    try:
                        divide_exact(diff, cond.modulus)
                        ok = True
                    except NotDivisible:
                        ok = False
                if not ok:
                    return Membership(False, s.name or str(s.signed_list()), d)
    return Membership(True)


# ---------------------------------------------------------------------------
# invariant subspaces and bases

def invariant_basis(group: Optional[WeylGroup], engine: GradedComponentEngine, d: int,
                    blocks: Optional[Tuple[int, ...]] = None) -> List[Polynomial]:
    """Basis of the degree-d invariants of the quotient (all of it when ``group`` is None)."""
    ring = engine.ring
    out = []
    ech = Echelon()
    for e in engine.standard_monomials(d):
        mono = ring.monomial(e)
        v = mono if group is None else engine.nf(group.reynolds(mono, blocks))
        if ech.add(v.terms):
            out.append(v)
    return out


def invariant_dimension(group: WeylGroup, engine: GradedComponentEngine, d: int, blocks=None) -> int:
    return len(invariant_basis(group, engine, d, blocks))


def coinvariant_basis(W: WeylGroup, invariants: Sequence[Polynomial],
                      relations: Sequence[Polynomial] = ()) -> FreeBasis:
    """Greedy monomial basis of ``Q[V]/(invariants, relations)``.

    Degree by degree, monomials are scanned in ascending graded-lex order and
    kept when independent of the ideal component and the monomials already
    kept.  The scan stops once ``|W|`` monomials are collected.
    """
    gens = [f for f in list(invariants) + list(relations) if f]
    ring = gens[0].ring
    target = W.order
    bound = sum(f.homogeneous_degree() - 1 for f in invariants) + 1
    chosen: List[Polynomial] = []
    d = 0
    while len(chosen) < target:
        if d > bound:
            raise ValueError(f"coinvariant scan exceeded degree {bound} with {len(chosen)} of {target}")
        ech = Echelon()
        for g in gens:
            gd = g.homogeneous_degree()
            if gd <= d:
                for e in monomials_of_degree(ring.nvars, d - gd):
                    ech.add((g * ring.monomial(e)).terms)
        for e in reversed(monomials_of_degree(ring.nvars, d)):
            mono = ring.monomial(e)
            if ech.add(mono.terms):
                chosen.append(mono)
        d += 1
    if len(chosen) != target:
        raise ValueError(f"coinvariant dimension {len(chosen)} differs from |W| = {target}")
    # a system of parameters kills every monomial above the socle degree
    top = Echelon()
    for g in gens:
        if g.homogeneous_degree() <= bound:
            for e in monomials_of_degree(ring.nvars, bound - g.homogeneous_degree()):
                top.add((g * ring.monomial(e)).terms)
    if top.rank != len(monomials_of_degree(ring.nvars, bound)):
        raise ValueError(f"quotient does not vanish in degree {bound}; invariants are not a system of parameters")
    return FreeBasis(tuple(f.homogeneous_degree() for f in invariants), tuple(chosen))


def relative_basis(small: Optional[WeylGroup], large: WeylGroup, ring: PolyRing) -> List[Polynomial]:
    """Basis of ``Q[V]^small`` as a free module over ``Q[V]^large``.

    Candidates are Reynolds images of monomials (ascending graded-lex within
    each degree); a candidate is kept when independent modulo the ideal
    generated by positive-degree ``large``-invariants.
    """
    engine = GradedComponentEngine(ring)
    target = large.order // (small.order if small is not None else 1)
    chosen: List[Polynomial] = []
    small_inv: Dict[int, List[Polynomial]] = {}
    large_inv: Dict[int, List[Polynomial]] = {}

    def inv(cache, group, d):
        if d not in cache:
            cache[d] = invariant_basis(group, engine, d)
        return cache[d]

    d = 0
    bound = sum(x - 1 for x in large.degrees) + 1
    while len(chosen) < target:
        if d > bound:
            raise ValueError("relative basis scan did not terminate")
        ech = Echelon()
        for j in range(1, d + 1):
            for a in inv(large_inv, large, j):
                for b in inv(small_inv, small, d - j):
                    ech.add((a * b).terms)
        for e in reversed(monomials_of_degree(ring.nvars, d)):
            mono = ring.monomial(e)
            cand = mono if small is None else small.reynolds(mono)
            if ech.add(cand.terms):
                chosen.append(_primitive(cand, mono))
        d += 1
    return chosen


def _primitive(cand: Polynomial, mono: Polynomial) -> Polynomial:
    """Prefer the monomial itself when it is already invariant; else clear the scale."""
    if cand == mono:
        return mono
    c = cand.terms.get(next(iter(mono.terms)))
    return cand * (1 / c) if c else cand


def qm_basis(spec: QuasiInvariantSpec) -> FreeBasis:
    if spec.variant == "flag":
        p = spec.pair
        b = coinvariant_basis(p.weyl, p.fundamental_invariants, p.relations).elements
        th = p.euler_theta ** spec.m
        return FreeBasis(p.degrees, (b[0],) + tuple(th * x for x in b[1:]))
    if spec.variant == "t-equiv":
        p = spec.pair
        ring = doubled_ring(p.n)
        b = coinvariant_basis(p.weyl, p.fundamental_invariants, p.relations).elements
        th = _embed(p.euler_theta, ring, 0) ** spec.m
        elems = (ring.one(),) + tuple(th * _embed(x, ring, 0) for x in b[1:])
        return FreeBasis((1,) * p.rank, elems)
    if spec.variant == "bcom":
        p = spec.pair
        signed = _family(p) == "sp"
        ring = doubled_ring(p.n)
        gs = bcom_rank_zero_basis(p.weyl, signed)
        th = _embed(p.euler_theta, ring, 1) ** spec.m
        return FreeBasis(p.degrees, (gs[0],) + tuple(th * g for g in gs[1:]))
    return _filtered_basis(spec.filtered, spec.m)


def _filtered_basis(fs: FilteredSpec, ms: Tuple[int, ...]) -> FreeBasis:
    ring = fs.ring
    basis = [ring.one()]
    prev: Optional[WeylGroup] = None
    for lev, mi in zip(fs.levels, ms):
        rel = relative_basis(prev, lev.group, ring)
        th = lev.theta ** mi
        new = [ring.one()]
        for a in rel:
            for b in basis:
                if a == ring.one() and b == ring.one():
                    continue
                new.append(th * b * a)
        basis = new
        prev = lev.group
    basis.sort(key=lambda f: (f.homogeneous_degree(), [-x for x in f.leading()[0]]))
    return FreeBasis(fs.top.degrees, tuple(basis))


# ---------------------------------------------------------------------------
# oracle

def _constraint_images(setting: Setting, d: int):
    """Basis of the candidate space and the image of each vector under all constraints."""
    eng = setting.engine
    if setting.invariance is not None:
        group, blocks = setting.invariance
        space = invariant_basis(group, eng, d, blocks)
    else:
        space = [setting.ring.monomial(e) for e in eng.standard_monomials(d)]
    rows = []
    for v in space:
        row = {}
        for ci, cond in enumerate(setting.conditions):
            span = setting.modulus_span(ci, d)
            for si, s in enumerate(cond.elements):
                r = span.reduce(eng.nf_terms(s.act(v, cond.blocks) - v))
                for e, c in r.items():
                    row[(0, ci, si, e)] = c
        rows.append(row)
    return space, rows


def oracle_dimension(target, coh_degree: int, truncation: int = 64) -> int:
    """Dimension of the degree component by exact linear algebra.

    For each condition the witness unknowns are eliminated first: ``s.f - f``
    must vanish modulo the span of ``modulus * R``.  The answer is the
    dimension of the kernel of the resulting linear map on the (invariant
    part of the) degree component.
    """
    if coh_degree > truncation:
        raise ValueError(f"degree {coh_degree} exceeds truncation {truncation}")
    if coh_degree % 2:
        return 0
    setting = _as_setting(target)
    space, rows = _constraint_images(setting, coh_degree // 2)
    ech = Echelon()
    for row in rows:
        ech.add(row)
    return len(space) - ech.rank


def oracle_series(target, D: int = DEFAULT_TRUNCATION) -> List[int]:
    """Oracle dimensions at cohomological degrees 0, 2, ..., D."""
    return [oracle_dimension(target, c) for c in range(0, D + 1, 2)]


def quotient_hilbert(engine: GradedComponentEngine, D: int) -> List[Tuple[int, int]]:
    """``(coh_degree, dim)`` pairs of the quotient up to cohomological degree ``D``."""
    return [(2 * d, engine.dim(d)) for d in range(D // 2 + 1)]


def filtered_presentation_dimension(fs: FilteredSpec, ms: Tuple[int, ...], coh_degree: int) -> int:
    """Dimension of ``Q[V]^{W_l} + theta_l^{m_l} (... (Q[V]^{W_1} + theta_1^{m_1} Q[V]))``."""
    if coh_degree % 2:
        return 0
    d = coh_degree // 2
    engine = GradedComponentEngine(fs.ring)

    def span(level: int, deg: int) -> List[Polynomial]:
        if deg < 0:
            return []
        if level < 0:
            return [fs.ring.monomial(e) for e in monomials_of_degree(fs.ring.nvars, deg)]
        lev = fs.levels[level]
        th = lev.theta ** ms[level]
        out = list(invariant_basis(lev.group, engine, deg))
        out += [th * g for g in span(level - 1, deg - th.homogeneous_degree())]
        ech = Echelon()
        return [v for v in out if ech.add(v.terms)]

    return len(span(fs.length - 1, d))


# ---------------------------------------------------------------------------
# filtration

def filtration_check(pair: PairSpec, m_max: int, D: int = DEFAULT_TRUNCATION) -> Report:
    """Containment ``Q_{m+1} ⊆ Q_m`` and stabilization to the invariants."""
    rep = Report(f"filtration {pair.name} m<={m_max} D={D}")
    specs = [QuasiInvariantSpec(pair, m) for m in range(m_max + 1)]
    for m in range(m_max + 1):
        for b in qm_basis(specs[m]).elements:
            for lower in range(m + 1):
                res = is_member(b, specs[lower])
                if not res:
                    rep.fail(f"basis element {b} of level {m} fails at level {lower} (witness {res.witness})")
    engine = GradedComponentEngine(pair.ring, pair.relations)
    theta_deg = pair.euler_theta.homogeneous_degree() if pair.euler_theta else 0
    for c in range(0, D + 1, 2):
        d = c // 2
        inv = invariant_dimension(pair.weyl, engine, d)
        dims = [oracle_dimension(s, c) for s in specs]
        for m in range(m_max):
            if dims[m + 1] > dims[m]:
                rep.fail(f"degree {c}: dim Q_{m + 1} = {dims[m + 1]} exceeds dim Q_{m} = {dims[m]}")
        for m in range(m_max + 1):
            if m * theta_deg > d and dims[m] != inv:
                rep.fail(f"degree {c}: dim Q_{m} = {dims[m]} but invariants have dim {inv}")
    rep.data["truncation"] = D
    return rep
