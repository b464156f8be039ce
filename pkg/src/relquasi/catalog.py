"""Catalog of pairs (G, H) with G/H an odd sphere, and subgroup chains."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import prod
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import LaurentPolynomial, PolyRing, Polynomial, elementary_symmetric, product
from .report import Report
from .weyl import (WeylGroup, hyperoctahedral_group, product_group,
                   symmetric_group)


class UnknownPair(KeyError):
    pass


@dataclass(frozen=True)
class KTheorySpec:
    """Representation-ring data: ``R(T)`` as a Laurent ring with a W-action."""

    ring: PolyRing
    group: WeylGroup
    theta: LaurentPolynomial
    invariant_generators: Dict[str, LaurentPolynomial] = field(hash=False, compare=False)
    label: str = ""


@dataclass(frozen=True)
class PairSpec:
    name: str
    n: int
    weyl: WeylGroup
    degrees: Tuple[int, ...]
    k: int
    euler_theta: Polynomial
    fundamental_invariants: Tuple[Polynomial, ...]
    relations: Tuple[Polynomial, ...] = ()
    ktheory: Optional[KTheorySpec] = None
    alias_of: Optional[str] = None
    description: str = ""

    @property
    def ring(self) -> PolyRing:
        return self.euler_theta.ring

    @property
    def rank(self) -> int:
        """Krull dimension of the (possibly reduced) polynomial ring."""
        return self.n - len(self.relations)

    @property
    def order(self) -> int:
        return self.weyl.order

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "degrees": list(self.degrees),
            "order": self.order,
            "theta": str(self.euler_theta),
        }
        if self.relations:
            out["relations"] = [str(r) for r in self.relations]
        if self.ktheory is not None:
            out["Theta"] = str(self.ktheory.theta)
        if self.alias_of:
            out["alias_of"] = self.alias_of
        return out


def t_ring(n: int) -> PolyRing:
    return PolyRing.standard(n, "t")


def z_ring(n: int, prefix: str = "z") -> PolyRing:
    return PolyRing.standard(n, prefix, laurent=True)


def elementary(ring: PolyRing, k: int, indices: Optional[Sequence[int]] = None) -> Polynomial:
    xs = [ring.gen(i) for i in (indices if indices is not None else range(ring.nvars))]
    return elementary_symmetric(k, xs)


def squares_elementary(ring: PolyRing, k: int, indices: Optional[Sequence[int]] = None) -> Polynomial:
    xs = [ring.gen(i) ** 2 for i in (indices if indices is not None else range(ring.nvars))]
    return elementary_symmetric(k, xs)


# ---------------------------------------------------------------------------
# K-theory data

def unitary_ktheory(n: int) -> KTheorySpec:
    ring = z_ring(n)
    zs = ring.gens()
    gens = {f"c{i}": elementary_symmetric(i, zs) for i in range(1, n + 1)}
    gens[f"c{n}^-1"] = gens[f"c{n}"] ** -1
    theta = product((1 - z for z in zs), ring)
    return KTheorySpec(ring, symmetric_group(n), theta, gens, f"R(T) of U({n})")


def symplectic_ktheory(n: int) -> KTheorySpec:
    ring = z_ring(n)
    zs = ring.gens()
    ws = [z + z ** -1 for z in zs]
    gens = {f"q{i}": elementary_symmetric(i, ws) for i in range(1, n + 1)}
    theta = product(((1 - z) * (1 - z ** -1) for z in zs), ring)
    return KTheorySpec(ring, hyperoctahedral_group(n), theta, gens, f"R(T) of Sp({n})")


def spin7_ktheory() -> KTheorySpec:
    """Spin(7) torus characters in doubled variables ``u_i`` with ``z_i = u_i^2``."""
    ring = z_ring(3, "u")
    us = ring.gens()
    delta = product((u + u ** -1 for u in us), ring)
    weights = [u ** 2 for u in us] + [u ** -2 for u in us] + [ring.one()]
    lam = {i: elementary_symmetric(i, weights) for i in (1, 2, 3)}
    theta = 1 + lam[1] - delta
    gens = {"lambda1": lam[1], "lambda2": lam[2], "lambda3": lam[3], "Delta": delta}
    return KTheorySpec(ring, hyperoctahedral_group(3), theta, gens, "R(T) of Spin(7)")


# ---------------------------------------------------------------------------
# pair constructors

def unitary_pair(n: int) -> PairSpec:
    ring = t_ring(n)
    invs = tuple(elementary(ring, i) for i in range(1, n + 1))
    return PairSpec(f"u:{n}", n, symmetric_group(n), tuple(range(1, n + 1)), n, invs[-1], invs,
                    ktheory=unitary_ktheory(n), description=f"U({n})/U({n - 1})")


def special_unitary_pair(n: int) -> PairSpec:
    if n < 2:
        raise UnknownPair("su:n needs n >= 2")
    ring = t_ring(n)
    invs = tuple(elementary(ring, i) for i in range(1, n + 1))
    return PairSpec(f"su:{n}", n, symmetric_group(n), tuple(range(2, n + 1)), n, invs[-1], invs[1:],
                    relations=(invs[0],), description=f"SU({n})/SU({n - 1})")


def symplectic_pair(n: int) -> PairSpec:
    ring = t_ring(n)
    invs = tuple(squares_elementary(ring, i) for i in range(1, n + 1))
    return PairSpec(f"sp:{n}", n, hyperoctahedral_group(n), tuple(2 * i for i in range(1, n + 1)), 2 * n,
                    invs[-1], invs, ktheory=symplectic_ktheory(n), description=f"Sp({n})/Sp({n - 1})")


def spin7_g2_pair() -> PairSpec:
    ring = t_ring(3)
    invs = tuple(squares_elementary(ring, i) for i in (1, 2, 3))
    # Spin(7)/G_2 is the 7-sphere, so the sphere parameter is 4
    return PairSpec("spin7-g2", 3, hyperoctahedral_group(3), (2, 4, 6), 4, invs[1], invs,
                    ktheory=spin7_ktheory(), description="Spin(7)/G_2")


def spin9_spin7_pair() -> PairSpec:
    base = symplectic_pair(4)
    return replace(base, name="spin9-spin7", ktheory=None, alias_of="sp:4",
                   description="Spin(9)/Spin(7), cohomology aliased to Sp(4)/Sp(3)")


def unitary_partial_pair(n: int, k: int) -> PairSpec:
    """``U(n-k) x U(k) / U(n-k) x U(k-1)`` with Euler class ``c_k`` of the last block."""
    if not 1 <= k <= n:
        raise UnknownPair(f"u:{n}:{k} needs 1 <= k <= n")
    if k == n:
        return replace(unitary_pair(n), name=f"u:{n}:{k}")
    ring = t_ring(n)
    first, last = list(range(n - k)), list(range(n - k, n))
    invs = tuple(elementary(ring, i, first) for i in range(1, n - k + 1))
    invs += tuple(elementary(ring, i, last) for i in range(1, k + 1))
    group = product_group(symmetric_group(n - k), symmetric_group(k))
    degrees = tuple(range(1, n - k + 1)) + tuple(range(1, k + 1))
    return PairSpec(f"u:{n}:{k}", n, group, degrees, k, invs[-1], invs,
                    description=f"U({n - k})xU({k})/U({n - k})xU({k - 1})")


def symplectic_partial_pair(n: int, k: int) -> PairSpec:
    if not 1 <= k <= n:
        raise UnknownPair(f"sp:{n}:{k} needs 1 <= k <= n")
    if k == n:
        return replace(symplectic_pair(n), name=f"sp:{n}:{k}")
    ring = t_ring(n)
    first, last = list(range(n - k)), list(range(n - k, n))
    invs = tuple(squares_elementary(ring, i, first) for i in range(1, n - k + 1))
    invs += tuple(squares_elementary(ring, i, last) for i in range(1, k + 1))
    group = product_group(hyperoctahedral_group(n - k), hyperoctahedral_group(k))
    degrees = tuple(2 * i for i in range(1, n - k + 1)) + tuple(2 * i for i in range(1, k + 1))
    return PairSpec(f"sp:{n}:{k}", n, group, degrees, 2 * k, invs[-1], invs,
                    description=f"Sp({n - k})xSp({k})/Sp({n - k})xSp({k - 1})")


_NAME = re.compile(r"^(u|su|sp):(\d+)(?::(\d+))?$")


@lru_cache(maxsize=None)
def lookup(name: str) -> PairSpec:
    """Resolve a pair name such as ``u:3``, ``sp:2``, ``u:3:1`` or ``spin7-g2``."""
    if name == "spin7-g2":
        return spin7_g2_pair()
    if name == "spin9-spin7":
        return spin9_spin7_pair()
    m = _NAME.match(name)
    if not m:
        raise UnknownPair(f"unknown pair {name!r}")
    family, n, k = m.group(1), int(m.group(2)), m.group(3)
    if not 1 <= n <= 8:
        raise UnknownPair(f"rank {n} outside the supported range 1..8")
    if k is None:
        return {"u": unitary_pair, "su": special_unitary_pair, "sp": symplectic_pair}[family](n)
    if family == "su":
        raise UnknownPair("partial flags are defined for u and sp only")
    return (unitary_partial_pair if family == "u" else symplectic_partial_pair)(n, int(k))


DEFAULT_NAMES = ("u:1", "u:2", "u:3", "u:4", "su:2", "su:3", "sp:1", "sp:2", "sp:3",
                 "spin7-g2", "spin9-spin7", "u:2:1", "u:3:1", "u:3:2", "sp:2:1", "sp:3:1", "sp:3:2")


def catalog_list() -> List[PairSpec]:
    return [lookup(n) for n in DEFAULT_NAMES]


def catalog_json() -> str:
    return json.dumps({"schema": 1, "pairs": [p.to_dict() for p in catalog_list()]}, indent=2)


def validate_pair(p: PairSpec) -> Report:
    """Check the structural invariants of a catalog entry; failures carry witnesses."""
    rep = Report(f"validate {p.name}")
    W = p.weyl
    g = W.invariance_witness(p.euler_theta)
    if g is not None:
        rep.fail(f"euler_theta not W-invariant, witness {g.name or g.signed_list()}")
    if not p.euler_theta or not p.euler_theta.is_homogeneous():
        rep.fail("euler_theta not homogeneous")
    elif p.euler_theta.homogeneous_degree() != p.k:
        rep.fail(f"euler_theta has cohomological degree {p.euler_theta.coh_degree()}, expected {2 * p.k}")
    if prod(p.degrees) != W.order:
        rep.fail(f"∏d_i ≠ |W| ({prod(p.degrees)} vs {W.order})")
    if sum(d - 1 for d in p.degrees) != len(W.reflections):
        rep.fail(f"Σ(d_i−1) ≠ #reflections ({sum(d - 1 for d in p.degrees)} vs {len(W.reflections)})")
    if len(p.fundamental_invariants) != len(p.degrees):
        rep.fail("one fundamental invariant per degree expected")
    for i, f in enumerate(p.fundamental_invariants):
        w = W.invariance_witness(f)
        if w is not None:
            rep.fail(f"fundamental invariant {i + 1} not W-invariant, witness {w.name}")
        elif i < len(p.degrees) and (not f.is_homogeneous() or f.homogeneous_degree() != p.degrees[i]):
            rep.fail(f"fundamental invariant {i + 1} does not have degree {p.degrees[i]}")
    for r in p.relations:
        if W.invariance_witness(r) is not None:
            rep.fail(f"relation {r} not W-invariant")
    if p.ktheory is not None:
        kt = p.ktheory
        w = kt.group.invariance_witness(kt.theta)
        if w is not None:
            rep.fail(f"Theta not W-invariant, witness {w.name}")
        for label, f in kt.invariant_generators.items():
            if kt.group.invariance_witness(f) is not None:
                rep.fail(f"K-theory generator {label} not W-invariant")
    if p.alias_of:
        rep.note(f"Euler class inherited from alias {p.alias_of}")
    return rep


# ---------------------------------------------------------------------------
# filtered chains

@dataclass(frozen=True)
class ChainLevel:
    group: WeylGroup
    theta: Polynomial
    label: str = ""


@dataclass(frozen=True)
class FilteredSpec:
    """Chain ``W_1 ⊆ ... ⊆ W_l`` of reflection subgroups with Euler classes."""

    name: str
    n: int
    levels: Tuple[ChainLevel, ...]

    @property
    def length(self) -> int:
        return len(self.levels)

    @property
    def ring(self) -> PolyRing:
        return self.levels[0].theta.ring

    @property
    def top(self) -> WeylGroup:
        return self.levels[-1].group

    def validate(self) -> Report:
        rep = Report(f"validate chain {self.name}")
        prev = None
        for i, lev in enumerate(self.levels, 1):
            if lev.group.n != self.n or lev.theta.ring.nvars != self.n:
                rep.fail(f"level {i} has the wrong variable count")
            w = lev.group.invariance_witness(lev.theta)
            if w is not None:
                rep.fail(f"theta_{i} not W_{i}-invariant, witness {w.name}")
            if not lev.theta.is_homogeneous() or not lev.theta:
                rep.fail(f"theta_{i} not homogeneous")
            if prev is not None:
                if not lev.group.contains_group(prev):
                    rep.fail(f"W_{i - 1} is not contained in W_{i}")
                elif lev.group.order == prev.order:
                    rep.fail(f"W_{i - 1} = W_{i}: chain not strictly increasing")
            prev = lev.group
        return rep


def _parse_group(desc, n: int) -> WeylGroup:
    """Group descriptions: ``"S3"``, ``"B2"``, or a list of blocks ``["S2", "S1"]``."""
    if isinstance(desc, str):
        desc = [desc]
    groups = []
    for block in desc:
        m = re.fullmatch(r"([SB])(\d+)", block)
        if not m:
            raise ValueError(f"bad group block {block!r}")
        size = int(m.group(2))
        g = symmetric_group(size) if m.group(1) == "S" else hyperoctahedral_group(size)
        groups.append(g)
    total = groups[0]
    for g in groups[1:]:
        total = product_group(total, g)
    if total.n != n:
        raise ValueError(f"group blocks cover {total.n} coordinates, expected {n}")
    return total


def filtered_from_dict(data: dict) -> FilteredSpec:
    n = int(data["n"])
    ring = t_ring(n)
    levels = []
    for lev in data["chain"]:
        group = _parse_group(lev["group"], n)
        theta = ring.parse(lev["theta"])
        levels.append(ChainLevel(group, theta, lev.get("label", "")))
    return FilteredSpec(data.get("name", "chain"), n, tuple(levels))


def load_filtered(path) -> FilteredSpec:
    return filtered_from_dict(json.loads(Path(path).read_text()))


U3_CHAIN = {
    "name": "u3-chain",
    "n": 3,
    "chain": [
        {"group": ["S2", "S1"], "theta": "t1*t2", "label": "U(2)xU(1) / U(1)xU(1)"},
        {"group": "S3", "theta": "t1*t2*t3", "label": "U(3) / U(2)"},
    ],
}


def u3_chain() -> FilteredSpec:
    return filtered_from_dict(U3_CHAIN)
