"""Signed-permutation Weyl groups and their actions on polynomial rings."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .algebra import Polynomial, _Sparse
from .linalg import rank

MAX_ORDER = 10 ** 6


class GroupTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class SignedPermutation:
    """Linear map sending basis vector i to ``signs[i] * e_{perm[i]}`` (0-based)."""

    perm: Tuple[int, ...]
    signs: Tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"{self.perm} is not a permutation")
        if len(self.signs) != len(self.perm) or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be a +-1 vector matching perm")

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n, "e")

    @classmethod
    def transposition(cls, n: int, i: int, j: int, sign: int = 1, name: str = "") -> "SignedPermutation":
        perm = list(range(n))
        perm[i], perm[j] = j, i
        signs = [1] * n
        signs[i] = signs[j] = sign
        return cls(tuple(perm), tuple(signs), name)

    @classmethod
    def sign_change(cls, n: int, i: int, name: str = "") -> "SignedPermutation":
        signs = [1] * n
        signs[i] = -1
        return cls(tuple(range(n)), tuple(signs), name)

    @property
    def n(self) -> int:
        return len(self.perm)

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        """Composition ``self o other``."""
        perm = tuple(self.perm[other.perm[i]] for i in range(self.n))
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(self.n))
        return SignedPermutation(perm, signs)

    def inverse(self) -> "SignedPermutation":
        perm = [0] * self.n
        signs = [1] * self.n
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            perm[p] = i
            signs[p] = s
        return SignedPermutation(tuple(perm), tuple(signs))

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n)) and all(s == 1 for s in self.signs)

    def matrix(self) -> List[List[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            m[p][i] = s
        return m

    def apply_vector(self, v: Sequence) -> List:
        out = [0] * self.n
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            out[p] += s * v[i]
        return out

    def lift(self, offset: int, n_total: int) -> "SignedPermutation":
        """Act on coordinates ``offset .. offset+n-1`` of an ``n_total`` space."""
        perm = list(range(n_total))
        signs = [1] * n_total
        for i in range(self.n):
            perm[offset + i] = offset + self.perm[i]
            signs[offset + i] = self.signs[i]
        return SignedPermutation(tuple(perm), tuple(signs), self.name)

    def signed_list(self) -> List[int]:
        """One-line notation ``[sigma(1), ..., sigma(n)]`` with signed 1-based values."""
        return [s * (p + 1) for p, s in zip(self.perm, self.signs)]

    # -- action --------------------------------------------------------
    def act(self, f: _Sparse, blocks: Optional[Sequence[int]] = None) -> _Sparse:
        """Apply to a polynomial or Laurent polynomial.

        The ring may have ``c * n`` variables; the element then acts
        diagonally on each block of ``n`` unless ``blocks`` restricts it to
        the listed block indices.
        """
        nv = f.ring.nvars
        if nv % self.n:
            raise ValueError(f"cannot act on {nv} variables with a rank-{self.n} element")
        nblocks = nv // self.n
        active = range(nblocks) if blocks is None else blocks
        perm = list(range(nv))
        signs = [1] * nv
        for b in active:
            off = b * self.n
            for i in range(self.n):
                perm[off + i] = off + self.perm[i]
                signs[off + i] = self.signs[i]
        if f.ring.laurent:
            def move(e, c):
                new = [0] * nv
                for i, a in enumerate(e):
                    new[perm[i]] = signs[i] * a
                return tuple(new), c
        else:
            def move(e, c):
                new = [0] * nv
                sign = 1
                for i, a in enumerate(e):
                    new[perm[i]] = a
                    if signs[i] < 0 and a & 1:
                        sign = -sign
                return tuple(new), c * sign
        return f.map_terms(move)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<SignedPermutation{label} {self.signed_list()}>"


def _root_label(g: SignedPermutation, basis: Sequence[Sequence[Fraction]]) -> str:
    for v in basis:
        w = [a - b for a, b in zip(g.apply_vector(v), v)]
        if any(w):
            lead = next(a for a in w if a)
            w = [Fraction(a) / lead for a in w]
            den = 1
            for a in w:
                den = den * a.denominator // _gcd(den, a.denominator)
            ints = [int(a * den) for a in w]
            return "s_{(" + ",".join(map(str, ints)) + ")}"
    return "e"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def reflection_name(g: SignedPermutation) -> str:
    moved = [i for i in range(g.n) if g.perm[i] != i or g.signs[i] != 1]
    if len(moved) == 2 and all(g.signs[i] == 1 for i in moved):
        i, j = moved
        return f"s_{{{i + 1}{j + 1}}}"
    return ""


class WeylGroup:
    """Finite group of signed permutations generated by simple reflections."""

    def __init__(self, generators: Sequence[SignedPermutation], degrees: Sequence[int],
                 name: str = "", subspace: Optional[Sequence[Sequence[int]]] = None,
                 labels: Iterable[SignedPermutation] = ()):
        if not generators:
            raise ValueError("need at least one generator")
        self.n = generators[0].n
        self.generators = tuple(generators)
        self.degrees = tuple(degrees)
        self.name = name
        self.subspace = None if subspace is None else [list(map(Fraction, v)) for v in subspace]
        self._labels = {g: g.name for g in list(labels) + list(generators) if g.name}
        self.elements, self.lengths = self._closure()
        self._index = {g: i for i, g in enumerate(self.elements)}
        self.reflections = tuple(self._find_reflections())

    def _closure(self):
        ident = SignedPermutation.identity(self.n)
        lengths = {ident: 0}
        order = [ident]
        queue = deque([ident])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = s * g
                if h not in lengths:
                    lengths[h] = lengths[g] + 1
                    order.append(h)
                    if len(order) > MAX_ORDER:
                        raise GroupTooLarge(f"closure exceeds {MAX_ORDER} elements")
                    queue.append(h)
        return tuple(order), lengths

    def _basis(self):
        if self.subspace is not None:
            return self.subspace
        return [[Fraction(int(i == j)) for j in range(self.n)] for i in range(self.n)]

    def moved_rank(self, g: SignedPermutation) -> int:
        """Rank of ``g - 1`` on the ambient (or declared invariant) subspace."""
        rows = []
        for v in self._basis():
            w = [a - b for a, b in zip(g.apply_vector(v), v)]
            rows.append({i: a for i, a in enumerate(w) if a})
        return rank(rows)

    def _find_reflections(self):
        out = []
        named = self._labels
        for g in self.elements:
            if g * g == SignedPermutation.identity(self.n) and self.moved_rank(g) == 1:
                label = named.get(g) or reflection_name(g) or _root_label(g, self._basis())
                out.append(SignedPermutation(g.perm, g.signs, label))
        return out

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: SignedPermutation) -> bool:
        return g in self._index

    def contains_group(self, other: "WeylGroup") -> bool:
        return other.n == self.n and all(g in self for g in other.elements)

    def length(self, g: SignedPermutation) -> int:
        return self.lengths[g]

    def poincare_polynomial(self) -> List[int]:
        """Coefficients of ``sum_w t^{l(w)}``."""
        top = max(self.lengths.values())
        coeffs = [0] * (top + 1)
        for l in self.lengths.values():
            coeffs[l] += 1
        return coeffs

    def poincare_product(self) -> List[int]:
        """Coefficients of ``prod_i (1 + t + ... + t^{d_i - 1})``."""
        coeffs = [1]
        for d in self.degrees:
            new = [0] * (len(coeffs) + d - 1)
            for i, c in enumerate(coeffs):
                for j in range(d):
                    new[i + j] += c
            coeffs = new
        return coeffs

    def reynolds(self, f: _Sparse, blocks: Optional[Sequence[int]] = None) -> Polynomial:
        total = f.ring.zero()
        for g in self.elements:
            total = total + g.act(f, blocks)
        return total * Fraction(1, self.order)

    def orbit_sum(self, f: _Sparse) -> _Sparse:
        """Sum of the distinct images of ``f`` (integral, unlike ``reynolds``)."""
        seen = set()
        total = f.ring.zero()
        for g in self.elements:
            h = g.act(f)
            if h not in seen:
                seen.add(h)
                total = total + h
        return total

    def is_invariant(self, f: _Sparse, blocks: Optional[Sequence[int]] = None) -> bool:
        return all(g.act(f, blocks) == f for g in self.generators)

    def invariance_witness(self, f: _Sparse, blocks: Optional[Sequence[int]] = None) -> Optional[SignedPermutation]:
        for g in self.generators:
            if g.act(f, blocks) != f:
                return g
        return None

    def __repr__(self):
        return f"<WeylGroup {self.name or '?'} order={self.order}>"


# ---------------------------------------------------------------------------
# constructors

def symmetric_group(n: int) -> WeylGroup:
    gens = [SignedPermutation.transposition(n, i, i + 1, name=f"s_{{{i + 1}{i + 2}}}")
            for i in range(n - 1)]
    if not gens:
        gens = [SignedPermutation.identity(n)]
    return WeylGroup(gens, range(1, n + 1), f"S_{n}")


def hyperoctahedral_group(n: int) -> WeylGroup:
    gens = [SignedPermutation.sign_change(n, 0, name="s_{1}")]
    gens += [SignedPermutation.transposition(n, i, i + 1, name=f"s_{{{i + 1}{i + 2}}}")
             for i in range(n - 1)]
    return WeylGroup(gens, [2 * i for i in range(1, n + 1)], f"B_{n}")


def product_group(first: WeylGroup, second: WeylGroup) -> WeylGroup:
    """Block product acting on ``first.n + second.n`` coordinates."""
    n = first.n + second.n
    gens = [g.lift(0, n) for g in first.generators if not g.is_identity()]
    for g in second.generators:
        if g.is_identity():
            continue
        h = g.lift(first.n, n)
        name = h.name
        if name.startswith("s_{") and name[3:-1].isdigit():
            name = "s_{" + "".join(str(int(c) + first.n) for c in name[3:-1]) + "}"
        gens.append(SignedPermutation(h.perm, h.signs, name))
    if not gens:
        gens = [SignedPermutation.identity(n)]
    return WeylGroup(gens, tuple(first.degrees) + tuple(second.degrees),
                     f"{first.name}x{second.name}")


def identity_group(n: int) -> WeylGroup:
    return WeylGroup([SignedPermutation.identity(n)], [1] * n, "1")


def _negated_swap(i: int, j: int, name: str) -> SignedPermutation:
    perm = [0, 1, 2]
    perm[i], perm[j] = j, i
    return SignedPermutation(tuple(perm), (-1, -1, -1), name)


# the six reflections of the G_2 Weyl group inside B_3, acting on t1, t2, t3
D6_TABLE = {
    "s_{(1,-1,0)}": _negated_swap(0, 1, "s_{(1,-1,0)}"),
    "s_{(1,0,-1)}": _negated_swap(0, 2, "s_{(1,0,-1)}"),
    "s_{(0,1,-1)}": _negated_swap(1, 2, "s_{(0,1,-1)}"),
    "s_{(-1,2,-1)}": SignedPermutation.transposition(3, 0, 2, name="s_{(-1,2,-1)}"),
    "s_{(-1,-1,2)}": SignedPermutation.transposition(3, 0, 1, name="s_{(-1,-1,2)}"),
    "s_{(2,-1,-1)}": SignedPermutation.transposition(3, 1, 2, name="s_{(2,-1,-1)}"),
}

H_PLANE = [(1, -1, 0), (0, 1, -1)]


def dihedral_d6() -> WeylGroup:
    """Order-12 Weyl group of G_2 on Q^3, preserving the plane t1 + t2 + t3 = 0.

    Reflections are detected on that plane: the negated swaps in the table
    fix a line of Q^3 only, but act as reflections of the plane.
    """
    gens = [D6_TABLE["s_{(2,-1,-1)}"], D6_TABLE["s_{(1,-1,0)}"]]
    return WeylGroup(gens, (2, 6), "D_6", subspace=H_PLANE, labels=D6_TABLE.values())


def group_from_generators(gens: Iterable[SignedPermutation], degrees: Sequence[int], name: str = "",
                          subspace=None) -> WeylGroup:
    return WeylGroup(list(gens), degrees, name, subspace)
