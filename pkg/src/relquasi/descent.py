"""Descent statistics and descent monomials on S_n and B_n.

Permutations are ``SignedPermutation`` objects read in one-line notation
``[sigma(1), ..., sigma(n)]`` with signed 1-based values; descents compare
these values as ordinary integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence

from .algebra import PolyRing, Polynomial
from .weyl import SignedPermutation, WeylGroup

MAX_ENUMERATION = 50_000


class GroupTooLarge(ValueError):
    pass


def descent_set(seq: Sequence[int]) -> List[int]:
    """1-based positions i with ``seq[i] > seq[i+1]``."""
    return [i + 1 for i in range(len(seq) - 1) if seq[i] > seq[i + 1]]


def maj(sigma: SignedPermutation) -> int:
    return sum(descent_set(sigma.signed_list()))


def neg(sigma: SignedPermutation) -> int:
    return sum(1 for s in sigma.signs if s < 0)


def fmaj(sigma: SignedPermutation) -> int:
    """Flag major index ``2 maj + neg``; equals the total exponent of the signed descent data."""
    return 2 * maj(sigma) + neg(sigma)


@dataclass(frozen=True)
class PermStatistic:
    element: SignedPermutation
    maj: int
    fmaj: int
    descent_set: tuple

    @classmethod
    def of(cls, sigma: SignedPermutation) -> "PermStatistic":
        return cls(sigma, maj(sigma), fmaj(sigma), tuple(descent_set(sigma.signed_list())))


def xy_ring(n: int) -> PolyRing:
    return PolyRing.doubled(n, "x", "y")


def descent_monomial(sigma: SignedPermutation, ring: PolyRing = None) -> Polynomial:
    """``h_sigma``: x-factors from descents of the inverse, y-factors from descents of sigma."""
    n = sigma.n
    ring = ring or xy_ring(n)
    exps = [0] * (2 * n)
    for i in descent_set(sigma.inverse().signed_list()):
        for a in range(i):
            exps[a] += 1
    one_line = sigma.signed_list()
    for j in descent_set(one_line):
        for a in range(j):
            exps[n + one_line[a] - 1] += 1
    return ring.monomial(exps)


def descent_invariant(sigma: SignedPermutation, group: WeylGroup, ring: PolyRing = None) -> Polynomial:
    """``g_sigma``: the diagonal Reynolds average of ``h_sigma``."""
    return group.reynolds(descent_monomial(sigma, ring))


def _f_values(sigma: SignedPermutation) -> List[int]:
    """``f_i = 2 d_i + eps_i`` for i = 1..n."""
    seq = sigma.signed_list()
    n = len(seq)
    out = []
    for i in range(n):
        d = sum(1 for j in range(i, n - 1) if seq[j] > seq[j + 1])
        out.append(2 * d + (1 if seq[i] < 0 else 0))
    return out


def signed_descent_monomial(sigma: SignedPermutation, ring: PolyRing = None) -> Polynomial:
    """``b_sigma = prod_i x_i^{f_i(sigma^-1)} y_i^{f_{|sigma^-1(i)|}(sigma)}``."""
    n = sigma.n
    ring = ring or xy_ring(n)
    inv = sigma.inverse()
    f_inv = _f_values(inv)
    f_sig = _f_values(sigma)
    inv_line = inv.signed_list()
    exps = f_inv + [f_sig[abs(inv_line[i]) - 1] for i in range(n)]
    return ring.monomial(exps)


def signed_descent_invariant(sigma: SignedPermutation, group: WeylGroup, ring: PolyRing = None) -> Polynomial:
    return group.reynolds(signed_descent_monomial(sigma, ring))


def _check_size(group: WeylGroup) -> None:
    if group.order > MAX_ENUMERATION:
        raise GroupTooLarge(f"|W| = {group.order} exceeds the enumeration guard")


def maj_generating_function(group: WeylGroup, signed: bool = False) -> Dict[int, int]:
    """``sum_sigma t^{2(stat(sigma) + stat(sigma^-1))}``, keyed by cohomological exponent.

    ``stat`` is maj for S_n and fmaj for B_n (``signed=True``).
    """
    _check_size(group)
    stat = fmaj if signed else maj
    out: Dict[int, int] = {}
    for g in group.elements:
        e = 2 * (stat(g) + stat(g.inverse()))
        out[e] = out.get(e, 0) + 1
    return dict(sorted(out.items()))


def single_statistic_distribution(group: WeylGroup, signed: bool = False) -> List[int]:
    """Coefficients of ``sum_sigma q^{stat(sigma)}`` (used for the classical product identities)."""
    _check_size(group)
    stat = fmaj if signed else maj
    values = [stat(g) for g in group.elements]
    coeffs = [0] * (max(values) + 1)
    for v in values:
        coeffs[v] += 1
    return coeffs


def bcom_rank_zero_basis(group: WeylGroup, signed: bool = False) -> List[Polynomial]:
    """``[g_sigma]`` (or ``[c_sigma]``) with the identity first."""
    ring = xy_ring(group.n)
    make = signed_descent_invariant if signed else descent_invariant
    elems = sorted(group.elements, key=lambda g: (not g.is_identity(), group.length(g)))
    return [make(g, group, ring) for g in elems]
