"""Hilbert series as exact rational functions ``N(t) / prod_j (1 - t^{e_j})``.

Internally everything is in ``u = t^2`` (monomial degree); user-facing
exponents and tables are cohomological.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .catalog import PairSpec
from .descent import maj_generating_function
from .weyl import hyperoctahedral_group, symmetric_group


def _trim(p: List[int]) -> List[int]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [0]


def poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_add(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def one_minus(e: int) -> List[int]:
    p = [0] * (e + 1)
    p[0] = 1
    p[e] -= 1
    return p


def monomial(e: int, c: int = 1) -> List[int]:
    p = [0] * (e + 1)
    p[e] = c
    return p


def product_of(factors: Iterable[Sequence[int]]) -> List[int]:
    out = [1]
    for f in factors:
        out = poly_mul(out, f)
    return out


@dataclass(frozen=True)
class HilbertSeries:
    numerator: Tuple[int, ...]
    denominator: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(_trim(list(self.numerator))))
        object.__setattr__(self, "denominator", tuple(sorted(self.denominator)))
        if any(e <= 0 for e in self.denominator):
            raise ValueError("denominator exponents must be positive")

    @classmethod
    def make(cls, numerator: Sequence[int], denominator: Iterable[int]) -> "HilbertSeries":
        return cls(tuple(numerator), tuple(denominator))

    def _den_poly(self) -> List[int]:
        return product_of(one_minus(e) for e in self.denominator)

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        return poly_mul(self.numerator, other._den_poly()) == poly_mul(other.numerator, self._den_poly())

    def __hash__(self):
        return hash(self.expand_monomial(16))

    def __add__(self, other: "HilbertSeries") -> "HilbertSeries":
        num = poly_add(poly_mul(self.numerator, other._den_poly()), poly_mul(other.numerator, self._den_poly()))
        return HilbertSeries(tuple(num), self.denominator + other.denominator)

    def expand_monomial(self, d: int) -> List[int]:
        """Power-series coefficients in ``u`` up to ``u^d``."""
        coeffs = [0] * (d + 1)
        for i, c in enumerate(self.numerator[: d + 1]):
            coeffs[i] = c
        for e in self.denominator:
            for i in range(e, d + 1):
                coeffs[i] += coeffs[i - e]
        return coeffs

    def expand(self, D: int) -> List[int]:
        """Coefficients at cohomological degrees ``0, 2, ..., D``."""
        return self.expand_monomial(D // 2)

    def coefficient(self, coh_degree: int) -> int:
        if coh_degree % 2:
            return 0
        return self.expand_monomial(coh_degree // 2)[-1]

    def table(self, D: int) -> List[Tuple[int, int]]:
        return [(2 * i, c) for i, c in enumerate(self.expand(D))]

    def __str__(self):
        terms = []
        for i, c in enumerate(self.numerator):
            if not c:
                continue
            mono = "1" if i == 0 else f"t^{2 * i}"
            body = mono if abs(c) == 1 else (f"{abs(c)}" if i == 0 else f"{abs(c)}*{mono}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        num = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        num += "".join(f" {s} {b}" for s, b in terms[1:])
        if not self.denominator:
            return num
        den = "".join(f"(1-t^{2 * e})" for e in self.denominator)
        return f"({num})/({den})"


def series_equal(a: HilbertSeries, b: HilbertSeries, D: int = None) -> bool:
    """Exact rational-function equality, or coefficientwise up to ``D`` when given."""
    if D is None:
        return a == b
    return a.expand(D) == b.expand(D)


def series_expand(a: HilbertSeries, D: int) -> List[int]:
    return a.expand(D)


# ---------------------------------------------------------------------------
# closed forms

def _flag(degrees: Sequence[int], rank: int, theta_degree: int, m: int) -> HilbertSeries:
    mk = m * theta_degree
    first = poly_mul(poly_add([1], monomial(mk, -1)), product_of([one_minus(1)] * rank))
    second = poly_mul(monomial(mk), product_of(one_minus(d) for d in degrees))
    return HilbertSeries.make(poly_add(first, second), list(degrees) + [1] * rank)


def closed_form_flag(pair: PairSpec, m: int) -> HilbertSeries:
    """``(1 - t^{2mk}) / prod (1 - t^{2 d_i}) + t^{2mk} / (1 - t^2)^r``."""
    return _flag(pair.degrees, pair.rank, pair.k, m)


def closed_form_partial(n: int, k: int, m: int, family: str = "U") -> HilbertSeries:
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if family.upper() == "U":
        degrees = list(range(1, k + 1)) + list(range(1, n - k + 1))
        return _flag(degrees, n, k, m)
    if family.upper() == "SP":
        degrees = [2 * i for i in range(1, k + 1)] + [2 * i for i in range(1, n - k + 1)]
        return _flag(degrees, n, 2 * k, m)
    raise ValueError(f"unknown family {family!r}")


def bcom_numerator_sum(n: int, family: str) -> List[int]:
    """``sum_sigma u^{stat(sigma) + stat(sigma^-1)}`` as a u-polynomial."""
    fam = family.upper()
    group = hyperoctahedral_group(n) if fam == "SP" else symmetric_group(n)
    gf = maj_generating_function(group, signed=(fam == "SP"))
    out = [0] * (max(gf) // 2 + 1)
    for e, c in gf.items():
        out[e // 2] += c
    return out


def closed_form_bcom(n: int, m: int, family: str = "U") -> HilbertSeries:
    fam = family.upper()
    if fam == "U":
        degrees, theta_degree = list(range(1, n + 1)), n
    elif fam == "SU":
        degrees, theta_degree = list(range(2, n + 1)), n
    elif fam == "SP":
        degrees, theta_degree = [2 * i for i in range(1, n + 1)], 2 * n
    else:
        raise ValueError(f"unknown family {family!r}")
    mk = m * theta_degree
    num = poly_add(poly_add([1], monomial(mk, -1)), poly_mul(monomial(mk), bcom_numerator_sum(n, fam)))
    return HilbertSeries.make(num, degrees)


def from_basis(basis) -> HilbertSeries:
    """``(sum_b t^{deg b}) / prod (1 - t^{2 d_i})`` for a free basis."""
    num = [0]
    for b in basis.elements:
        num = poly_add(num, monomial(b.homogeneous_degree()))
    return HilbertSeries.make(num, basis.base_degrees)


def base_series(degrees: Sequence[int]) -> HilbertSeries:
    return HilbertSeries.make([1], degrees)


# ---------------------------------------------------------------------------
# tables

def table_csv(rows: Sequence[Tuple[int, int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["coh_degree", "dimension"])
    w.writerows(rows)
    return buf.getvalue()


def table_json(rows: Sequence[Tuple[int, int]], **meta) -> str:
    payload: Dict = {"schema": 1}
    payload.update(meta)
    payload["table"] = [{"coh_degree": d, "dimension": c} for d, c in rows]
    return json.dumps(payload, indent=2)
