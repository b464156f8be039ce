"""Exact sparse multivariate polynomials and Laurent polynomials.

Polynomials carry rational coefficients (``fractions.Fraction``); Laurent
polynomials carry integer coefficients and allow negative exponents.  Both
are immutable, use dense exponent tuples, and order monomials by graded
lexicographic order with ``v1 > v2 > ... > vn``.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

Exponent = Tuple[int, ...]


class RingMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    """Raised when an exact division has a nonzero remainder."""


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


def grlex_key(exps: Exponent):
    return (sum(exps), exps)


@dataclass(frozen=True)
class PolyRing:
    """Ambient ring descriptor: ordered variable names."""

    names: Tuple[str, ...]
    laurent: bool = False

    @classmethod
    def standard(cls, n: int, prefix: str = "t", laurent: bool = False) -> "PolyRing":
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)), laurent)

    @classmethod
    def doubled(cls, n: int, first: str = "x", second: str = "y") -> "PolyRing":
        names = tuple(f"{first}{i}" for i in range(1, n + 1))
        names += tuple(f"{second}{i}" for i in range(1, n + 1))
        return cls(names)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero(self):
        return _element_class(self)(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        return _element_class(self)(self, {(0,) * self.nvars: c})

    def gen(self, i: int):
        e = [0] * self.nvars
        e[i] = 1
        return _element_class(self)(self, {tuple(e): 1})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def var(self, name: str):
        return self.gen(self.names.index(name))

    def monomial(self, exps: Sequence[int], coeff=1):
        return _element_class(self)(self, {tuple(exps): coeff})

    def parse(self, text: str):
        return parse_poly(text, self)


class _Sparse:
    """Shared arithmetic for ``Polynomial`` and ``LaurentPolynomial``."""

    __slots__ = ("ring", "terms", "_hash")

    _coerce = staticmethod(Fraction)

    def __init__(self, ring: PolyRing, terms: Mapping[Exponent, object]):
        clean: Dict[Exponent, object] = {}
        coerce = self._coerce
        n = ring.nvars
        for e, c in terms.items():
            if len(e) != n:
                raise ValueError(f"exponent {e} has wrong length for {n} variables")
            if c:
                clean[tuple(e)] = coerce(c)
        self._check_exponents(ring, clean)
        self.ring = ring
        self.terms = clean
        self._hash = None

    @staticmethod
    def _check_exponents(ring, terms):
        pass

    @classmethod
    def _from_clean(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # -- basic queries -------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Exponent, object]]:
        return iter(sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True))

    def __eq__(self, other):
        if isinstance(other, _Sparse):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other) if other else not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    def leading(self) -> Tuple[Exponent, object]:
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def degrees(self) -> set:
        return {sum(e) for e in self.terms}

    def homogeneous_degree(self) -> int:
        """Common monomial degree; raises ``ValueError`` if inhomogeneous or zero."""
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("polynomial is zero or not homogeneous")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def coh_degree(self) -> int:
        return 2 * self.homogeneous_degree()

    def homogeneous_components(self) -> Dict[int, "_Sparse"]:
        parts: Dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        cls = type(self)
        return {d: cls._from_clean(self.ring, t) for d, t in sorted(parts.items())}

    def variables_used(self) -> set:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    # -- arithmetic ----------------------------------------------------
    def _coerce_other(self, other):
        if isinstance(other, _Sparse):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring.names} vs {other.ring.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e, 0) + c
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return type(self)._from_clean(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._from_clean(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            c0 = self._coerce(other)
            return type(self)._from_clean(self.ring, {e: c * c0 for e, c in self.terms.items()})
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        terms: Dict[Exponent, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = terms.get(e, 0) + c1 * c2
                if v:
                    terms[e] = v
                else:
                    del terms[e]
        return type(self)._from_clean(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self.terms) == 1 and self.ring.laurent:
                (e, c), = self.terms.items()
                if c in (1, -1):
                    return type(self)._from_clean(self.ring, {tuple(-a * -k for a in e): c ** (-k)})
            raise ValueError("negative power of a non-unit")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale_monomial(self, shift: Sequence[int]):
        """Multiply by the monomial with exponent vector ``shift``."""
        return type(self)(self.ring, {tuple(a + b for a, b in zip(e, shift)): c
                                      for e, c in self.terms.items()})

    def map_terms(self, fn):
        """Build a new element from ``fn(exps, coeff) -> (exps, coeff)``."""
        terms: Dict[Exponent, object] = {}
        for e, c in self.terms.items():
            e2, c2 = fn(e, c)
            v = terms.get(e2, 0) + c2
            if v:
                terms[e2] = v
            else:
                terms.pop(e2, None)
        return type(self)._from_clean(self.ring, terms)

    def substitute(self, images: Sequence["_Sparse"]):
        """Ring homomorphism sending variable i to ``images[i]``."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring
        out = target.zero()
        powers: Dict[Tuple[int, int], _Sparse] = {}
        for e, c in self.terms.items():
            term = target.constant(c)
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    if key not in powers:
                        powers[key] = images[i] ** a
                    term = term * powers[key]
            out = out + term
        return out

    def change_ring(self, ring: PolyRing, positions: Sequence[int]):
        """Embed into ``ring`` sending variable i to variable ``positions[i]``."""
        n = ring.nvars
        terms = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, a in enumerate(e):
                new[positions[i]] += a
            terms[tuple(new)] = c
        return _element_class(ring)(ring, terms)

    # -- rendering -----------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"{type(self).__name__}({render(self)!r})"


class Polynomial(_Sparse):
    """Polynomial with rational coefficients."""

    __slots__ = ()

    @staticmethod
    def _check_exponents(ring, terms):
        if ring.laurent:
            raise ValueError("Polynomial requires a non-Laurent ring")
        for e in terms:
            if any(a < 0 for a in e):
                raise ValueError("negative exponent in a polynomial ring")


class LaurentPolynomial(_Sparse):
    """Laurent polynomial with integer coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError("Laurent polynomials have integer coefficients")
            return c.numerator
        return int(c)

    @staticmethod
    def _check_exponents(ring, terms):
        if not ring.laurent:
            raise ValueError("LaurentPolynomial requires a Laurent ring")

    def min_exponents(self) -> Exponent:
        n = self.ring.nvars
        if not self.terms:
            return (0,) * n
        return tuple(min(e[i] for e in self.terms) for i in range(n))

    def max_exponents(self) -> Exponent:
        n = self.ring.nvars
        if not self.terms:
            return (0,) * n
        return tuple(max(e[i] for e in self.terms) for i in range(n))


def _element_class(ring: PolyRing):
    return LaurentPolynomial if ring.laurent else Polynomial


# ---------------------------------------------------------------------------
# division

def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return ``q`` with ``f == q * g``, or raise ``NotDivisible``.

    Multivariate division by the single divisor ``g`` in graded-lex order; a
    principal ideal's generator is a Groebner basis, so a zero remainder is
    equivalent to divisibility.
    """
    if g.ring != f.ring:
        raise RingMismatch("divide_exact across rings")
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if not f:
        return f.ring.zero()
    lg, lc = g.leading()
    gterms = list(g.terms.items())
    p = dict(f.terms)
    heap = [(_neg_key(e), e) for e in p]
    heapq.heapify(heap)
    quotient: Dict[Exponent, Fraction] = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = p.pop(e, None)
        if c is None:
            continue
        shift = tuple(a - b for a, b in zip(e, lg))
        if any(s < 0 for s in shift):
            raise NotDivisible(f"leading term {e} not divisible by {lg}")
        qc = c / lc
        quotient[shift] = quotient.get(shift, 0) + qc
        for ge, gc in gterms:
            if ge == lg:
                continue
            ne = tuple(a + b for a, b in zip(ge, shift))
            v = p.get(ne, 0) - qc * gc
            if v:
                if ne not in p:
                    heapq.heappush(heap, (_neg_key(ne), ne))
                p[ne] = v
            else:
                p.pop(ne, None)
    return Polynomial(f.ring, quotient)


def _neg_key(e: Exponent):
    return (-sum(e), tuple(-a for a in e))


def divides(g: Polynomial, f: Polynomial) -> bool:
    try:
        divide_exact(f, g)
    except NotDivisible:
        return False
    return True


def laurent_divide_exact(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    """Exact division in ``Z[z1^+-1, ..., zn^+-1]``.

    Both operands are shifted by monomial units into the polynomial subring
    with minimal exponents zero, divided over Q, and accepted only when the
    quotient has integer coefficients.
    """
    if g.ring != f.ring:
        raise RingMismatch("laurent_divide_exact across rings")
    if not g:
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    ring = f.ring
    if not f:
        return ring.zero()
    gmin, fmin = g.min_exponents(), f.min_exponents()
    pring = PolyRing(tuple(ring.names))
    gp = Polynomial(pring, {tuple(a - b for a, b in zip(e, gmin)): c for e, c in g.terms.items()})
    fp = Polynomial(pring, {tuple(a - b for a, b in zip(e, fmin)): c for e, c in f.terms.items()})
    q = divide_exact(fp, gp)
    shift = tuple(a - b for a, b in zip(fmin, gmin))
    terms = {}
    for e, c in q.terms.items():
        if c.denominator != 1:
            raise NotDivisible("quotient has non-integer coefficients")
        terms[tuple(a + s for a, s in zip(e, shift))] = c.numerator
    return LaurentPolynomial(ring, terms)


def laurent_divides(g: LaurentPolynomial, f: LaurentPolynomial) -> bool:
    try:
        laurent_divide_exact(f, g)
    except NotDivisible:
        return False
    return True


# ---------------------------------------------------------------------------
# symmetric functions used throughout the catalog

def elementary_symmetric(k: int, xs: Sequence[_Sparse]):
    """``sigma_k(xs)`` computed by the generating product."""
    ring = xs[0].ring
    es = [ring.one()] + [ring.zero()] * len(xs)
    for x in xs:
        for j in range(len(xs), 0, -1):
            es[j] = es[j] + es[j - 1] * x
    return es[k] if k <= len(xs) else ring.zero()


def product(items: Iterable[_Sparse], ring: PolyRing):
    return reduce(lambda a, b: a * b, items, ring.one())


# ---------------------------------------------------------------------------
# rendering and parsing

def _render_coeff(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def _render_monomial(names, e) -> str:
    parts = []
    for name, a in zip(names, e):
        if a == 1:
            parts.append(name)
        elif a:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def render(p: _Sparse) -> str:
    """Canonical text: descending graded-lex terms, coefficients ``a`` or ``a/b``."""
    if not p.terms:
        return "0"
    out = []
    for e, c in p:
        mono = _render_monomial(p.ring.names, e)
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = _render_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_render_coeff(mag)}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_]+\d*)|(?P<op>[-+*^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[offset]!r}", offset)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}", tok[2])
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return value

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        value = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        base = self.primary()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            neg = False
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "-":
                self.take()
                neg = True
            tok = self.take()
            if tok[0] != "num" or "/" in tok[1]:
                raise ParseError("exponent must be an integer", tok[2])
            k = int(tok[1])
            if neg:
                if not self.ring.laurent:
                    raise ParseError("negative exponent in a polynomial ring", tok[2])
                try:
                    return base ** (-k)
                except ValueError:
                    raise ParseError("negative power of a non-monomial", tok[2]) from None
            return base ** k
        return base

    def primary(self):
        kind, value, offset = self.take()
        if kind == "num":
            return self.ring.constant(Fraction(value) if not self.ring.laurent else _int_literal(value, offset))
        if kind == "var":
            if value not in self.ring.names:
                raise ParseError(f"unknown variable {value!r}", offset)
            return self.ring.var(value)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "op" and value == "-":
            return -self.factor()
        raise ParseError(f"unexpected token {value!r}" if value else "unexpected end of input", offset)


def _int_literal(value: str, offset: int) -> int:
    if "/" in value:
        raise ParseError("Laurent rings take integer coefficients", offset)
    return int(value)


def parse_poly(text: str, ring: PolyRing):
    """Parse ``text`` into an element of ``ring``.

    Grammar: integer or ``a/b`` literals, the ring's variable names, ``+ - *``,
    ``^`` with an integer exponent, and parentheses.  Juxtaposition is not
    multiplication, so ``"t1t2"`` is rejected.  Errors carry a byte offset.
    """
    if not text.strip():
        raise ParseError("empty input", 0)
    return _Parser(text, ring).parse()


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, d: int) -> Tuple[Exponent, ...]:
    """Exponent tuples of total degree ``d``, in descending graded-lex order."""
    if nvars == 0:
        return ((),) if d == 0 else ()
    out = []
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - a):
            out.append((a,) + rest)
    return tuple(out)
