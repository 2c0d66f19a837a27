"""Exact truncated graded-commutative polynomial algebra over the rationals.

Every generator has complex degree 1. An element lives in a :class:`GradedRing`
(a label, a sorted tuple of generator names and a truncation degree) and is
stored sparsely as a map from exponent tuples to :class:`fractions.Fraction`
coefficients. Terms above the truncation degree are dropped eagerly, so
products never resurrect them.

    >>> R = GradedRing("demo", ("x",), 3)
    >>> x = R.gen("x")
    >>> print(inverse(1 + x))
    1 - x + x^2 - x^3
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Tuple, Union

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


class SWCalcError(Exception):
    """Base class for all errors raised by the engine."""


class IncompatibleSpaceError(SWCalcError):
    """Operands live in different rings or spaces."""


class NotInvertibleError(SWCalcError, ArithmeticError):
    """Attempted to invert an element whose constant term is zero."""


class DomainError(SWCalcError, ValueError):
    """An argument is outside the domain of an operation."""


def factorial(n: int) -> int:
    if n < 0:
        raise DomainError(f"factorial of negative integer {n}")
    return math.factorial(n)


@lru_cache(maxsize=4096)
def binom(n: int, m: int) -> Fraction:
    """Generalized binomial coefficient ``n(n-1)...(n-m+1)/m!`` for any integer n.

    With this convention ``binom(-n, m) == (-1)**m * binom(n + m - 1, m)`` and
    the binomial theorem holds for negative exponents.
    """
    if m < 0:
        raise DomainError(f"binomial lower index must be non-negative, got {m}")
    num = 1
    for i in range(m):
        num *= n - i
    # m consecutive integers are divisible by m!, so this is exact
    return Fraction(num // math.factorial(m))


class _Layout:
    """Packs exponent tuples into integers in base ``truncation + 1``.

    Within the truncation no digit ever overflows, so multiplying monomials is
    adding their codes.
    """

    __slots__ = ("nvars", "base", "weights", "deg", "_tuple")

    def __init__(self, nvars: int, truncation: int):
        self.nvars = nvars
        self.base = truncation + 1
        self.weights = tuple(self.base ** (nvars - 1 - i) for i in range(nvars))
        self.deg = _DegreeTable(self)
        self._tuple: Dict[int, Monomial] = {}

    def encode(self, mono: Monomial) -> int:
        return sum(e * w for e, w in zip(mono, self.weights))

    def decode(self, code: int) -> Monomial:
        mono = self._tuple.get(code)
        if mono is None:
            digits = []
            rest = code
            for _ in range(self.nvars):
                rest, e = divmod(rest, self.base)
                digits.append(e)
            mono = self._tuple[code] = tuple(reversed(digits))
        return mono

    def degree(self, code: int) -> int:
        return self.deg[code]


class _DegreeTable(dict):
    """code -> total degree, filled on first lookup."""

    __slots__ = ("layout",)

    def __init__(self, layout: "_Layout"):
        super().__init__()
        self.layout = layout

    def __missing__(self, code: int) -> int:
        deg = self[code] = sum(self.layout.decode(code))
        return deg


@dataclass(frozen=True)
class GradedRing:
    """Truncated polynomial ring on named degree-1 generators.

    ``label`` identifies the ambient model space, so two rings with the same
    generators but different spaces (say ``Cd(4,3)`` and ``Cd(5,3)``) are
    distinct.
    """

    label: str
    generators: Tuple[str, ...]
    truncation: int

    def __post_init__(self):
        gens = tuple(sorted(self.generators))
        if len(set(gens)) != len(gens):
            raise DomainError(f"duplicate generator names in {self.generators}")
        if self.truncation < 0:
            raise DomainError("truncation must be non-negative")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_layout", _Layout(len(gens), self.truncation))

    @property
    def nvars(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise DomainError(
                f"unknown generator {name!r} for {self.label}; "
                f"available: {', '.join(self.generators)}"
            ) from None

    def zero(self) -> "GradedElement":
        return GradedElement._raw(self, {})

    def one(self) -> "GradedElement":
        return GradedElement._raw(self, {0: 1})

    def const(self, c: Scalar) -> "GradedElement":
        if isinstance(c, int):
            return GradedElement._raw(self, {0: c})
        c = Fraction(c)
        return GradedElement._raw(self, {0: c.numerator}, c.denominator)

    def gen(self, name: str) -> "GradedElement":
        if self.truncation == 0:
            return self.zero()
        return GradedElement._raw(self, {self._layout.weights[self.index(name)]: 1})

    def monomial(self, exponents: Mapping[str, int], coef: Scalar = 1) -> "GradedElement":
        exps = [0] * self.nvars
        for name, e in exponents.items():
            if e < 0:
                raise DomainError("monomial exponents must be non-negative")
            exps[self.index(name)] = e
        return GradedElement(self, {tuple(exps): Fraction(coef)})


class GradedElement:
    """Immutable element of a :class:`GradedRing`.

    Supports ``+ - *``, integer powers (negative ones for units), division by
    units and by scalars. Equality is structural on the canonical term map.
    """

    # integer numerators over one positive denominator, reduced to lowest terms
    __slots__ = ("ring", "_terms", "_den")

    def __init__(self, ring: GradedRing, terms: Mapping[Monomial, Scalar]):
        lay = ring._layout
        fracs: Dict[int, Fraction] = {}
        for mono, c in terms.items():
            if len(mono) != ring.nvars:
                raise DomainError(f"monomial {mono} has wrong arity for {ring.label}")
            if any(e < 0 for e in mono):
                raise DomainError(f"negative exponent in {mono}")
            if sum(mono) > ring.truncation:
                continue
            code = lay.encode(mono)
            fracs[code] = fracs.get(code, 0) + (c if isinstance(c, int) else Fraction(c))
        den = 1
        for c in fracs.values():
            if not isinstance(c, int):
                den = den * c.denominator // math.gcd(den, c.denominator)
        ints = {m: c * den if isinstance(c, int) else c.numerator * (den // c.denominator) for m, c in fracs.items()}
        reduced = GradedElement._raw(ring, ints, den)
        self.ring, self._terms, self._den = ring, reduced._terms, reduced._den

    @classmethod
    def _raw(cls, ring: GradedRing, terms: Dict[int, int], den: int = 1) -> "GradedElement":
        # trusted path: codes already within the truncation, den > 0; reduces to lowest terms
        self = object.__new__(cls)
        self.ring = ring
        if 0 in terms.values():
            terms = {m: c for m, c in terms.items() if c}
        if den != 1:
            if not terms:
                den = 1
            else:
                g = math.gcd(den, *terms.values())
                if g > 1:
                    terms = {m: c // g for m, c in terms.items()}
                    den //= g
        self._terms = terms
        self._den = den
        return self

    # -- views ---------------------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self.items())

    @property
    def truncation(self) -> int:
        return self.ring.truncation

    def items(self) -> Iterable[Tuple[Monomial, Fraction]]:
        decode, den = self.ring._layout.decode, self._den
        return ((decode(m), Fraction(c, den)) for m, c in self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> Fraction:
        return Fraction(self._terms.get(0, 0), self._den)

    def coefficient(self, exponents: Mapping[str, int]) -> Fraction:
        exps = [0] * self.ring.nvars
        for name, e in exponents.items():
            exps[self.ring.index(name)] = e
        if sum(exps) > self.ring.truncation:
            return Fraction(0)
        return Fraction(self._terms.get(self.ring._layout.encode(exps), 0), self._den)

    def max_degree(self) -> int:
        deg = self.ring._layout.degree
        return max((deg(m) for m in self._terms), default=-1)

    def is_homogeneous(self, k: int) -> bool:
        deg = self.ring._layout.degree
        return all(deg(m) == k for m in self._terms)

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "GradedElement":
        if isinstance(other, GradedElement):
            _check_same(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return _scale(self, -1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return _scale(self, other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise NotInvertibleError("division by zero scalar")
            return _scale(self, 1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, inverse(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(other, inverse(self))

    def __pow__(self, n: int):
        return pow_int(self, n)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.ring == other.ring and self._den == other._den and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, self._den, frozenset(self._terms.items())))

    def __repr__(self):
        return f"GradedElement({self.ring.label}: {to_text(self)})"

    def __str__(self):
        return to_text(self)


def _check_same(u: GradedElement, v: GradedElement) -> None:
    if u.ring is not v.ring and u.ring != v.ring:
        raise IncompatibleSpaceError(
            f"cannot combine elements of {u.ring.label} and {v.ring.label}"
        )


def _scale(u: GradedElement, c: Scalar) -> GradedElement:
    if isinstance(c, int):
        p, q = c, 1
    else:
        p, q = c.numerator, c.denominator
    if p == 0 or not u._terms:
        return u.ring.zero()
    # u is already reduced, so only gcd(den, p) and gcd(q, numerators) can cancel
    den = u._den
    g = math.gcd(den, p)
    if g > 1:
        den //= g
        p //= g
    terms = {m: v * p for m, v in u._terms.items()} if p != 1 else dict(u._terms)
    if q > 1:
        h = math.gcd(q, *terms.values())
        if h > 1:
            q //= h
            terms = {m: v // h for m, v in terms.items()}
        den *= q
    out = object.__new__(GradedElement)
    out.ring, out._terms, out._den = u.ring, terms, den
    return out


def add(u: GradedElement, v: GradedElement) -> GradedElement:
    _check_same(u, v)
    if not v._terms:
        return u
    if not u._terms:
        return v
    du, dv = u._den, v._den
    if du == dv:
        out = dict(u._terms)
        for m, c in v._terms.items():
            out[m] = out.get(m, 0) + c
        return GradedElement._raw(u.ring, out, du)
    g = math.gcd(du, dv)
    su, sv = dv // g, du // g
    out = {m: c * su for m, c in u._terms.items()}
    for m, c in v._terms.items():
        out[m] = out.get(m, 0) + c * sv
    return GradedElement._raw(u.ring, out, du * su)


def _mul_terms(a: Dict[int, int], b: Dict[int, int], deg, top: int) -> Dict[int, int]:
    # product of integer term maps, dropping everything above degree ``top``
    buckets: List[List[Tuple[int, int]]] = [[] for _ in range(top + 1)]
    for m2, c2 in b.items():
        buckets[deg[m2]].append((m2, c2))
    out: Dict[int, int] = {}
    get = out.get
    for m1, c1 in a.items():
        for bucket in buckets[: top - deg[m1] + 1]:
            for m2, c2 in bucket:
                m = m1 + m2
                out[m] = get(m, 0) + c1 * c2
    return out


def mul(u: GradedElement, v: GradedElement) -> GradedElement:
    _check_same(u, v)
    a, b = u._terms, v._terms
    if not a:
        return u
    if not b:
        return v
    if len(b) == 1 and 0 in b:
        return _scale(_scale(u, b[0]), Fraction(1, v._den))
    if len(a) == 1 and 0 in a:
        return _scale(_scale(v, a[0]), Fraction(1, u._den))
    out = _mul_terms(a, b, u.ring._layout.deg, u.ring.truncation)
    return GradedElement._raw(u.ring, out, u._den * v._den)


def inverse(u: GradedElement) -> GradedElement:
    """Multiplicative inverse of a unit via the geometric series."""
    a0 = u._terms.get(0, 0)
    if a0 == 0:
        raise NotInvertibleError(f"{to_text(u)} has zero constant term and is not a unit")
    ring, top = u.ring, u.ring.truncation
    deg = ring._layout.deg
    # u = (a0 + N)/den, so 1/u = den/a0 * sum_k (-N/a0)^k with N nilpotent
    neg_n = {m: -c for m, c in u._terms.items() if m != 0}
    powers = [{0: 1}]
    while neg_n and len(powers) <= top:
        nxt = {m: c for m, c in _mul_terms(powers[-1], neg_n, deg, top).items() if c}
        if not nxt:
            break
        powers.append(nxt)
    K = len(powers) - 1
    total: Dict[int, int] = {}
    for k, pk in enumerate(powers):
        w = a0 ** (K - k)
        for m, c in pk.items():
            total[m] = total.get(m, 0) + c * w
    # the overall factor den / a0^(K+1) may be negative; keep the denominator positive
    num, dnm = u._den, a0 ** (K + 1)
    if dnm < 0:
        num, dnm = -num, -dnm
    return GradedElement._raw(ring, {m: c * num for m, c in total.items()}, dnm)


def pow_int(u: GradedElement, n: int) -> GradedElement:
    if not isinstance(n, int):
        raise DomainError(f"exponent must be an integer, got {n!r}")
    if n < 0:
        return pow_int(inverse(u), -n)
    result = u.ring.one()
    base = u
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def exp(u: GradedElement) -> GradedElement:
    """Truncated exponential series of an element of the augmentation ideal."""
    if u.constant_term() != 0:
        raise DomainError(f"exp requires zero constant term, got {to_text(u)}")
    ring, top, den = u.ring, u.ring.truncation, u._den
    deg = ring._layout.deg
    # integer powers A^k of the numerator map until they vanish
    powers = [{0: 1}]
    while len(powers) <= top:
        nxt = {m: c for m, c in _mul_terms(powers[-1], u._terms, deg, top).items() if c}
        if not nxt:
            break
        powers.append(nxt)
    K = len(powers) - 1
    # sum_k A^k / (den^k k!) over the common denominator den^K K!
    total: Dict[int, int] = {}
    fk = math.factorial(K)
    for k, pk in enumerate(powers):
        w = den ** (K - k) * (fk // math.factorial(k))
        for m, c in pk.items():
            total[m] = total.get(m, 0) + c * w
    return GradedElement._raw(ring, total, den**K * fk)


def degree_part(u: GradedElement, k: int) -> GradedElement:
    if not 0 <= k <= u.ring.truncation:
        raise DomainError(f"degree {k} outside 0..{u.ring.truncation}")
    deg = u.ring._layout.deg
    kept = {m: c for m, c in u._terms.items() if deg[m] == k}
    if len(kept) == len(u._terms):
        return u
    return GradedElement._raw(u.ring, kept, u._den)


def truncate(u: GradedElement, k: int) -> GradedElement:
    """Drop every term of degree greater than ``k``."""
    deg = u.ring._layout.deg
    kept = {m: c for m, c in u._terms.items() if deg[m] <= k}
    if len(kept) == len(u._terms):
        return u
    return GradedElement._raw(u.ring, kept, u._den)


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _sort_key(ring: GradedRing, mono: Monomial):
    # lower degree first; within a degree, lexicographic on generator names
    return (sum(mono), tuple(-e for e in mono))


def to_text(u: GradedElement) -> str:
    """Canonical text form ``coef * gen^e * ...`` with sorted monomials."""
    if u.is_zero():
        return "0"
    pieces = []
    for mono, c in sorted(u.items(), key=lambda t: _sort_key(u.ring, t[0])):
        factors = []
        for name, e in zip(u.ring.generators, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = " * ".join(factors)
        else:
            body = " * ".join([format_rational(mag)] + factors)
        pieces.append((c < 0, body))
    neg, body = pieces[0]
    out = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out
