"""Model moduli spaces, integration against their fundamental class, and
bundle-level Chern class calculus.

The four model spaces are

* ``P(a)``      projective space, generator ``h`` with ``h^a = 1``;
* ``Cd(g,d)``   symmetric product of a genus-g curve, generators ``x`` and
  ``theta`` with ``theta^k x^(d-k) = g!/(g-k)!`` (zero for ``k > g``);
* ``Jac(g)``    Jacobian, generator ``theta`` with ``theta^g = g!``;
* ``AxB``       binary product, generators prefixed ``p1.`` and ``p2.``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Tuple

from .ring import (
    DomainError,
    GradedElement,
    GradedRing,
    IncompatibleSpaceError,
    SWCalcError,
    degree_part,
    exp,
    factorial,
    binom,
    inverse,
    pow_int,
)


class InapplicableCaseError(SWCalcError):
    """The requested computation is not defined for these parameters."""


@lru_cache(maxsize=None)
def _shared_ring(label: str, generators: Tuple[str, ...], dim: int) -> GradedRing:
    # equal spaces share one ring, so elements compare by identity and reuse layout caches
    return GradedRing(label, generators, dim)


class AmbientSpace:
    """Common interface of the model spaces."""

    dim: int
    label: str

    @property
    def generators(self) -> Tuple[str, ...]:
        raise NotImplementedError

    @cached_property
    def ring(self) -> GradedRing:
        return _shared_ring(self.label, self.generators, self.dim)

    def gen(self, name: str) -> GradedElement:
        return self.ring.gen(name)

    def one(self) -> GradedElement:
        return self.ring.one()

    def monomial_value(self, exponents: Dict[str, int]) -> Fraction:
        """Value of a top-degree monomial on the fundamental class."""
        raise NotImplementedError

    def integrate(self, u: GradedElement) -> Fraction:
        return integrate(u, self)

    def __str__(self):
        return self.label


@dataclass(frozen=True, eq=True)
class ProjectiveSpace(AmbientSpace):
    a: int

    def __post_init__(self):
        if self.a < 0:
            raise DomainError("projective space dimension must be >= 0")

    @property
    def dim(self) -> int:
        return self.a

    @property
    def label(self) -> str:
        return f"P({self.a})"

    @property
    def generators(self):
        return ("h",)

    def monomial_value(self, exponents):
        return Fraction(1) if exponents.get("h", 0) == self.a else Fraction(0)


@dataclass(frozen=True, eq=True)
class SymmetricProduct(AmbientSpace):
    """``C_d``, the d-th symmetric product of a curve of genus g."""

    g: int
    d: int

    def __post_init__(self):
        if self.g < 0 or self.d < 0:
            raise DomainError("SymmetricProduct requires g >= 0 and d >= 0")

    @property
    def dim(self) -> int:
        return self.d

    @property
    def label(self) -> str:
        return f"Cd({self.g},{self.d})"

    @property
    def generators(self):
        return ("theta", "x")

    def monomial_value(self, exponents):
        k = exponents.get("theta", 0)
        if k + exponents.get("x", 0) != self.d:
            return Fraction(0)
        if k > self.g:
            return Fraction(0)
        return Fraction(factorial(self.g), factorial(self.g - k))


@dataclass(frozen=True, eq=True)
class Jacobian(AmbientSpace):
    g: int

    def __post_init__(self):
        if self.g < 0:
            raise DomainError("Jacobian genus must be >= 0")

    @property
    def dim(self) -> int:
        return self.g

    @property
    def label(self) -> str:
        return f"Jac({self.g})"

    @property
    def generators(self):
        return ("theta",)

    def monomial_value(self, exponents):
        if exponents.get("theta", 0) != self.g:
            return Fraction(0)
        return Fraction(factorial(self.g))


@dataclass(frozen=True, eq=True)
class Product(AmbientSpace):
    left: AmbientSpace
    right: AmbientSpace

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim

    @property
    def label(self) -> str:
        return f"{self.left.label}x{self.right.label}"

    @property
    def factors(self) -> Tuple[AmbientSpace, AmbientSpace]:
        return (self.left, self.right)

    @property
    def generators(self):
        return tuple(f"p1.{n}" for n in self.left.generators) + tuple(
            f"p2.{n}" for n in self.right.generators
        )

    def monomial_value(self, exponents):
        split: Tuple[Dict[str, int], Dict[str, int]] = ({}, {})
        for name, e in exponents.items():
            idx, _, base = name.partition(".")
            split[0 if idx == "p1" else 1][base] = e
        lv, rv = split
        if sum(lv.values()) != self.left.dim or sum(rv.values()) != self.right.dim:
            return Fraction(0)
        return self.left.monomial_value(lv) * self.right.monomial_value(rv)

    def pullback(self, u: GradedElement, factor: int) -> GradedElement:
        """Pull back a class from factor 1 or 2 (p1^*, p2^*)."""
        src = self.factors[factor - 1]
        if u.ring != src.ring:
            raise IncompatibleSpaceError(f"{u.ring.label} is not factor {factor} of {self.label}")
        prefix = f"p{factor}."
        target = [self.ring.index(prefix + n) for n in src.ring.generators]
        terms = {}
        for mono, c in u.items():
            exps = [0] * self.ring.nvars
            for pos, e in zip(target, mono):
                exps[pos] = e
            terms[tuple(exps)] = c
        return GradedElement(self.ring, terms)


def integrate(u: GradedElement, space: AmbientSpace) -> Fraction:
    """Pair ``u`` with the fundamental class: only degree ``dim`` terms count."""
    if u.ring != space.ring:
        raise IncompatibleSpaceError(f"element of {u.ring.label} integrated over {space.label}")
    total = Fraction(0)
    names = space.ring.generators
    for mono, c in u.items():
        if sum(mono) != space.dim:
            continue
        total += c * space.monomial_value(dict(zip(names, mono)))
    return total


_SIMPLE = {
    "P": (re.compile(r"P\((\d+)\)$"), ProjectiveSpace),
    "Cd": (re.compile(r"Cd\((\d+),(\d+)\)$"), SymmetricProduct),
    "Jac": (re.compile(r"Jac\((\d+)\)$"), Jacobian),
}


def parse_space(spec: str) -> AmbientSpace:
    """Parse ``P(a)``, ``Cd(g,d)``, ``Jac(g)`` or ``<spec>x<spec>``."""
    text = spec.replace(" ", "")
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "x" and depth == 0:
            return Product(parse_space(text[:i]), parse_space(text[i + 1 :]))
    for pattern, cls in _SIMPLE.values():
        m = pattern.match(text)
        if m:
            return cls(*(int(v) for v in m.groups()))
    raise DomainError(f"cannot parse space spec {spec!r}; expected P(a), Cd(g,d), Jac(g) or AxB")


@dataclass(frozen=True)
class BundleClass:
    """A (possibly virtual) bundle known only through its rank and total Chern class."""

    rank: int
    total_chern: GradedElement

    def __post_init__(self):
        if self.total_chern.constant_term() != 1:
            raise DomainError("total Chern class must have constant term 1")

    def chern(self, k: int) -> GradedElement:
        if k < 0 or k > self.total_chern.truncation:
            return self.total_chern.ring.zero()
        return degree_part(self.total_chern, k)

    def top_chern(self) -> GradedElement:
        return self.chern(self.rank)


def _require_symmetric(space) -> SymmetricProduct:
    if not isinstance(space, SymmetricProduct):
        raise IncompatibleSpaceError(f"expected a symmetric product Cd(g,d), got {space}")
    return space


def tangent_chern(space: SymmetricProduct) -> BundleClass:
    """``c(T C_d) = (1+x)^(d+1-g) exp(-theta/(1+x))``."""
    space = _require_symmetric(space)
    x, theta = space.gen("x"), space.gen("theta")
    one_x = 1 + x
    c = pow_int(one_x, space.d + 1 - space.g) * exp(-theta * inverse(one_x))
    return BundleClass(space.d, c)


def dual_obstruction_chern(space: SymmetricProduct) -> BundleClass:
    """The bundle ``E = R^1 psi_* O(I)`` of rank g-d, with ``c(E) = c(T C_d)^-1``."""
    space = _require_symmetric(space)
    if space.g < space.d:
        raise DomainError(f"rank g-d = {space.g - space.d} is negative")
    return BundleClass(space.g - space.d, inverse(tangent_chern(space).total_chern))


def tensor_line(E: BundleClass, line_c1: GradedElement) -> BundleClass:
    """Chern class of ``E (x) L`` by the splitting principle, given ``c1(L)``."""
    if not line_c1.is_homogeneous(1):
        raise DomainError("first Chern class of a line bundle must be homogeneous of degree 1")
    ring = E.total_chern.ring
    if line_c1.ring != ring:
        raise IncompatibleSpaceError("line bundle and bundle live on different spaces")
    r = E.rank
    total = ring.zero()
    powers = [ring.one()]
    for _ in range(r):
        powers.append(powers[-1] * line_c1)
    for k in range(r + 1):
        for i in range(k + 1):
            total = total + E.chern(i) * powers[k - i] * binom(r - i, k - i)
    return BundleClass(r, total)


def obstruction_euler_times_mu(
    pushforward_chern: GradedElement,
    tangent_chern: GradedElement,
    n: int,
    mu: GradedElement,
    d_exp: int,
    space: AmbientSpace,
) -> Fraction:
    """``integral of c_n(O) mu^d_exp`` with ``c(O) = c(pi_!)^-1 c(T)``."""
    if n < 0 or d_exp < 0 or n + d_exp != space.dim:
        raise DomainError(f"need n + d_exp = dim = {space.dim}, got n={n}, d_exp={d_exp}")
    if not mu.is_homogeneous(1):
        raise DomainError("mu must be homogeneous of degree 1")
    euler = degree_part(inverse(pushforward_chern) * tangent_chern, n)
    return integrate(euler * pow_int(mu, d_exp), space)
