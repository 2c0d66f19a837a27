"""Model ring of ``C x C_d`` and the Grothendieck-Riemann-Roch pushforward.

An element is written ``1 (x) A + [pt] (x) B + delta11 . (1 (x) C)`` with
``A, B, C`` classes on ``C_d``. The incidence class is
``delta = n[pt](x)1 + delta11 + 1(x)x`` and the products obey

* ``([pt](x)Q) . ([pt](x)Q') = 0``
* ``delta11 . ([pt](x)Q) = 0``
* ``(delta11 . R) . (delta11 . R') = -2 [pt](x)(theta R R')``

``delta11`` has bidegree (1,1), so its coefficient ``C`` lives in degree at
most ``d - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .ring import DomainError, GradedElement, IncompatibleSpaceError, _mul_terms, add, mul, truncate
from .spaces import SymmetricProduct, _require_symmetric


@dataclass(frozen=True)
class KunnethElement:
    space: SymmetricProduct
    slot_one: GradedElement
    slot_pt: GradedElement
    slot_delta: GradedElement

    def __post_init__(self):
        ring = self.space.ring
        for slot in (self.slot_one, self.slot_pt, self.slot_delta):
            if slot.ring is not ring and slot.ring != ring:
                raise IncompatibleSpaceError(f"slot lives in {slot.ring.label}, expected {ring.label}")
        object.__setattr__(self, "slot_delta", truncate(self.slot_delta, self.space.d - 1))

    @classmethod
    def zero(cls, space):
        z = space.ring.zero()
        return cls(space, z, z, z)

    @classmethod
    def one(cls, space):
        z = space.ring.zero()
        return cls(space, space.one(), z, z)

    @classmethod
    def point(cls, space, coef=None):
        """``[pt] (x) coef`` (``coef`` defaults to 1)."""
        z = space.ring.zero()
        return cls(space, z, space.one() if coef is None else coef, z)

    @classmethod
    def delta11(cls, space, coef=None):
        z = space.ring.zero()
        return cls(space, z, z, space.one() if coef is None else coef)

    @classmethod
    def lift(cls, u: GradedElement, space):
        """``1 (x) u``."""
        z = space.ring.zero()
        return cls(space, u, z, z)

    def __add__(self, other: "KunnethElement") -> "KunnethElement":
        _check(self, other)
        return KunnethElement(
            self.space,
            self.slot_one + other.slot_one,
            self.slot_pt + other.slot_pt,
            self.slot_delta + other.slot_delta,
        )

    def scale(self, c) -> "KunnethElement":
        return KunnethElement(self.space, self.slot_one * c, self.slot_pt * c, self.slot_delta * c)

    def __mul__(self, other: "KunnethElement") -> "KunnethElement":
        return kunneth_mul(self, other)

    def is_zero(self) -> bool:
        return self.slot_one.is_zero() and self.slot_pt.is_zero() and self.slot_delta.is_zero()


def _check(u: KunnethElement, v: KunnethElement) -> None:
    if u.space is not v.space and u.space != v.space:
        raise IncompatibleSpaceError(f"Kunneth elements over {u.space} and {v.space}")


def kunneth_mul(u: KunnethElement, v: KunnethElement) -> KunnethElement:
    _check(u, v)
    a1, ap, ad = u.slot_one, u.slot_pt, u.slot_delta
    b1, bp, bd = v.slot_one, v.slot_pt, v.slot_delta
    one = mul(a1, b1)
    pt = add(mul(a1, bp), mul(ap, b1))
    if not (ad.is_zero() or bd.is_zero()):
        pt = pt - 2 * mul(u.space.gen("theta"), mul(ad, bd))
    delta = add(mul(a1, bd), mul(ad, b1))
    return KunnethElement(u.space, one, pt, delta)


def incidence_class(n: int, space: SymmetricProduct) -> KunnethElement:
    """``delta = n[pt](x)1 + delta11 + 1(x)x``."""
    space = _require_symmetric(space)
    return KunnethElement(space, space.gen("x"), space.one() * n, space.one())


@lru_cache(maxsize=256)
def exp_delta(n: int, space: SymmetricProduct) -> KunnethElement:
    """Chern character ``e^delta`` of the incidence line bundle, summed termwise."""
    if n < 0:
        raise DomainError("fiber degree n must be non-negative")
    delta = incidence_class(n, space)
    total = KunnethElement.one(space)
    term = KunnethElement.one(space)
    # total degree on C x C_d is d + 1, so delta^(d+2) = 0
    for k in range(1, space.d + 2):
        term = (term * delta).scale(Fraction(1, k))
        if term.is_zero():
            break
        total = total + term
    return total


@lru_cache(maxsize=1024)
def todd_pushforward_to_curve(chi: int, r, space: SymmetricProduct) -> KunnethElement:
    """Push ``pi_1^* Todd X = 1 + r f + chi pt`` from ``X x C_d`` down to ``C x C_d``.

    Along the elliptic fibration ``p`` the fiber class is ``f = p^*[pt]`` and
    ``p_*`` lowers degree by one: ``p_*1 = 0``, ``p_* f = [pt] p_*1 = 0`` and
    ``p_* pt = [pt]``. The coefficient ``r`` therefore drops out.
    """
    p_star_one = KunnethElement.zero(space)
    p_star_f = KunnethElement.point(space) * p_star_one
    p_star_pt = KunnethElement.point(space)
    return p_star_one + p_star_f.scale(Fraction(r)) + p_star_pt.scale(chi)


def pushforward_to_cd(u: KunnethElement) -> GradedElement:
    """``psi_2*``: integrate over the curve factor; only the ``[pt]`` slot survives."""
    return u.slot_pt


def grr_pushforward(chi: int, n: int, space: SymmetricProduct, r=0) -> GradedElement:
    """``ch(pi_2! O(D)) = psi_2*(e^delta . p_*(Todd X))``, which is ``chi e^x``."""
    if chi < 0:
        raise DomainError("chi must be non-negative")
    space = _require_symmetric(space)
    return pushforward_to_cd(exp_delta(n, space) * todd_pushforward_to_curve(chi, r, space))


def chern_from_character(ch: GradedElement, trunc: int | None = None) -> GradedElement:
    """Total Chern class from a Chern character via Newton's identities.

    Power sums are ``p_k = k! ch_k`` and ``k e_k = sum_i (-1)^(i-1) e_(k-i) p_i``.
    """
    top = ch.truncation if trunc is None else min(trunc, ch.truncation)
    rank = ch.constant_term()
    if rank.denominator != 1:
        raise DomainError(f"degree-0 part of a Chern character must be an integer, got {rank}")
    ring, D = ch.ring, ch._den
    deg = ring._layout.deg
    # integer numerators of p_i over the common denominator D
    P = [{} for _ in range(top + 1)]
    for m, c in ch._terms.items():
        k = deg[m]
        if 1 <= k <= top:
            P[k][m] = c * math.factorial(k)
    # G_k = D^k k! e_k stays integral:
    # G_k = sum_i (-1)^(i-1) (k-1)!/(k-i)! D^(i-1) G_(k-i) P_i
    G = [{0: 1}]
    for k in range(1, top + 1):
        acc: dict = {}
        for i in range(1, k + 1):
            if not P[i] or not G[k - i]:
                continue
            w = math.factorial(k - 1) // math.factorial(k - i) * D ** (i - 1)
            if i % 2 == 0:
                w = -w
            for m, c in _mul_terms(G[k - i], P[i], deg, top).items():
                acc[m] = acc.get(m, 0) + c * w
        G.append({m: c for m, c in acc.items() if c})
    total: dict = {}
    ft = math.factorial(top)
    for k, gk in enumerate(G):
        w = D ** (top - k) * (ft // math.factorial(k))
        for m, c in gk.items():
            total[m] = total.get(m, 0) + c * w
    return GradedElement._raw(ring, total, D**top * ft)
