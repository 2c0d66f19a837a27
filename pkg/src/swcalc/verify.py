"""Verification sweeps backing ``swcalc verify``.

Each suite yields :class:`Check` records; a suite passes when every record does.
Expected values are computed from the closed formulas with ``math.comb`` and
plain integer arithmetic, independently of the Chern class machinery.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterator, List

from .kunneth import chern_from_character, grr_pushforward
from .ring import GradedElement, GradedRing, SWCalcError, binom, exp, inverse, pow_int
from .spaces import SymmetricProduct
from . import sw


@dataclass(frozen=True)
class Check:
    suite: str
    case: str
    ok: bool
    detail: str = ""


def _comb(n: int, k: int) -> int:
    """Generalized binomial coefficient via the falling factorial, for use as an oracle."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= n - i
    q, r = divmod(num, math.factorial(k))
    assert r == 0
    return q


@lru_cache(maxsize=None)
def _codes(ring: GradedRing) -> List[int]:
    monos = itertools.product(range(ring.truncation + 1), repeat=ring.nvars)
    return [ring._layout.encode(m) for m in monos if sum(m) <= ring.truncation]


def random_element(ring: GradedRing, rng: random.Random, nterms: int = 4, unit: bool = False) -> GradedElement:
    """Random element with up to ``nterms`` terms and small rational coefficients."""
    codes = _codes(ring)
    den = rng.choice((1, 2, 3, 4, 6))
    terms = {rng.choice(codes): rng.randint(-12, 12) for _ in range(nterms)}
    if unit:
        terms[0] = rng.choice((-3, -2, -1, 1, 2, 3)) * rng.randint(1, 4)
    return GradedElement._raw(ring, terms, den)


def _aug(u: GradedElement) -> GradedElement:
    return u - u.constant_term()


RANDOM_RINGS = (
    GradedRing("R1", ("x",), 6),
    GradedRing("R2", ("theta", "x"), 4),
    GradedRing("R3", ("a", "b", "c"), 3),
)


def ring_laws(cases: int = 1000, seed: int = 0) -> Dict[str, List[bool]]:
    """Randomized ring laws, exact: returns per-law lists of outcomes."""
    rng = random.Random(seed)
    out: Dict[str, List[bool]] = {
        "associativity": [],
        "distributivity": [],
        "unit-inverse": [],
        "exp-additivity": [],
        "binomial-bridge": [],
    }
    for i in range(cases):
        ring = RANDOM_RINGS[i % len(RANDOM_RINGS)]
        u, v, w = (random_element(ring, rng) for _ in range(3))
        uv = u * v
        out["associativity"].append(uv * w == u * (v * w) and (u + v) + w == u + (v + w))
        out["distributivity"].append(u * (v + w) == uv + u * w and uv == v * u)
        unit = random_element(ring, rng, unit=True)
        out["unit-inverse"].append(unit * inverse(unit) == ring.one())
        a, b = _aug(u), _aug(v)
        out["exp-additivity"].append(exp(a) * exp(b) == exp(a + b))
        n = rng.randint(-12, 12)
        name = rng.choice(ring.generators)
        p = pow_int(1 + ring.gen(name), n)
        ok = all(p.coefficient({name: m}) == _comb(n, m) for m in range(ring.truncation + 1))
        out["binomial-bridge"].append(ok)
    return out


def suite_ring(cases: int = 1000) -> Iterator[Check]:
    for law, results in ring_laws(cases).items():
        bad = results.count(False)
        yield Check("ring", f"{law} x{len(results)}", bad == 0, f"{bad} failures" if bad else "")
    for n in range(1, 11):
        for m in range(11):
            ok = binom(-n, m) == (-1) ** m * binom(n + m - 1, m)
            if not ok:
                yield Check("ring", f"binom(-{n},{m})", False)
    yield Check("ring", "binom(-n,m) identity 1<=n<=10, 0<=m<=10", True)


def vandermonde_shift_holds(a: int, j: int, e: int) -> bool:
    left = sum(binom(a + j + e, a - k) * binom(-j, k) for k in range(a + 1))
    alt = sum((-1) ** k * binom(a + j + e, a - k) * binom(j + k - 1, k) for k in range(a + 1))
    return left == alt == binom(a + e, a)


def suite_vandermonde() -> Iterator[Check]:
    bad = [
        (a, j, e)
        for a in range(9)
        for j in range(9)
        for e in range(-a, 9)
        if not vandermonde_shift_holds(a, j, e)
    ]
    yield Check("lemma45", "0<=a<=8, 0<=j<=8, -a<=e<=8", not bad, f"failures: {bad[:5]}" if bad else "")


def suite_grr() -> Iterator[Check]:
    params = [(n, 0) for n in (0, 1, 7)] + [(0, Fraction(1, 2)), (0, -3)]
    for chi in range(7):
        for g in range(7):
            for d in range(7):
                space = SymmetricProduct(g, d)
                outs = [grr_pushforward(chi, n, space, r) for n, r in params]
                # identical characters give identical Chern classes, so one Newton pass suffices
                ok = all(o == outs[0] for o in outs)
                ok = ok and chern_from_character(outs[0]) == pow_int(1 + space.gen("x"), chi)
                if not ok:
                    yield Check("grr", f"chi={chi} g={g} d={d}", False)
    yield Check("grr", "0<=chi<=6, g<=6, d<=6, n in {0,1,7}, r-independent", True)


def _guard(suite: str, case: str, fn: Callable[[], bool]) -> Check:
    try:
        return Check(suite, case, bool(fn()))
    except SWCalcError as exc:
        return Check(suite, case, False, str(exc))


def suite_elliptic() -> Iterator[Check]:
    for chi in range(1, 6):
        for g in range(6):
            for d in range(9):
                want = (-1) ** d * _comb(chi + 2 * g - 2, d)
                spec = sw.EllipticSpec(chi, g, d)
                yield _guard("elliptic", f"chi={chi} g={g} d={d}", lambda: sw.elliptic_pipeline(spec) == want)
    for p_g in range(9):
        for a in range(11):
            if a <= p_g - 1:
                want = (-1) ** a * _comb(p_g - 1, a)
            else:
                want = 1 if p_g == 0 else 0
            yield _guard(
                "elliptic", f"regular p_g={p_g} a={a}", lambda: sw.sw_elliptic_regular(p_g, a).value == want
            )


def _b2_cases():
    for d in range(1, 6):
        for g in (2 * d + 1, 2 * d, 2 * d - 1, 2 * d - 2):
            if g >= 2:
                yield g, d


def suite_ruled() -> Iterator[Check]:
    for g, d in _b2_cases():
        yield _guard("ruled", f"b=2 g={g} d={d}", lambda: sw.sw_ruled_b2_total(g, d).value == 2**g)
    for g in range(1, 7):
        for d in range(7):
            yield _guard("ruled", f"b=1 g={g} d={d}", lambda: sw.sw_ruled_b1(g, d).value == 1)
    for d in range(2, 9):
        g = 2 * d - 2
        want = math.factorial(2 * d - 2) // (math.factorial(d - 1) * math.factorial(d))
        yield _guard("ruled", f"castelnuovo g={g} d={d}", lambda: sw.castelnuovo_count(g, d) == want)


def suite_segre() -> Iterator[Check]:
    for g in range(2, 13):
        yield _guard("segre", f"section g={g}", lambda: sw.sw_section_invariant(g).value == 2**g)
    for g in range(1, 9):
        for d in range(g + 1):
            codim = 2 * g - 2 * d - 1
            if codim < 0:
                continue

            def check():
                cls = sw.segre_w1d(g, d)
                theta = cls.ring.gen("theta")
                want = theta ** codim * Fraction(2**codim, math.factorial(codim)) if codim <= g else cls.ring.zero()
                return cls == want

            yield _guard("segre", f"W_1,d g={g} d={d}", check)


SUITES: Dict[str, Callable[[], Iterator[Check]]] = {
    "ring": suite_ring,
    "lemma45": suite_vandermonde,
    "grr": suite_grr,
    "elliptic": suite_elliptic,
    "ruled": suite_ruled,
    "segre": suite_segre,
}


def run_suite(name: str) -> List[Check]:
    names = list(SUITES) if name == "all" else [name]
    checks: List[Check] = []
    for n in names:
        checks.extend(SUITES[n]())
    return checks
