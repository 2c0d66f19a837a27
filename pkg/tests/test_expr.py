import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from swcalc import sw
from swcalc.expr import (
    Add,
    DegreePart,
    Div,
    Exp,
    Generator,
    Integrate,
    Inverse,
    Mul,
    Neg,
    ParseError,
    Pow,
    RationalLit,
    Sub,
    evaluate,
    lower,
    parse,
    to_source,
)
from swcalc.ring import NotInvertibleError, exp, pow_int
from swcalc.spaces import Jacobian, ProjectiveSpace, SymmetricProduct, parse_space

ONE = RationalLit(Fraction(1))
X, THETA = Generator("x"), Generator("theta")


def test_parse_tangent_expression():
    ast = lower(parse("(1+x)^-2 * exp(-theta/(1+x))"))
    assert ast == Mul(Pow(Add(ONE, X), -2), Exp(Mul(Neg(THETA), Inverse(Add(ONE, X)))))


def test_parse_keeps_division_until_lowered():
    assert parse("x/(1+x)") == Div(X, Add(ONE, X))


def test_parse_integrate():
    assert parse("integrate(theta^2 * x)") == Integrate(Mul(Pow(THETA, 2), X))


def test_parse_degree_and_rationals():
    assert parse("degree(3/2*x - 4, 1)") == DegreePart(
        Sub(Mul(RationalLit(Fraction(3, 2)), X), RationalLit(Fraction(4))), 1
    )


def test_unary_minus_folds_into_literals():
    assert parse("-3") == RationalLit(Fraction(-3))
    assert parse("--x") == Neg(Neg(X))


def test_precedence():
    assert parse("1 + 2*x^2") == Add(ONE, Mul(RationalLit(Fraction(2)), Pow(X, 2)))
    assert parse("x - theta - 1") == Sub(Sub(X, THETA), ONE)


@pytest.mark.parametrize(
    "src, offset",
    [("1+", 2), ("(x", 2), ("x^y", 2), ("exp x", 4), ("x $ 1", 2), ("degree(x)", 8), ("", 0), ("x)", 1)],
)
def test_parse_errors_are_located(src, offset):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert info.value.offset == offset
    assert str(offset) in str(info.value)


def test_parse_error_lists_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse("1+")
    assert info.value.expected


CORPUS = [
    "(1+x)^-2 * exp(-theta/(1+x))",
    "integrate(theta^2 * x)",
    "degree(exp(2*theta), 3)",
    "1/2 * x^2 - 3*theta + 7",
    "-(x + theta)^3",
    "integrate((1+h)^-3 * h^2)",
    "x / (1 - x) - -2",
    "p1.h * p2.x",
]


@pytest.mark.parametrize("src", CORPUS)
def test_roundtrip_corpus(src):
    ast = parse(src)
    assert parse(to_source(ast)) == ast
    assert to_source(parse(to_source(ast))) == to_source(ast)


_leaves = st.one_of(
    st.fractions(min_value=-9, max_value=9, max_denominator=5).map(RationalLit),
    st.sampled_from(["x", "theta", "h"]).map(Generator),
)
_trees = st.recursive(
    _leaves,
    lambda kids: st.one_of(
        # the parser folds negation into literals, so Neg never wraps one
        st.builds(Neg, kids.filter(lambda k: not isinstance(k, RationalLit))),
        st.builds(Add, kids, kids),
        st.builds(Sub, kids, kids),
        st.builds(Mul, kids, kids),
        st.builds(Div, kids, kids),
        st.builds(Pow, kids, st.integers(-4, 4)),
        st.builds(Exp, kids),
        st.builds(Integrate, kids),
        st.builds(DegreePart, kids, st.integers(0, 5)),
    ),
    max_leaves=12,
)


@given(_trees)
def test_roundtrip_random_trees(tree):
    assert parse(to_source(tree)) == tree


def test_evaluate_examples():
    assert evaluate("integrate(theta^2*x)", SymmetricProduct(4, 3)) == 12
    assert evaluate("integrate(exp(2*theta))", Jacobian(3)) == 8


def test_evaluate_division_by_non_unit():
    with pytest.raises(NotInvertibleError):
        evaluate("x/ x", SymmetricProduct(2, 2))


def test_evaluate_unknown_generator():
    from swcalc.ring import DomainError

    with pytest.raises(DomainError):
        evaluate("h", SymmetricProduct(2, 2))


def test_evaluate_numeric_arithmetic_stays_rational():
    v = evaluate("integrate(x^2) / 3 + 1/6", SymmetricProduct(1, 2))
    assert v == Fraction(1, 2)


def test_evaluate_classes_match_ring_api():
    c = SymmetricProduct(4, 3)
    x, t = c.gen("x"), c.gen("theta")
    assert evaluate("(1+x)^-2 * exp(-theta/(1+x))", c) == pow_int(1 + x, -2) * exp(-t / (1 + x))


def test_evaluate_on_product_space():
    space = parse_space("P(1)xCd(4,3)")
    assert evaluate("integrate(p1.h * p2.theta^2 * p2.x)", space) == 12


# expressions that spell out the SW pipelines, compared against the library routines

@pytest.mark.parametrize("pg, a", [(5, 2), (0, 3), (2, 3), (3, 1), (4, 4)])
def test_regular_elliptic_expression(pg, a):
    src = f"integrate(degree((1+h)^-{1 + pg} * (1+h)^{a + 1}, {a}))"
    assert evaluate(src, ProjectiveSpace(a)) == sw.sw_elliptic_regular(pg, a).value


@pytest.mark.parametrize("chi, g, d", [(1, 1, 1), (2, 2, 1), (3, 2, 4), (1, 4, 3), (5, 3, 6)])
def test_elliptic_expression(chi, g, d):
    src = f"integrate(degree((1+x)^{d + 1 - g - chi} * exp(-theta/(1+x)), {d}))"
    assert evaluate(src, SymmetricProduct(g, d)) == sw.sw_elliptic(sw.EllipticSpec(chi, g, d)).value


@pytest.mark.parametrize("g", [2, 4, 7])
def test_section_expression(g):
    assert evaluate(f"integrate(degree(exp(2*theta), {g}))", Jacobian(g)) == 2**g


def test_m0_expression_g4_d3():
    # N = 1: top Chern of p1^*T (x) p2^*E is c_1(E) + 2h, cut down by mu^3
    space = parse_space("P(1)xCd(4,3)")
    src = "integrate((p2.theta + 2*p1.h) * (p1.h + p2.x)^3)"
    assert evaluate(src, space) == sw.ruled_m0_contribution(4, 3) == 14


def test_random_evaluation_consistency():
    # a/b and a * b^-1 agree on units
    rng = random.Random(2)
    c = SymmetricProduct(3, 3)
    for _ in range(20):
        k = rng.randint(1, 5)
        assert evaluate(f"x/(1+{k}*theta)", c) == evaluate(f"x*(1+{k}*theta)^-1", c)
