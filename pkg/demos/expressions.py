"""The small expression language used by ``swcalc eval``."""

from swcalc.expr import ParseError, evaluate, parse, to_source
from swcalc.spaces import SymmetricProduct, parse_space

src = "(1+x)^-2 * exp(-theta/(1+x))"
ast = parse(src)
print(ast)
print(to_source(ast))

C = SymmetricProduct(4, 3)
print(evaluate(src, C))
print("integrate(theta^2*x) =", evaluate("integrate(theta^2*x)", C))

# the elliptic invariant for chi=2, g=2, d=1, written out by hand
print(evaluate("integrate(degree((1+x)^-2 * exp(-theta/(1+x)), 1))", SymmetricProduct(2, 1)))

# the M0 piece for g=4, d=3 on P^1 x C_3
print(evaluate("integrate((p2.theta + 2*p1.h) * (p1.h + p2.x)^3)", parse_space("P(1)xCd(4,3)")))

for bad in ("1+", "x^y", "exp x"):
    try:
        parse(bad)
    except ParseError as err:
        print(f"{bad!r}: {err}")
