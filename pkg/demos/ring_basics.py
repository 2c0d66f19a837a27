"""Truncated graded rings: exact arithmetic on cohomology classes.

Every generator has degree 1. Anything above the truncation degree is
dropped as soon as it appears, so series like 1/(1+x) terminate.
"""

from fractions import Fraction

from swcalc.ring import GradedRing, degree_part, exp, inverse, pow_int

R = GradedRing("demo", ("x", "theta"), 3)
x, t = R.gen("x"), R.gen("theta")

print("(1+x)^2         =", (1 + x) ** 2)
print("1/(1+x)         =", inverse(1 + x))
print("(1+x)^-3        =", pow_int(1 + x, -3))
print("exp(x + theta)  =", exp(x + t))
print("exp(x)exp(theta) == exp(x+theta):", exp(x) * exp(t) == exp(x + t))

# coefficients stay exact
u = exp(x / 3)
print("coeff of x^3 in exp(x/3):", u.coefficient({"x": 3}))
print("degree-2 part of (1+x+theta)^-1:", degree_part(inverse(1 + x + t), 2))

# non-units cannot be inverted
try:
    inverse(x)
except Exception as err:
    print("inverse(x):", type(err).__name__, "-", err)

print(Fraction(1, 3) * x * t - t / 2)
