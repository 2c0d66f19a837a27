"""Model spaces and their degree maps.

P(a) is projective space, Cd(g,d) the d-th symmetric product of a genus g
curve, Jac(g) the Jacobian. Products are written with an ``x``.
"""

from swcalc.spaces import Jacobian, ProjectiveSpace, SymmetricProduct, integrate, parse_space

P3 = ProjectiveSpace(3)
h = P3.gen("h")
print("P^3: integral of h^3 =", integrate(h**3, P3))
print("P^3: integral of (1+h)^4 =", integrate((1 + h) ** 4, P3), "(the Euler characteristic)")

C = SymmetricProduct(4, 3)
x, theta = C.gen("x"), C.gen("theta")
for k in range(4):
    print(f"Cd(4,3): theta^{k} x^{3 - k} ->", integrate(theta**k * x ** (3 - k), C))

J = Jacobian(3)
print("Jac(3): theta^3 =", integrate(J.gen("theta") ** 3, J))

# products factorize
S = parse_space("P(1)xCd(4,3)")
print(S, "generators:", S.ring.generators)
print("h * theta^2 * x =", integrate(S.gen("p1.h") * S.gen("p2.theta") ** 2 * S.gen("p2.x"), S))
