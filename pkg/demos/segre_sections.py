"""Segre classes of W_{1,d} inside the Jacobian and the section invariant."""

from swcalc import sw
from swcalc.spaces import Jacobian, integrate

for g in range(1, 6):
    row = []
    for d in range(g):
        s = sw.segre_w1d(g, d)
        row.append(str(s))
    print(f"g={g}:", " | ".join(row))

J = Jacobian(5)
print("degree of the top class on Jac(5):", integrate(sw.segre_w1d(5, 2), J))
print("section invariants:", [int(sw.sw_section_invariant(g).value) for g in range(2, 9)])
