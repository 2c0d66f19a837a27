"""Pushing a line bundle forward from C x C_d.

The character of the pushforward comes out as chi * e^x whatever the
auxiliary integers are, and Newton's identities turn it back into the
total Chern class (1+x)^chi.
"""

from fractions import Fraction

from swcalc.kunneth import KunnethElement, chern_from_character, exp_delta, grr_pushforward
from swcalc.ring import pow_int
from swcalc.spaces import SymmetricProduct

C = SymmetricProduct(2, 4)
x = C.gen("x")

# the incidence class relations
d11 = KunnethElement.delta11(C)
sq = d11 * d11
print("delta11^2 = [pt] (x)", sq.slot_pt)

e = exp_delta(3, C)
print("e^delta, n=3:")
print("  1 (x)", e.slot_one)
print("  [pt] (x)", e.slot_pt)
print("  delta11 (x)", e.slot_delta)

for chi in (0, 1, 3):
    ch = grr_pushforward(chi, 5, C, r=Fraction(1, 2))
    c = chern_from_character(ch)
    print(f"chi={chi}: ch = {ch}")
    print(f"        c  = {c}   matches (1+x)^chi: {c == pow_int(1 + x, chi)}")

# changing n and r leaves the answer alone
print(len({grr_pushforward(2, n, C, r) for n in (0, 1, 7) for r in (0, -3, Fraction(2, 3))}), "distinct result(s)")
