"""Ruled surfaces over a genus g curve.

For b = 2 the moduli space has two pieces. The first is a projective bundle
over C_d, the second a finite set of points counted by Castelnuovo's formula.
Together they give 2^g.
"""

from swcalc import sw
from swcalc.spaces import InapplicableCaseError

print(" g  d   M0   M1  total")
for g, d in [(3, 1), (2, 2), (4, 2), (4, 3), (6, 4)]:
    res = sw.sw_ruled_b2_total(g, d)
    print(f"{g:2d} {d:2d} {int(res.breakdown['M0']):4d} {int(res.breakdown['M1']):4d} {int(res.value):6d}")

print("b = 1 invariants:", {(g, d): int(sw.sw_ruled_b1(g, d).value) for g in (2, 3) for d in (0, 1, 2)})

spec = sw.RuledSpec(4, -1, 2)
print("expected dimensions (SW, Hilbert) for", spec, "->", sw.expected_dims(spec))

# outside the two-piece range
try:
    sw.sw_ruled_b2_total(9, 2)
except InapplicableCaseError as err:
    print("g=9, d=2:", err)
