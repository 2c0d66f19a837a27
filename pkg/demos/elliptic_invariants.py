"""Seiberg-Witten invariants of elliptic surfaces.

Each value is computed twice: by integrating the obstruction class over the
moduli space and from a closed binomial formula. A disagreement raises.
"""

from swcalc import sw

print("regular elliptic surfaces, rows p_g = 0..4, columns a = 0..5")
for p_g in range(5):
    print(p_g, [int(sw.sw_elliptic_regular(p_g, a).value) for a in range(6)])

print()
print("elliptic over a genus g base, chi = 2")
for g in range(4):
    print(g, [int(sw.sw_elliptic(sw.EllipticSpec(2, g, d)).value) for d in range(6)])

res = sw.sw_elliptic(sw.EllipticSpec(3, 2, 4))
print()
print(res.to_json_dict())
