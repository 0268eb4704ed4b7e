"""Build Lattes maps from division polynomials and watch them act on P^1(F_p).

Run:  python demos/01_lattes_maps.py
"""

from lattes_lab import (
    CATALOG_BY_NAME,
    Curve,
    division_poly,
    format_ratmap,
    lattes_map,
)
from lattes_lab.polyrat import format_poly

print("A curve is a long Weierstrass model with exact rational coefficients.")
E = Curve(0, 0, 0, 1, 0)  # y^2 = x^3 + x
print(f"E: y^2 = x^3 + x  has j = {E.j} and discriminant {E.discriminant}")
print()

print("Division polynomials (x-parts).  psi_3 of a short model y^2 = x^3+Ax+B")
print("is 3x^4 + 6Ax^2 + 12Bx - A^2:")
print("  psi_3 =", format_poly(division_poly(E, 3)))
print()

print("The k-th Lattes map satisfies L_k(x(P)) = x([k]P).  For k = 3:")
L3 = lattes_map(E, 3)
print("  L_3 =", format_ratmap(L3))
print("  numerator degree", L3.num.degree, "= k^2; denominator degree", L3.den.degree)
print()

print("Reduced mod 7, L_3 visits every point of P^1(F_7) exactly once:")
red = L3.reduce_mod_p(7)
ok, table = red.is_bijection()
print("  x      :", list(range(7)) + ["inf"])
print("  L_3(x) :", table, " bijection:", ok)
print()

print("Composition mirrors multiplication: L_6 = L_2 o L_3 = L_3 o L_2.")
d11 = CATALOG_BY_NAME["d11"].curve
L2, L3, L6 = (lattes_map(d11, k) for k in (2, 3, 6))
print("  on", d11, ":", L2.compose(L3) == L6 == L3.compose(L2))
print()

print("Over F_5 the same L_6 collapses the whole line onto two values:")
table5 = lattes_map(d11, 6).reduce_mod_p(5).value_table()
print("  L_6 on P^1(F_5):", table5)
print("(three points land on 3, three at infinity: the map is far from bijective)")
