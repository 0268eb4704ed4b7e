"""Imaginary quadratic orders, the Eisenstein integers, and power residue
symbols: the arithmetic that drives the CM analysis.

Run:  python demos/03_residue_symbols.py
"""

from lattes_lab import (
    CATALOG_BY_NAME,
    cornacchia,
    count_points,
    deuring_consistency,
    ed_count_check,
    eis,
    power_residue_symbol,
    quad_order,
    sextic_reciprocity_check,
    splitting_type,
)
from lattes_lab.eisenstein import e_primary_associate, lemma_ab_witness, primary_associate
from lattes_lab.quadorder import format_quadint

print("Primes behave in an order of discriminant D per the Kronecker symbol:")
for p in (3, 5, 7, 11):
    print(f"  D=-11, p={p}: {splitting_type(-11, p)}")
theta = quad_order(-11).omega
print(f"  the generator w of D=-11 has norm {theta.norm()}, so 3 splits")
print()

print("Cornacchia solves the norm equation 4p = t^2 + |D| s^2 at split primes:")
for D, p in ((-4, 13), (-11, 3), (-11, 23)):
    print(f"  D={D}, p={p}: {cornacchia(D, p)}")
print()

print("Deuring consistency ties the solution to the point count:")
d11 = CATALOG_BY_NAME["d11"].curve
for p in (7, 23, 29):
    _, ap = count_points(d11, p)
    print(f"  p={p}: a_p={ap}, consistent: {deuring_consistency(d11, -11, p)}")
print()

print("In Z[w] (w a cube root of unity), 13 = lam * conj(lam), lam = -1+3w.")
lam = eis(-1, 3)
print(f"  N({format_quadint(lam)}) = {lam.norm()}, primary: {primary_associate(lam) == lam}")
print(f"  E-primary as well: {e_primary_associate(lam) == lam}")
print()

print("Sextic residue symbols are exact sixth roots of unity:")
for alpha in (eis(5), eis(0, 5)):
    val = power_residue_symbol(alpha, lam, 6)
    print(f"  ({format_quadint(alpha)} / {format_quadint(lam)})_6 = {val}")
print("and the sextic reciprocity law holds for E-primary pairs:")
print("  check(lam, conj(lam)):", sextic_reciprocity_check(lam, eis(-4, -3)))
print()

print("Witness residues mod ell sort primes by whether (ell/pi)_6 is real:")
alpha, beta = lemma_ab_witness(13)
print(f"  ell=13: alpha = {format_quadint(alpha)}, beta = {format_quadint(beta)}")
print()

print("The sextic symbol computes |E_d(F_p)| for y^2 = x^3 + d exactly:")
pi7 = eis(2, 3)  # primary, norm 7
print("  d=2, p=7:", ed_count_check(2, pi7))
