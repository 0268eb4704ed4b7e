"""Where the torsion criterion fails, and what the Galois viewpoint says.

A rational k-torsion x-coordinate always kills exceptionality of L_k.  The
converse holds for most CM curves, but not all: with CM by discriminant
-11 and 6 | k, splitting of 3 forces 3 | A_p at split primes while inert
primes force 2 | A_p, so gcd(A_p, k) > 1 everywhere despite the curve
having no rational torsion x at all.  Two non-CM families share the same
behavior through a cubic-residue dichotomy.

Run:  python demos/04_obstructions_and_densities.py
"""

from lattes_lab import (
    CATALOG_BY_NAME,
    cm_density_full,
    cm_density_subgroup,
    diag_witness,
    empirical_density,
    exceptionality_report,
    k2_verdict,
    torsion_x_rational,
    verify_d11_obstruction,
    verify_noncm_counterexample,
)
from lattes_lab.galois import Mat2Zm, SubgroupSpec

d11 = CATALOG_BY_NAME["d11"].curve
print("The curve y^2 = x^3 - 264x + 1694 (CM by discriminant -11):")
print("  rational 2-torsion x:", torsion_x_rational(d11, 2) or "none")
print("  rational 3-torsion x:", torsion_x_rational(d11, 3) or "none")
rep = verify_d11_obstruction(d11, 3000)
print(f"  obstruction scan to 3000: {rep.checked} primes, violations: {list(rep.violations)}")
r = exceptionality_report(d11, 6, 2000)
print(f"  verdict for k=6: {r.verdict} (tag {r.obstruction}), witnesses: {len(r.witnesses)}")
r = exceptionality_report(d11, 7, 2000)
print(f"  verdict for k=7: {r.verdict}, witnesses up to 2000: {len(r.witnesses)}")
print()

print("Non-CM families with the same 6 | k obstruction:")
for family in ("E", "F"):
    rep = verify_noncm_counterexample(family, 1, 3000)
    print(f"  family {family}: {rep.checked} primes, violations: {list(rep.violations)}")
print()

print("For k = 2 the verdict is complete: L_2 is exceptional exactly when")
print("the 2-division cubic has no rational root, and the Galois group of")
print("its splitting field predicts the density of permutation primes.")
for name in ("k2-s3", "k2-c3", "d12"):
    curve = CATALOG_BY_NAME[name].curve
    exceptional, group, predicted = k2_verdict(curve)
    print(f"  {name}: exceptional={exceptional}, group={group}, predicted density={predicted}")
print()

print("Those densities are |C_m| / |G_m| for the matrix condition")
print("det(I-A)det(I+A) invertible; exact enumeration for m = 2 gives:")
print("  full GL_2(Z/2):", cm_density_full(2))
rot = Mat2Zm(2, 0, 1, 1, 1)
print("  order-3 subgroup:", cm_density_subgroup(SubgroupSpec(2, (rot,))))
print("  a diagonal witness in C_35:", diag_witness(2, 35))
print()

print("Empirical densities over primes up to 20000 approach the predictions:")
for name, target in (("k2-s3", "1/3"), ("k2-c3", "2/3")):
    d = empirical_density(CATALOG_BY_NAME[name].curve, 2, 20000)
    print(f"  {name}: {float(d):.4f} (target {target})")
