"""The permutation criterion: L_k permutes P^1(F_p) exactly when
gcd((p+1)^2 - a_p^2, k) = 1, with a_p the Frobenius trace.

Run:  python demos/02_trace_criterion.py
"""

from lattes_lab import CATALOG_BY_NAME, count_points, permutes, scan, strategy_primes
from lattes_lab.exceptionality import render_scan_markdown

E = CATALOG_BY_NAME["d4"].curve  # y^2 = x^3 + x, CM by Z[i]

print("Counting points gives the trace: |E(F_p)| = p + 1 - a_p.")
for p in (5, 7, 13):
    order, ap = count_points(E, p)
    print(f"  p={p}: |E(F_p)| = {order}, a_p = {ap}")
print()

print("Both roads to the same verdict (gcd criterion vs brute-force table):")
for p in (11, 13):
    v = permutes(E, 3, p, method="both")
    print(f"  p={p}: gcd(A_p, 3) = {v.gcd_value} -> permutes: {v.permutes}")
print()

print("A scan reproduces the reference permutation-behavior table for k = 3:")
rows = scan(E, 3, [5, 7, 11, 13, 19, 23, 29, 31])
print(render_scan_markdown(rows, 3, -4))

print("Prime-selection strategies generate permutation primes on demand.")
print("  D = -4, k = 3 (p = 3 mod 4, p = 1 mod 3):", strategy_primes(-4, 3, 6))
print("  D = -11, k = 3 (p = 1 mod 3, p = 2 mod 11):", strategy_primes(-11, 3, 6))
print("  D = -3,  k = 2 (split primes with odd trace):", strategy_primes(-3, 2, 6))
print("Every emitted prime is re-checked against the criterion before it is returned.")
