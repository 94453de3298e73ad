#!/usr/bin/env python3
"""Rank and crank generating functions at a fifth root of unity.

Setting z = zeta_5 in f(z, q) or F(z, q) gives a series over Z[zeta_5].  Its
5-dissection is where the mod-5 congruences live: a residue class that
dissects to zero means all five counts agree there.
"""

from birank.identities import build_series, dissection_report, verify_identity
from birank.qseries import dissect

PREC = 60

print("f(zeta, q) to O(q^8):")
print("  " + build_series("f-zeta", 8).render())

for name, meaning in [
    ("f-zeta", "Dyson rank"),
    ("F-zeta", "crank of extended partitions"),
    ("hl-genfunc-at-zeta", "HL-birank"),
    ("f-zeta-sq-product", "Dyson-birank"),
    ("F-zeta-squared", "bicrank-1"),
    ("F-zeta-F-zeta2", "bicrank-2"),
]:
    parts = dissection_report(name, 5, PREC)
    zero = [r for r, s in enumerate(parts) if s.is_zero()]
    print(f"{meaning:<30} residues that vanish to O(q^{PREC}): {zero}")

# the Dyson-birank residue 3 is not zero, but it is 5 phi(q) psi(q)
s = build_series("f-zeta-sq-product", PREC)
phi, psi = build_series("phi", PREC // 5 + 1), build_series("psi", PREC // 5 + 1)
print("residue 3 of f(zeta)f(zeta^2) equals 5 phi psi:", dissect(s, 3, 5).compare(phi * psi * 5) is None)

for name in ("rank-dissection", "crank-dissection"):
    res = verify_identity(name, PREC)
    print(f"{name}: {res.result}, verified to O(q^{res.precision})")
