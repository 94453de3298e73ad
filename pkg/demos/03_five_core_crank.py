#!/usr/bin/env python3
"""The 5-core-crank and its lattice generating function.

Each partition carries a 5-residue diagram; the 5-core-crank reads it as
r1 + 2 r2 - 2 r3 - r4.  Summed over 5-cores, z^crank q^size is a theta-type
sum over a rank-4 lattice, which we check against a direct listing.
"""

from birank.identities import t_at_zeta, t_enumerated, t_series, verify_identity
from birank.partitions import conjugate, enumerate_five_cores, five_core_crank, residue_counts

for p in [(3,), (2, 1), (4, 2, 1), (5, 3, 1, 1)]:
    print(f"{'+'.join(map(str, p)):<10} residues {residue_counts(p)}  crank {five_core_crank(p):>3}"
          f"  conjugate crank {five_core_crank(conjugate(p)):>3}")

print("5-cores by size:", [len(enumerate_five_cores(n)) for n in range(12)])

lattice, listing = t_series(25), t_enumerated(25)
print("T(z, q) lattice sum equals the 5-core listing to O(q^25):", lattice.compare(listing) is None)
print("T(zeta, q) =", t_at_zeta(1, 6).render())

for name in ("t5-dissect", "tt-id", "fc-birank-vanish"):
    res = verify_identity(name)
    print(f"{name}: {res.result} ({len(res.checks)} checks, O(q^{res.precision}))")
