#!/usr/bin/env python3
"""Multipartitions with t-1 and t-3 components split into t equal classes.

For a prime t the generalized HL-multirank weights component k by k and
component r+1-k by -k.  The counts come from a convolution of per-component
tables, so even t = 11 with ten components is quick.
"""

import time

from birank.multistat import class_count, family_for, p_minus_r, quadratic_residue_class, verify_theorem

# the split is promised when 24n + 1 is not a square mod t; n = 5 never qualifies
for t, n in [(5, 4), (5, 5), (7, 4), (7, 5), (11, 3), (11, 5)]:
    fam = family_for("multipartition", t - 1)
    tab = class_count(fam, "ghl-multirank", n, t)
    tag = quadratic_residue_class(24 * n + 1, t)
    print(f"t = {t:>2}, n = {n}, 24n+1 {tag:<10} p_-{t - 1}({n}) = {p_minus_r(n, t - 1):>5}  classes {tab.counts}")

start = time.perf_counter()
for theorem, ts, max_n in [("5", (5, 7, 11), 40), ("6", (5, 7, 11), 15), ("7", (5, 7), 12)]:
    for t in ts:
        rep = verify_theorem(theorem, t=t, max_n=max_n)
        print(f"theorem {theorem} at t = {t:>2}: {len(rep.rows):>3} rows, pass = {rep.passed}")
print(f"({time.perf_counter() - start:.2f}s)")
