#!/usr/bin/env python3
"""Splitting bipartitions into five equal classes, and where that stops working.

Walks through the small tables for the birank statistics, then shows the
Dyson-birank split failing at n = 13 once we leave the residues where it is
guaranteed.
"""

from birank.multistat import class_count, enumerate_family, family_for, stat_eval, verify_theorem

LINE = "-" * 60


def show_table(stat: str, family: str, n: int, t: int = 5, r=None) -> None:
    fam = family_for(family, r)
    print(LINE)
    print(f"{stat} on {fam.label}, n = {n}, mod {t}")
    for m in enumerate_family(fam, n):
        v = stat_eval(stat, m)
        w = "" if m.weight == 1 else "   weight -1"
        print(f"  {str(m):<22} {v:>4}  = {v % t} mod {t}{w}")
    print(f"  classes: {class_count(fam, stat, n, t).counts}")


show_table("hl-birank", "bipartition", 3)
show_table("dyson-birank", "bipartition", 2)
show_table("bicrank-2", "extended-bipartition", 2)

print(LINE)
print("Dyson-birank, n = 5k+2 and 5k+4 up to 40:")
rep = verify_theorem("2", max_n=40)
print(f"  {len(rep.rows)} values of n checked, all equal: {rep.passed}")

print("Dyson-birank at n = 13 (residue 3 is not covered):")
tab = class_count("bipartition", "dyson-birank", 13, 5)
print(f"  classes {tab.counts}, total {tab.total}")
print(f"  sum of counts[m] * zeta^m = {tab.cyclotomic_sum().render('zeta')}")
