from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birank.multistat import (
    STATISTICS,
    Family,
    Multipartition,
    class_count,
    class_count_bruteforce,
    enumerate_family,
    family_for,
    p_minus_r,
    quadratic_residue_class,
    stat_eval,
    verify_theorem,
)
from birank.partitions import (
    ONE_A,
    ONE_B,
    crank_ext,
    dyson_rank,
    enumerate_extended_partitions,
    enumerate_partitions,
    five_core_crank,
    weight_ext,
)

# Statistics spelled out from their definitions, independent of the layout tables.
ORACLE = {
    "hl-birank": lambda a, b: len(a) - len(b),
    "dyson-birank": lambda a, b: dyson_rank(a) + 2 * dyson_rank(b),
    "five-core-birank": lambda a, b: five_core_crank(a) + 2 * five_core_crank(b),
    "bicrank-1": lambda a, b: crank_ext(a) + crank_ext(b),
    "bicrank-2": lambda a, b: crank_ext(a) + 2 * crank_ext(b),
}
EXTENDED = {"bicrank-1", "bicrank-2"}


def oracle_counts(stat: str, n: int, t: int) -> list[int]:
    pool = enumerate_extended_partitions if stat in EXTENDED else enumerate_partitions
    counts = [0] * t
    for k in range(n + 1):
        for a, b in product(pool(k), pool(n - k)):
            w = weight_ext(a) * weight_ext(b)
            counts[ORACLE[stat](a, b) % t] += w
    return counts


def ghl_oracle(comps) -> int:
    r = len(comps)
    return sum(k * (len(comps[k - 1]) - len(comps[r - k])) for k in range(1, r // 2 + 1))


def test_statistic_examples():
    assert stat_eval("hl-birank", ((1, 1), (1,))) == 1
    assert stat_eval("dyson-birank", ((), (1, 1))) % 5 == 3
    assert stat_eval("five-core-birank", ((), (3,))) == 6
    assert stat_eval("bicrank-1", ((2,), (1,))) == 1
    assert stat_eval("bicrank-2", ((1,), ONE_A)) == 1
    assert stat_eval("ghl-multirank", ((), (), (1, 1), ())) == -4


def test_multipartition_weight_and_label():
    m = Multipartition(((1,), ONE_B), 2)
    assert m.weight == -1 and m.size == 2
    assert str(m) == "(1, 1b)"
    assert Multipartition(((), (2, 1)), 0).weight == 1


@pytest.mark.parametrize(
    "family,stat,n,t,expected",
    [
        ("bipartition", "hl-birank", 3, 5, [2, 2, 2, 2, 2]),
        ("bipartition", "dyson-birank", 2, 5, [1, 1, 1, 1, 1]),
        ("bipartition", "five-core-birank", 3, 5, [2, 2, 2, 2, 2]),
        ("extended-bipartition", "bicrank-1", 3, 5, [2, 2, 2, 2, 2]),
        ("extended-bipartition", "bicrank-2", 2, 5, [1, 1, 1, 1, 1]),
        ("bipartition", "dyson-birank", 13, 5, [358, 353, 353, 353, 353]),
    ],
)
def test_worked_class_tables(family, stat, n, t, expected):
    assert class_count(family, stat, n, t).counts == expected


def test_bicrank2_object_count():
    objs = list(enumerate_family(family_for("extended-bipartition"), 2))
    assert len(objs) == 13
    assert sum(m.weight for m in objs) == 5


def test_ghl_table_t7():
    tab = class_count("multipartition", "ghl-multirank", 2, 7, r=4)
    assert tab.counts == [2] * 7
    assert len(list(enumerate_family(family_for("multipartition", 4), 2))) == 14


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(ORACLE)), st.integers(0, 9), st.sampled_from([5, 7]))
def test_fast_count_matches_oracle(stat, n, t):
    fam = "extended-bipartition" if stat in EXTENDED else "bipartition"
    assert class_count(fam, stat, n, t).counts == oracle_counts(stat, n, t)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 5), st.sampled_from([2, 4, 6]), st.sampled_from([5, 7, 11]))
def test_ghl_fast_count_matches_oracle(n, r, t):
    counts = [0] * t
    for m in enumerate_family(family_for("multipartition", r), n):
        counts[ghl_oracle(m.components) % t] += 1
    assert class_count("multipartition", "ghl-multirank", n, t, r=r).counts == counts


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from(
        [
            ("multicrank-I", "extended-multipartition-I", 2),
            ("multicrank-I", "extended-multipartition-I", 4),
            ("multicrank-II", "extended-multipartition-II", 2),
            ("multicrank-II", "extended-multipartition-II", 4),
        ]
    ),
    st.integers(0, 5),
    st.sampled_from([5, 7]),
)
def test_multicrank_fast_matches_bruteforce(case, n, t):
    stat, fam, r = case
    assert class_count(fam, stat, n, t, r=r).counts == class_count_bruteforce(fam, stat, n, t, r=r).counts


def test_totals_are_colored_partition_counts():
    for fam, r in [("bipartition", None), ("extended-bipartition", None), ("multipartition", 4)]:
        f = family_for(fam, r)
        stat = {"bipartition": "hl-birank", "extended-bipartition": "bicrank-1", "multipartition": "ghl-multirank"}[fam]
        for n in range(12):
            assert class_count(f, stat, n, 5).total == p_minus_r(n, f.r)


def test_cyclotomic_sum_vanishes_iff_equal():
    eq = class_count("bipartition", "hl-birank", 3, 5)
    assert eq.all_equal() and not eq.cyclotomic_sum()
    bad = class_count("bipartition", "dyson-birank", 13, 5)
    assert not bad.all_equal() and bad.cyclotomic_sum()
    assert bad.total == 1770


def test_p_minus_r():
    assert p_minus_r(3, 2) == 10
    assert p_minus_r(13, 2) == 1770
    assert p_minus_r(3, 4) == 40 and 40 % 5 == 0


def test_quadratic_residue_classes():
    assert quadratic_residue_class(4, 5) == "residue"
    assert quadratic_residue_class(3, 5) == "nonresidue"
    assert quadratic_residue_class(0, 5) == "zero"
    assert quadratic_residue_class(-1, 5) == "residue"


def test_families():
    assert family_for("bipartition") == Family(0, 2)
    assert family_for("extended-bipartition") == Family(2, 0)
    assert family_for("extended-multipartition-I", 6) == Family(3, 3)
    assert family_for("extended-multipartition-II", 6) == Family(2, 4)
    with pytest.raises(ValueError):
        family_for("extended-multipartition-I", 3)
    with pytest.raises(ValueError):
        family_for("nonsense")


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        class_count("bipartition", "bicrank-1", 3, 5)
    with pytest.raises(ValueError):
        class_count("bipartition", "hl-birank", 3, 1)


def test_every_statistic_registered():
    assert set(ORACLE) | {"ghl-multirank", "multicrank-I", "multicrank-II"} <= set(STATISTICS)


@pytest.mark.parametrize(
    "theorem,t,max_n",
    [("1", None, 40), ("2", None, 40), ("3", None, 25), ("4", None, 25), ("5ii", 5, 60), ("6i", 7, 12), ("7i", 5, 10)],
)
def test_theorems_hold(theorem, t, max_n):
    rep = verify_theorem(theorem, t=t, max_n=max_n)
    assert rep.applicable and rep.rows and rep.passed, rep.violations


def test_theorem2_extension_fails_at_13():
    rep = verify_theorem("2", max_n=13, include_residues=(3,))
    assert not rep.passed
    [bad] = rep.violations
    assert (bad.n, bad.counts) == (13, [358, 353, 353, 353, 353])
    assert not bad.qualifying


def test_theorem_5ii_congruences_at_five():
    rep = verify_theorem("5ii", t=5, max_n=60)
    assert {r.n % 5 for r in rep.rows} == {2, 3, 4}
    assert all(r.counts[0] % 5 == 0 for r in rep.rows)


def test_theorem_not_applicable():
    rep = verify_theorem("6i", t=3, max_n=5)
    assert not rep.applicable and not rep.passed
    rep = verify_theorem("1", t=7, max_n=5)
    assert not rep.applicable


def test_unknown_theorem():
    with pytest.raises(ValueError):
        verify_theorem("99")


def test_threads_do_not_change_rows():
    a = verify_theorem("1", max_n=30, threads=1)
    b = verify_theorem("1", max_n=30, threads=4)
    assert a.to_json() == b.to_json() and a.to_tsv() == b.to_tsv()
