"""Multipartition families, composite statistics and residue-class counts.

Every composite statistic here is a linear combination of per-component
statistics, ``sum_k c_k * s_k(pi_k)``.  Class counts are exact: each
component contributes a table of weighted residue counts per size, built by
enumerating partitions, and the tables are combined over all ways of
splitting n between components.  :func:`enumerate_family` walks the tuples
one by one and is used to cross-check the fast path.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence

from .exactnum import CycInt, is_prime
from .partitions import (
    ExtendedPartition,
    Partition,
    crank_ext,
    dyson_rank,
    enumerate_extended_partitions,
    enumerate_partitions,
    five_core_crank,
    format_partition,
    size_ext,
    weight_ext,
)
from .qseries import euler_E

__all__ = [
    "Family",
    "Multipartition",
    "ClassTable",
    "STATISTICS",
    "family_for",
    "stat_eval",
    "enumerate_family",
    "class_count",
    "class_count_bruteforce",
    "p_minus_r",
    "quadratic_residue_class",
    "TheoremRow",
    "TheoremReport",
    "verify_theorem",
    "THEOREMS",
]


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class Family:
    """Tuples whose first ``extended`` entries are extended partitions."""

    extended: int
    ordinary: int

    def __post_init__(self) -> None:
        if self.extended < 0 or self.ordinary < 0 or self.extended + self.ordinary < 1:
            raise ValueError(f"bad family shape {self.extended}, {self.ordinary}")

    @property
    def r(self) -> int:
        return self.extended + self.ordinary

    @property
    def label(self) -> str:
        parts = []
        if self.extended:
            parts.append("E" if self.extended == 1 else f"E^{self.extended}")
        if self.ordinary:
            parts.append("P" if self.ordinary == 1 else f"P^{self.ordinary}")
        return "x".join(parts)

    def is_extended(self, k: int) -> bool:
        return k < self.extended


def family_for(name: str, r: Optional[int] = None) -> Family:
    """Named family; ``r`` is the component count where the name needs one."""
    fixed = {
        "partition": Family(0, 1),
        "extended-partition": Family(1, 0),
        "bipartition": Family(0, 2),
        "extended-bipartition": Family(2, 0),
    }
    if name in fixed:
        return fixed[name]
    if r is None:
        raise ValueError(f"family {name!r} needs a component count r")
    if name == "multipartition":
        return Family(0, r)
    if name == "extended-multipartition-I":
        if r % 2:
            raise ValueError("extended-multipartition-I needs even r")
        return Family(r // 2, r // 2)
    if name == "extended-multipartition-II":
        if r < 2:
            raise ValueError("extended-multipartition-II needs r >= 2")
        return Family(2, r - 2)
    raise ValueError(f"unknown family {name!r}")


@dataclass(frozen=True)
class Multipartition:
    components: tuple
    extended: int = 0

    @property
    def family(self) -> Family:
        return Family(self.extended, len(self.components) - self.extended)

    @property
    def size(self) -> int:
        return sum(size_ext(p) for p in self.components)

    @property
    def weight(self) -> int:
        w = 1
        for p in self.components[: self.extended]:
            w *= weight_ext(p)
        return w

    def __str__(self) -> str:
        return "(" + ", ".join(format_partition(p) for p in self.components) + ")"


# ---------------------------------------------------------------------------
# statistics

_COMPONENT_STATS: dict[str, Callable[[ExtendedPartition], int]] = {
    "parts": len,
    "rank": dyson_rank,
    "crank": crank_ext,
    "five-core-crank": five_core_crank,
}


@dataclass(frozen=True)
class Statistic:
    name: str
    # r -> ((component statistic, coefficient) per component)
    layout: Callable[[int], Sequence[tuple[Optional[str], int]]]
    # family shape check: r -> required number of extended components, or None
    shape: Callable[[Family], bool]
    default_family: str
    description: str = ""


def _pair_layout(first: str, a: int, second: str, b: int):
    def layout(r: int):
        if r != 2:
            raise ValueError("bipartition statistic needs exactly 2 components")
        return ((first, a), (second, b))

    return layout


def _ghl_layout(r: int):
    if r % 2:
        raise ValueError("gHL-multirank needs an even number of components")
    coef = [0] * r
    for k in range(1, r // 2 + 1):
        coef[k - 1] += k
        coef[r - k] -= k
    return tuple(("parts", c) for c in coef)


def _mc1_layout(r: int):
    if r % 2:
        raise ValueError("multicrank-I needs an even number of components")
    h = r // 2
    return tuple(("crank", k) for k in range(1, h + 1)) + ((None, 0),) * h


def _mc2_layout(r: int):
    if r < 2 or r % 2:
        raise ValueError("multicrank-II needs an even number r >= 2 of components")
    coef = [0] * r
    # components 3..r are paired k <-> r-k+3 for k = 3..(r+2)/2
    for k in range(3, (r + 2) // 2 + 1):
        coef[k - 1] += k
        coef[r - k + 2] -= k
    return (("crank", 1), ("crank", 2)) + tuple(("parts", c) for c in coef[2:])


def _single(name: str):
    return lambda r: ((name, 1),) if r == 1 else _bad_r(r)


def _bad_r(r: int):
    raise ValueError(f"single-partition statistic used on {r} components")


STATISTICS: dict[str, Statistic] = {
    s.name: s
    for s in [
        Statistic("rank", _single("rank"), lambda f: f == Family(0, 1), "partition"),
        Statistic("crank", _single("crank"), lambda f: f.r == 1, "partition"),
        Statistic(
            "five-core-crank", _single("five-core-crank"), lambda f: f == Family(0, 1), "partition"
        ),
        Statistic(
            "hl-birank", _pair_layout("parts", 1, "parts", -1), lambda f: f == Family(0, 2), "bipartition"
        ),
        Statistic(
            "dyson-birank", _pair_layout("rank", 1, "rank", 2), lambda f: f == Family(0, 2), "bipartition"
        ),
        Statistic(
            "five-core-birank",
            _pair_layout("five-core-crank", 1, "five-core-crank", 2),
            lambda f: f == Family(0, 2),
            "bipartition",
        ),
        Statistic(
            "bicrank-1", _pair_layout("crank", 1, "crank", 1), lambda f: f == Family(2, 0), "extended-bipartition"
        ),
        Statistic(
            "bicrank-2", _pair_layout("crank", 1, "crank", 2), lambda f: f == Family(2, 0), "extended-bipartition"
        ),
        Statistic(
            "ghl-multirank", _ghl_layout, lambda f: f.extended == 0 and f.r % 2 == 0, "multipartition"
        ),
        Statistic(
            "multicrank-I",
            _mc1_layout,
            lambda f: f.r % 2 == 0 and f.extended == f.ordinary,
            "extended-multipartition-I",
        ),
        Statistic(
            "multicrank-II",
            _mc2_layout,
            lambda f: f.r % 2 == 0 and f.extended == 2,
            "extended-multipartition-II",
        ),
    ]
}


def _get_stat(name: str) -> Statistic:
    try:
        return STATISTICS[name]
    except KeyError:
        raise ValueError(f"unknown statistic {name!r}; choose from {sorted(STATISTICS)}") from None


def _check_shape(stat: Statistic, fam: Family) -> Sequence[tuple[Optional[str], int]]:
    if not stat.shape(fam):
        raise ValueError(f"statistic {stat.name} is not defined on family {fam.label}")
    return stat.layout(fam.r)


def stat_eval(stat: str, m: Multipartition | Sequence) -> int:
    """Value of a named statistic on a (possibly extended) multipartition.

    A plain sequence of partitions is taken as an ordinary multipartition,
    except for the bicrank statistics where both components are extended.
    """
    s = _get_stat(stat)
    if not isinstance(m, Multipartition):
        comps = tuple(m)
        if s.default_family == "extended-bipartition":
            m = Multipartition(comps, 2)
        elif s.name == "crank" and len(comps) == 1 and not isinstance(comps[0], tuple):
            m = Multipartition(comps, 1)
        else:
            m = Multipartition(comps, 0)
    layout = _check_shape(s, m.family)
    total = 0
    for (name, c), p in zip(layout, m.components):
        if name is not None and c:
            total += c * _COMPONENT_STATS[name](p)
    return total


# ---------------------------------------------------------------------------
# enumeration and class counting


def _component_objects(extended: bool, n: int):
    return enumerate_extended_partitions(n) if extended else enumerate_partitions(n)


def enumerate_family(fam: Family, n: int) -> Iterator[Multipartition]:
    """Every tuple in the family of total size n, deterministic order."""
    r = fam.r
    for sizes in _compositions(n, r):
        pools = [_component_objects(fam.is_extended(k), sizes[k]) for k in range(r)]
        for comps in itertools.product(*pools):
            yield Multipartition(tuple(comps), fam.extended)


def _compositions(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of n into r parts; first component size varies slowest."""
    if r == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, r - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _component_table(extended: bool, stat: Optional[str], coef: int, t: int, size: int) -> tuple[int, ...]:
    """Weighted counts of coef*stat(pi) mod t over components of one size."""
    counts = [0] * t
    f = _COMPONENT_STATS[stat] if stat is not None else None
    for p in _component_objects(extended, size):
        w = weight_ext(p) if extended else 1
        v = coef * f(p) if (f is not None and coef) else 0
        counts[v % t] += w
    return tuple(counts)


@dataclass
class ClassTable:
    """Weighted residue-class counts of a statistic over a family at size n."""

    statistic: str
    family: str
    t: int
    n: int
    counts: list[int]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def all_equal(self) -> bool:
        return len(set(self.counts)) == 1

    def cyclotomic_sum(self) -> CycInt:
        """sum_m counts[m] zeta_t^m; zero exactly when all classes are equal."""
        return CycInt.from_terms(self.t, enumerate(self.counts))

    def as_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "family": self.family,
            "t": self.t,
            "n": self.n,
            "counts": list(self.counts),
            "total": self.total,
        }


def class_count(
    family: Family | str, stat: str, n: int, t: int, r: Optional[int] = None
) -> ClassTable:
    """Exact weighted residue-class table of ``stat`` mod t over the family at size n."""
    if t < 2:
        raise ValueError("modulus must be >= 2")
    if n < 0:
        raise ValueError("n must be >= 0")
    s = _get_stat(stat)
    fam = family_for(family, r) if isinstance(family, str) else family
    layout = _check_shape(s, fam)
    # state[size][residue]
    state = [[0] * t for _ in range(n + 1)]
    state[0][0] = 1
    for k, (name, coef) in enumerate(layout):
        ext = fam.is_extended(k)
        nxt = [[0] * t for _ in range(n + 1)]
        for a in range(n + 1):
            row = state[a]
            if not any(row):
                continue
            for b in range(n + 1 - a):
                tab = _component_table(ext, name, coef % t if name else 0, t, b)
                out = nxt[a + b]
                for i, x in enumerate(row):
                    if not x:
                        continue
                    for j, y in enumerate(tab):
                        if y:
                            out[(i + j) % t] += x * y
        state = nxt
    return ClassTable(stat, fam.label, t, n, state[n])


def class_count_bruteforce(family: Family | str, stat: str, n: int, t: int, r: Optional[int] = None) -> ClassTable:
    """Same table as :func:`class_count`, by walking every tuple."""
    fam = family_for(family, r) if isinstance(family, str) else family
    counts = [0] * t
    for m in enumerate_family(fam, n):
        counts[stat_eval(stat, m) % t] += m.weight
    return ClassTable(stat, fam.label, t, n, counts)


@lru_cache(maxsize=None)
def _inverse_euler_power(r: int, prec: int):
    return euler_E(prec) ** (-r)


def p_minus_r(n: int, r: int) -> int:
    """Number of r-colored partitions of n: coefficient of q^n in 1/E(q)^r."""
    if n < 0 or r < 0:
        raise ValueError("n and r must be >= 0")
    if r == 0:
        return 1 if n == 0 else 0
    prec = max(8, 1 << n.bit_length())  # reuse cached expansions
    return int(_inverse_euler_power(r, prec + 1)[n])


def quadratic_residue_class(a: int, t: int) -> str:
    """'zero', 'residue' or 'nonresidue' for a mod the odd prime t."""
    if t < 3 or not is_prime(t):
        raise ValueError("modulus must be an odd prime")
    a %= t
    if a == 0:
        return "zero"
    return "residue" if pow(a, (t - 1) // 2, t) == 1 else "nonresidue"


# ---------------------------------------------------------------------------
# theorem harness


@dataclass
class TheoremRow:
    theorem: str
    t: int
    n: int
    counts: list[int]
    passed: bool
    qualifying: bool = True

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "t": self.t,
            "n": self.n,
            "counts": list(self.counts),
            "pass": self.passed,
            "qualifying": self.qualifying,
        }


@dataclass
class TheoremReport:
    theorem: str
    t: int
    rows: list[TheoremRow] = field(default_factory=list)
    applicable: bool = True
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.applicable and all(r.passed for r in self.rows)

    @property
    def violations(self) -> list[TheoremRow]:
        return [r for r in self.rows if not r.passed]

    def to_json(self) -> str:
        return json.dumps([r.as_dict() for r in self.rows])

    def to_tsv(self) -> str:
        lines = ["theorem\tt\tn\tresidue\tcount\tpass"]
        for row in self.rows:
            for m, c in enumerate(row.counts):
                lines.append(f"{row.theorem}\t{row.t}\t{row.n}\t{m}\t{c}\t{int(row.passed)}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class _TheoremSpec:
    kind: str  # "classes" or "divisible"
    statistic: Optional[str]
    family: Callable[[int], Family]
    condition: Callable[[int, int], bool]
    fixed_t: Optional[int] = None
    component_count: Callable[[int], int] = lambda t: 0


def _res_mod5(*residues: int):
    return lambda n, t: n % 5 in residues


def _nonres(linear: int):
    return lambda n, t: quadratic_residue_class(linear * n + 1, t) == "nonresidue"


def _not_res(linear: int):
    return lambda n, t: quadratic_residue_class(linear * n + 1, t) != "residue"


THEOREMS: dict[str, _TheoremSpec] = {
    "1": _TheoremSpec("classes", "hl-birank", lambda t: Family(0, 2), _res_mod5(2, 3, 4), 5),
    "2": _TheoremSpec("classes", "dyson-birank", lambda t: Family(0, 2), _res_mod5(2, 4), 5),
    "3": _TheoremSpec("classes", "five-core-birank", lambda t: Family(0, 2), _res_mod5(2, 3, 4), 5),
    "4i": _TheoremSpec("classes", "bicrank-1", lambda t: Family(2, 0), _res_mod5(3), 5),
    "4ii": _TheoremSpec("classes", "bicrank-2", lambda t: Family(2, 0), _res_mod5(2, 4), 5),
    "5i": _TheoremSpec("divisible", None, lambda t: Family(0, t - 1), _nonres(24)),
    "5ii": _TheoremSpec("divisible", None, lambda t: Family(0, t - 3), _not_res(8)),
    "6i": _TheoremSpec("classes", "ghl-multirank", lambda t: Family(0, t - 1), _nonres(24)),
    "6ii": _TheoremSpec("classes", "ghl-multirank", lambda t: Family(0, t - 3), _not_res(8)),
    "7i": _TheoremSpec(
        "classes", "multicrank-I", lambda t: Family((t - 1) // 2, (t - 1) // 2), _nonres(24)
    ),
    "7ii": _TheoremSpec(
        "classes", "multicrank-I", lambda t: Family((t - 3) // 2, (t - 3) // 2), _not_res(8)
    ),
    "7iii": _TheoremSpec("classes", "multicrank-II", lambda t: Family(2, t - 5), _nonres(8)),
}


def _normalise_id(theorem: str | int) -> list[str]:
    key = str(theorem).replace("(", "").replace(")", "").replace(" ", "").lower()
    if key in THEOREMS:
        return [key]
    subs = [k for k in THEOREMS if k.rstrip("i") == key and k != key]
    if subs:
        return sorted(subs, key=len)
    raise ValueError(f"unknown theorem id {theorem!r}; choose from {sorted(THEOREMS)}")


def verify_theorem(
    theorem: str | int,
    t: Optional[int] = None,
    max_n: int = 20,
    min_n: int = 0,
    include_residues: Sequence[int] = (),
    threads: int = 1,
    enumeration_limit: int = 12,
) -> TheoremReport:
    """Check a congruence theorem for every qualifying n in [min_n, max_n].

    For the mod-5 theorems, ``include_residues`` adds n in further residue
    classes mod 5; those rows are checked with the same equal-class test and
    show up as violations where the theorem does not extend.  For theorem 5
    the rows hold ``[p_{-r}(n)]``; up to ``enumeration_limit`` the series
    value is also matched against a direct count of the family.
    """
    ids = _normalise_id(theorem)
    if len(ids) > 1:
        reports = [
            verify_theorem(i, t, max_n, min_n, include_residues, threads, enumeration_limit)
            for i in ids
        ]
        merged = TheoremReport(str(theorem), reports[0].t)
        for rep in reports:
            merged.rows.extend(rep.rows)
            merged.applicable = merged.applicable and rep.applicable
        merged.note = "; ".join(r.note for r in reports if r.note)
        return merged
    key = ids[0]
    spec = THEOREMS[key]
    if spec.fixed_t is not None:
        if t not in (None, spec.fixed_t):
            return TheoremReport(key, t, applicable=False, note=f"theorem {key} is stated for t = {spec.fixed_t}")
        t = spec.fixed_t
    if t is None:
        t = 5
    if not is_prime(t) or t <= 3:
        return TheoremReport(key, t, applicable=False, note="t must be a prime > 3")
    fam = spec.family(t)

    extra = set(include_residues)

    def qualifies(n: int) -> tuple[bool, bool]:
        q = spec.condition(n, t)
        return q, q or (spec.fixed_t == 5 and n % 5 in extra)

    def check(n: int) -> TheoremRow:
        q, _ = qualifies(n)
        if spec.kind == "divisible":
            val = p_minus_r(n, fam.r)
            ok = val % t == 0
            if n <= enumeration_limit:
                ok = ok and _family_total(fam, n) == val
            return TheoremRow(key, t, n, [val], ok, q)
        tab = class_count(fam, spec.statistic, n, t)
        return TheoremRow(key, t, n, tab.counts, tab.all_equal(), q)

    ns = [n for n in range(min_n, max_n + 1) if qualifies(n)[1]]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(check, ns))
    else:
        rows = [check(n) for n in ns]
    return TheoremReport(key, t, rows)


def _family_total(fam: Family, n: int) -> int:
    """Total weight of the family at size n, summed from component enumerations."""
    state = [1] + [0] * n
    for k in range(fam.r):
        ext = fam.is_extended(k)
        sizes = [sum(_component_table(ext, None, 0, 1, b)) for b in range(n + 1)]
        state = [sum(state[a] * sizes[m - a] for a in range(m + 1)) for m in range(n + 1)]
    return state[n]
