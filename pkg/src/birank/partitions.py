"""Partitions, extended partitions and single-partition statistics.

A partition is a tuple of positive ints in non-increasing order; the empty
tuple is the partition of 0.  Extended partitions add two extra objects of
size 1, ``ONE_A`` and ``ONE_B``; ``ONE_B`` carries weight -1.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Union

__all__ = [
    "Partition",
    "ExtendedPartition",
    "ONE_A",
    "ONE_B",
    "make_partition",
    "enumerate_partitions",
    "enumerate_extended_partitions",
    "conjugate",
    "dyson_rank",
    "crank",
    "crank_ext",
    "weight_ext",
    "size_ext",
    "num_parts",
    "residue_counts",
    "five_core_crank",
    "hook_lengths",
    "is_t_core",
    "enumerate_five_cores",
    "parse_partition",
    "format_partition",
]

Partition = tuple[int, ...]


class _Special:
    """One of the two extra extended partitions of 1."""

    __slots__ = ("name",)

    def __init__(self, name: str) -> None:
        self.name = name

    def __repr__(self) -> str:
        return self.name

    def __reduce__(self):
        return (_special, (self.name,))


ONE_A = _Special("1a")
ONE_B = _Special("1b")


def _special(name: str) -> _Special:
    return ONE_A if name == "1a" else ONE_B


ExtendedPartition = Union[Partition, _Special]


def make_partition(parts) -> Partition:
    """Normalise any iterable of positive ints to a partition."""
    p = tuple(sorted((int(x) for x in parts), reverse=True))
    if p and p[-1] < 1:
        raise ValueError(f"partition parts must be positive: {p}")
    return p


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n, each once, in lexicographic order of parts."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out: list[Partition] = []
    _gen(n, n, (), out)
    return tuple(out)


def _gen(n: int, cap: int, prefix: Partition, out: list) -> None:
    if n == 0:
        out.append(prefix)
        return
    for first in range(1, min(n, cap) + 1):
        _gen(n - first, first, prefix + (first,), out)


def enumerate_extended_partitions(n: int) -> tuple[ExtendedPartition, ...]:
    """Extended partitions of n: ordinary ones plus 1a, 1b when n == 1."""
    base = enumerate_partitions(n)
    if n == 1:
        return base + (ONE_A, ONE_B)
    return base


# ---------------------------------------------------------------------------
# statistics


def num_parts(p: Partition) -> int:
    return len(p)


def conjugate(p: Partition) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > j) for j in range(p[0]))


def dyson_rank(p: Partition) -> int:
    """Largest part minus number of parts; 0 for the empty partition."""
    if not p:
        return 0
    return p[0] - len(p)


def crank(p: Partition) -> int:
    """Crank of an ordinary partition (0 for the empty one)."""
    if not p:
        return 0
    ones = p.count(1)
    if ones == 0:
        return p[0]
    return sum(1 for x in p if x > ones) - ones


def crank_ext(p: ExtendedPartition) -> int:
    if p is ONE_A:
        return 1
    if p is ONE_B:
        return 0
    return crank(p)


def weight_ext(p: ExtendedPartition) -> int:
    return -1 if p is ONE_B else 1


def size_ext(p: ExtendedPartition) -> int:
    if isinstance(p, _Special):
        return 1
    return sum(p)


def residue_counts(p: Partition, t: int = 5) -> list[int]:
    """Cells of each label in the t-residue diagram; cell (i, j) has label j - i mod t."""
    counts = [0] * t
    for i, row in enumerate(p):
        # labels (j - i) for j = 0..row-1 cycle through residues
        full, extra = divmod(row, t)
        if full:
            for r in range(t):
                counts[r] += full
        for j in range(extra):
            counts[(j - i) % t] += 1
    return counts


def five_core_crank(p: Partition) -> int:
    """r_1 + 2 r_2 - 2 r_3 - r_4 from the 5-residue diagram."""
    r = residue_counts(p, 5)
    return r[1] + 2 * r[2] - 2 * r[3] - r[4]


def hook_lengths(p: Partition) -> list[int]:
    cols = conjugate(p)
    return [row - j + cols[j] - i - 1 for i, row in enumerate(p) for j in range(row)]


def is_t_core(p: Partition, t: int) -> bool:
    if t < 2:
        raise ValueError("t must be >= 2")
    return all(h % t for h in hook_lengths(p))


def enumerate_five_cores(n: int) -> list[Partition]:
    return [p for p in enumerate_partitions(n) if is_t_core(p, 5)]


# ---------------------------------------------------------------------------
# text format


def format_partition(p: ExtendedPartition) -> str:
    if isinstance(p, _Special):
        return p.name
    if not p:
        return "-"
    return "+".join(str(x) for x in p)


def parse_partition(text: str) -> ExtendedPartition:
    """Inverse of :func:`format_partition`: ``"3+2+1"``, ``"-"``, ``"1a"``, ``"1b"``."""
    s = text.strip()
    if s == "1a":
        return ONE_A
    if s == "1b":
        return ONE_B
    if s in ("-", ""):
        return ()
    try:
        parts = [int(x) for x in s.split("+")]
    except ValueError:
        raise ValueError(f"cannot parse partition {text!r}") from None
    if any(x < 1 for x in parts) or list(parts) != sorted(parts, reverse=True):
        raise ValueError(f"parts must be positive and non-increasing: {text!r}")
    return tuple(parts)
