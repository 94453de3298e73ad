"""Exact q-series and residue-class counting for rank-type statistics on
partitions, bipartitions and multipartitions."""

from .exactnum import CycInt, zeta
from .identities import SERIES, IDENTITIES, build_series, dissection_report, verify_all, verify_identity
from .multistat import (
    STATISTICS,
    THEOREMS,
    Family,
    Multipartition,
    class_count,
    enumerate_family,
    family_for,
    stat_eval,
    verify_theorem,
)
from .qseries import QSeries, ZLaurent

__version__ = "0.1.0"

__all__ = [
    "CycInt",
    "zeta",
    "QSeries",
    "ZLaurent",
    "Family",
    "Multipartition",
    "STATISTICS",
    "THEOREMS",
    "family_for",
    "stat_eval",
    "enumerate_family",
    "class_count",
    "verify_theorem",
    "SERIES",
    "IDENTITIES",
    "build_series",
    "dissection_report",
    "verify_identity",
    "verify_all",
]
