"""Command-line front end.

Subcommands: ``stats``, ``classes``, ``verify-theorem``, ``verify-identity``,
``series`` and ``dissect``.  Output is TSV by default and JSON with
``--format json``.  Exit status is 0 on success, 1 when a verification
fails and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence, TextIO

from .identities import IDENTITIES, SERIES, build_series, dissection_report, verify_all
from .multistat import (
    STATISTICS,
    THEOREMS,
    Multipartition,
    class_count,
    class_count_bruteforce,
    enumerate_family,
    family_for,
    stat_eval,
    verify_theorem,
)
from .partitions import ONE_A, ONE_B, format_partition, parse_partition
from .qseries import QSeries, ZLaurent

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FAMILIES = [
    "partition",
    "extended-partition",
    "bipartition",
    "extended-bipartition",
    "multipartition",
    "extended-multipartition-I",
    "extended-multipartition-II",
]

# (label, statistic, family, r, n, t) for the worked tables
SEED_TABLES = [
    ("hl-birank-n3", "hl-birank", "bipartition", None, 3, 5),
    ("dyson-birank-n2", "dyson-birank", "bipartition", None, 2, 5),
    ("five-core-birank-n3", "five-core-birank", "bipartition", None, 3, 5),
    ("bicrank-1-n3", "bicrank-1", "extended-bipartition", None, 3, 5),
    ("bicrank-2-n2", "bicrank-2", "extended-bipartition", None, 2, 5),
    ("ghl-multirank-t7-n2", "ghl-multirank", "multipartition", 4, 2, 7),
]


class UsageError(Exception):
    pass


def _threads(args) -> int:
    if args.threads is not None:
        n = args.threads
    else:
        env = os.environ.get("BIRANK_THREADS", "").strip()
        try:
            n = int(env) if env else 1
        except ValueError:
            raise UsageError(f"BIRANK_THREADS must be an integer, got {env!r}") from None
    if n < 1:
        raise UsageError("thread count must be >= 1")
    return n


def _dump(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _series_json(s) -> dict:
    if isinstance(s, QSeries):
        return s.to_json_dict()
    return {
        "qprecision": s.qprec,
        "terms": {str(k): v.to_json_dict() for k, v in sorted(s.terms.items())},
    }


# ---------------------------------------------------------------------------
# subcommands


def _parse_components(text: str) -> tuple:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    return tuple(parse_partition(p) for p in body.split(","))


def cmd_stats(args, out: TextIO) -> int:
    stat = STATISTICS.get(args.statistic)
    if stat is None:
        raise UsageError(f"unknown statistic {args.statistic!r}")
    if (args.partition is None) == (args.n is None):
        raise UsageError("give exactly one of --partition or --n")
    rows = []
    if args.partition is not None:
        comps = _parse_components(args.partition)
        fam = family_for(args.family or stat.default_family, len(comps))
        if fam.r != len(comps):
            raise UsageError(f"family {fam.label} needs {fam.r} components, got {len(comps)}")
        for k, p in enumerate(comps):
            if p in (ONE_A, ONE_B) and not fam.is_extended(k):
                raise UsageError(f"component {k + 1} of {fam.label} is an ordinary partition")
        m = Multipartition(comps, fam.extended)
        rows.append((m, stat_eval(stat.name, m)))
    else:
        fam = family_for(args.family or stat.default_family, args.r)
        for m in enumerate_family(fam, args.n):
            rows.append((m, stat_eval(stat.name, m)))

    def label(m: Multipartition) -> str:
        if len(m.components) == 1:
            return format_partition(m.components[0])
        return str(m)

    if args.format == "json":
        _dump(
            [
                {"multipartition": label(m), "statistic": stat.name, "value": v, "weight": m.weight}
                for m, v in rows
            ],
            out,
        )
    elif args.partition is not None:
        out.write(f"{rows[0][1]}\n")
    else:
        out.write("multipartition\tvalue\tweight\n")
        for m, v in rows:
            out.write(f"{label(m)}\t{v}\t{m.weight}\n")
    return EXIT_OK


def cmd_classes(args, out: TextIO) -> int:
    fam = family_for(args.family, args.r)
    counter = class_count_bruteforce if args.bruteforce else class_count
    tab = counter(fam, args.statistic, args.n, args.mod)
    if args.format == "json":
        _dump(tab.as_dict(), out)
    else:
        out.write("statistic\tfamily\tt\tn\tcounts\ttotal\n")
        counts = ",".join(str(c) for c in tab.counts)
        out.write(f"{tab.statistic}\t{tab.family}\t{tab.t}\t{tab.n}\t{counts}\t{tab.total}\n")
    return EXIT_OK


def cmd_verify_theorem(args, out: TextIO) -> int:
    threads = _threads(args)
    rep = verify_theorem(
        args.id,
        t=args.t,
        max_n=args.max_n,
        min_n=args.min_n,
        include_residues=args.include_residue or (),
        threads=threads,
    )
    if args.format == "json":
        _dump(
            {
                "theorem": rep.theorem,
                "t": rep.t,
                "applicable": rep.applicable,
                "note": rep.note,
                "pass": rep.passed,
                "rows": [r.as_dict() for r in rep.rows],
            },
            out,
        )
    else:
        out.write("theorem\tt\tn\tcounts\tpass\n")
        for r in rep.rows:
            out.write(f"{r.theorem}\t{r.t}\t{r.n}\t{','.join(map(str, r.counts))}\t{'pass' if r.passed else 'FAIL'}\n")
        if not rep.applicable:
            out.write(f"# not applicable: {rep.note}\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify_identity(args, out: TextIO) -> int:
    names = args.name or []
    if args.all:
        names = [n for n in IDENTITIES if not IDENTITIES[n].best_effort]
    if not names:
        raise UsageError("give --name (repeatable) or --all")
    for n in names:
        if n not in IDENTITIES:
            raise UsageError(f"unknown identity {n!r}; choose from {', '.join(IDENTITIES)}")
    results = verify_all(names, args.prec, threads=_threads(args))
    if args.format == "json":
        _dump([r.as_dict() for r in results], out)
    else:
        out.write("identity\tcheck\tprecision\tresult\tfirst_mismatch\n")
        for r in results:
            for row in r.tsv_rows():
                out.write(row + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_series(args, out: TextIO) -> int:
    if args.name not in SERIES:
        raise UsageError(f"unknown series {args.name!r}; choose from {', '.join(SERIES)}")
    s = build_series(args.name, args.prec)
    if args.format == "json":
        _dump({"name": args.name, "series": _series_json(s)}, out)
    elif isinstance(s, ZLaurent):
        out.write("z_exponent\tseries\n")
        for k in s.z_exponents():
            out.write(f"{k}\t{s.terms[k].render()}\n")
    else:
        out.write(s.render() + "\n")
    return EXIT_OK


def cmd_dissect(args, out: TextIO) -> int:
    if args.name not in SERIES:
        raise UsageError(f"unknown series {args.name!r}")
    parts = dissection_report(args.name, args.mod, args.prec)
    if args.format == "json":
        _dump(
            {
                "name": args.name,
                "t": args.mod,
                "precision": args.prec,
                "residues": [
                    {"r": r, "zero": s.is_zero(), "series": s.to_json_dict()} for r, s in enumerate(parts)
                ],
            },
            out,
        )
    else:
        out.write("residue\tzero\tseries\n")
        for r, s in enumerate(parts):
            out.write(f"{r}\t{int(s.is_zero())}\t{s.render()}\n")
    return EXIT_OK


def seed_tables(fmt: str, out: TextIO) -> int:
    """Every object in the six worked tables, with statistic, residue and weight."""
    data = []
    for label, stat, fam_name, r, n, t in SEED_TABLES:
        fam = family_for(fam_name, r)
        rows = [
            {"multipartition": str(m), "value": stat_eval(stat, m), "residue": stat_eval(stat, m) % t, "weight": m.weight}
            for m in enumerate_family(fam, n)
        ]
        tab = class_count(fam, stat, n, t)
        data.append({"table": label, "statistic": stat, "t": t, "n": n, "rows": rows, "counts": tab.counts})
    if fmt == "json":
        _dump(data, out)
        return EXIT_OK
    out.write("table\tmultipartition\tvalue\tresidue\tweight\n")
    for d in data:
        for row in d["rows"]:
            out.write(f"{d['table']}\t{row['multipartition']}\t{row['value']}\t{row['residue']}\t{row['weight']}\n")
        out.write(f"{d['table']}\tclasses\t{','.join(map(str, d['counts']))}\t\t\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["tsv", "json"], default="tsv")
    common.add_argument("--threads", type=int, default=None, help="worker cap (default: $BIRANK_THREADS or 1)")

    p = argparse.ArgumentParser(prog="birank", description=__doc__.splitlines()[0])
    p.add_argument("--seed-tables", action="store_true", help="dump the six worked tables and exit")
    p.add_argument("--format", dest="top_format", choices=["tsv", "json"], default="tsv")
    sub = p.add_subparsers(dest="command")

    s = sub.add_parser("stats", parents=[common], help="statistic of one (multi)partition or of all of size n")
    s.add_argument("--partition", help='e.g. "3+2+1", "(2+1,1a)"')
    s.add_argument("--n", type=int)
    s.add_argument("--statistic", required=True, choices=sorted(STATISTICS))
    s.add_argument("--family", choices=FAMILIES)
    s.add_argument("--r", type=int, help="component count for multipartition families")
    s.set_defaults(func=cmd_stats)

    c = sub.add_parser("classes", parents=[common], help="residue-class table of a statistic")
    c.add_argument("--family", required=True, choices=FAMILIES)
    c.add_argument("--statistic", required=True, choices=sorted(STATISTICS))
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--mod", type=int, required=True)
    c.add_argument("--r", type=int)
    c.add_argument("--bruteforce", action="store_true", help="walk every tuple instead of the fast count")
    c.set_defaults(func=cmd_classes)

    v = sub.add_parser("verify-theorem", parents=[common], help="check a congruence theorem over a range of n")
    v.add_argument("--id", required=True, help=f"one of {', '.join(THEOREMS)} (or 4, 5, 6, 7 for all parts)")
    v.add_argument("--max-n", type=int, default=20)
    v.add_argument("--min-n", type=int, default=0)
    v.add_argument("--t", type=int, default=None)
    v.add_argument("--include-residue", type=int, action="append", help="also test n in this residue class mod 5")
    v.set_defaults(func=cmd_verify_theorem)

    i = sub.add_parser("verify-identity", parents=[common], help="expand and compare both sides of an identity")
    i.add_argument("--name", action="append", help="identity name (repeatable)")
    i.add_argument("--all", action="store_true", help="every identity in the acceptance set")
    i.add_argument("--prec", type=int, default=None, help="q-precision (default: per identity)")
    i.set_defaults(func=cmd_verify_identity)

    r = sub.add_parser("series", parents=[common], help="print a named series")
    r.add_argument("--name", required=True)
    r.add_argument("--prec", type=int, default=20)
    r.set_defaults(func=cmd_series)

    d = sub.add_parser("dissect", parents=[common], help="print the t subseries of a named series")
    d.add_argument("--name", required=True)
    d.add_argument("--mod", type=int, required=True)
    d.add_argument("--prec", type=int, default=50)
    d.set_defaults(func=cmd_dissect)
    return p


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        if args.seed_tables:
            return seed_tables(args.top_format, out)
        if args.command is None:
            parser.print_usage(err)
            return EXIT_USAGE
        return args.func(args, out)
    except (UsageError, ValueError) as e:
        err.write(f"birank: error: {e}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
