from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from birank.cli import run
from birank.qseries import QSeries

GOLDEN = Path(__file__).parent / "golden"


def cli(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_classes_example():
    code, out, _ = cli("classes", "--family", "bipartition", "--statistic", "hl-birank", "--n", "3", "--mod", "5")
    assert code == 0
    assert out.splitlines()[1].split("\t")[4] == "2,2,2,2,2"


def test_classes_json():
    code, out, _ = cli(
        "classes", "--family", "bipartition", "--statistic", "hl-birank", "--n", "3", "--mod", "5", "--format", "json"
    )
    assert code == 0 and json.loads(out)["counts"] == [2, 2, 2, 2, 2]


def test_classes_bruteforce_flag_agrees():
    args = ["classes", "--family", "extended-bipartition", "--statistic", "bicrank-2", "--n", "6", "--mod", "5"]
    assert cli(*args)[1] == cli(*args, "--bruteforce")[1]


@pytest.mark.parametrize(
    "partition,stat,family,value",
    [
        ("2+1", "five-core-crank", None, "0"),
        ("3+2+1", "five-core-crank", None, "0"),
        ("(1+1,1)", "hl-birank", None, "1"),
        ("(-,3)", "five-core-birank", None, "6"),
        ("(1,1a)", "bicrank-2", None, "1"),
        ("1b", "crank", "extended-partition", "0"),
        ("(-,-,1+1,-)", "ghl-multirank", "multipartition", "-4"),
    ],
)
def test_stats_single(partition, stat, family, value):
    argv = ["stats", "--partition", partition, "--statistic", stat]
    if family:
        argv += ["--family", family]
    code, out, _ = cli(*argv)
    assert code == 0 and out.strip() == value


def test_stats_listing():
    code, out, _ = cli("stats", "--n", "3", "--statistic", "hl-birank")
    assert code == 0
    assert len(out.splitlines()) == 11
    code, out, _ = cli("stats", "--n", "2", "--statistic", "ghl-multirank", "--r", "4", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 14


def test_stats_rejects_ordinary_special():
    code, _, err = cli("stats", "--partition", "(1a,1)", "--statistic", "hl-birank")
    assert code == 2 and "ordinary" in err


def test_verify_theorem_counterexample_exit_code():
    code, out, _ = cli("verify-theorem", "--id", "2", "--max-n", "13", "--include-residue", "3")
    assert code == 1
    assert out.strip().splitlines()[-1].split("\t") == ["2", "5", "13", "358,353,353,353,353", "FAIL"]


def test_verify_theorem_pass():
    code, out, _ = cli("verify-theorem", "--id", "3", "--max-n", "25", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["pass"] and data["applicable"]
    assert all(r["n"] % 5 in (2, 3, 4) for r in data["rows"])


def test_verify_theorem_not_applicable():
    code, out, _ = cli("verify-theorem", "--id", "6ii", "--t", "9", "--max-n", "5")
    assert code == 1 and "not applicable" in out


def test_verify_identity():
    code, out, _ = cli("verify-identity", "--name", "t5-dissect", "--prec", "40")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()[1:]]
    assert rows and all(r[3] == "pass" for r in rows)


def test_verify_identity_json_has_precision():
    code, out, _ = cli("verify-identity", "--name", "abcd-1", "--name", "abcd-2", "--prec", "50", "--format", "json")
    data = json.loads(out)
    assert code == 0 and [d["name"] for d in data] == ["abcd-1", "abcd-2"]
    assert all(d["verified_to"] == "O(q^50)" for d in data)


def test_series_json_round_trip():
    code, out, _ = cli("series", "--name", "phi", "--prec", "20", "--format", "json")
    assert code == 0
    s = QSeries.from_json_dict(json.loads(out)["series"])
    code, text, _ = cli("series", "--name", "phi", "--prec", "20")
    assert text.strip() == s.render()


def test_bivariate_series_tsv():
    code, out, _ = cli("series", "--name", "rank-genfunc", "--prec", "5")
    assert code == 0
    assert out.splitlines()[0] == "z_exponent\tseries"
    assert dict(line.split("\t") for line in out.splitlines()[1:])["0"] == "1 + q + q^3 + q^4 + O(q^5)"


def test_dissect_example():
    code, out, _ = cli("dissect", "--name", "f-zeta-sq-product", "--mod", "5", "--prec", "50", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert [r["zero"] for r in data["residues"]] == [False, False, True, False, True]


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["classes", "--family", "bipartition"],
        ["classes", "--family", "bipartition", "--statistic", "nope", "--n", "3", "--mod", "5"],
        ["stats", "--partition", "2+x", "--statistic", "rank"],
        ["stats", "--statistic", "rank"],
        ["series", "--name", "nope"],
        ["dissect", "--name", "T", "--mod", "5"],
        ["verify-identity"],
        ["verify-identity", "--name", "nope"],
        ["verify-theorem", "--id", "42"],
        ["verify-theorem", "--id", "1", "--threads", "0"],
    ],
)
def test_usage_errors_exit_2(argv):
    assert cli(*argv)[0] == 2


def test_threads_env_fallback(monkeypatch):
    monkeypatch.setenv("BIRANK_THREADS", "3")
    assert cli("verify-theorem", "--id", "1", "--max-n", "20")[0] == 0
    monkeypatch.setenv("BIRANK_THREADS", "many")
    assert cli("verify-theorem", "--id", "1", "--max-n", "20")[0] == 2


@pytest.mark.parametrize(
    "golden,argv",
    [
        ("classes_hl_n3.tsv", ["classes", "--family", "bipartition", "--statistic", "hl-birank", "--n", "3", "--mod", "5"]),
        ("seed_tables.tsv", ["--seed-tables"]),
        ("series_phi_20.txt", ["series", "--name", "phi", "--prec", "20"]),
        ("dissect_fzeta_sq.json", ["dissect", "--name", "f-zeta-sq-product", "--mod", "5", "--prec", "50", "--format", "json"]),
        ("theorem2_n13.tsv", ["verify-theorem", "--id", "2", "--max-n", "13", "--include-residue", "3"]),
    ],
)
def test_golden_output(golden, argv):
    assert cli(*argv)[1] == (GOLDEN / golden).read_text()


@pytest.mark.parametrize("threads", ["1", "2", "4"])
def test_byte_stable_across_threads(threads):
    argv = ["verify-theorem", "--id", "2", "--max-n", "13", "--include-residue", "3", "--threads", threads]
    assert cli(*argv)[1] == (GOLDEN / "theorem2_n13.tsv").read_text()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "birank", "stats", "--partition", "2+1", "--statistic", "five-core-crank"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "0"
