import json
import subprocess
import sys

import pytest

from supernil_lab import cli, corpus, verifier
from supernil_lab.algebra import serialize_algebra
from supernil_lab.verifier import FALSE, PropertyResult


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def sl2_file(tmp_path):
    p = tmp_path / "sl2.json"
    p.write_text(serialize_algebra(corpus.load("SL2")))
    return str(p)


def test_con(capsys):
    code, out, _ = run(capsys, "con", "--algebra", "corpus:Z4")
    assert code == 0
    assert json.loads(out) == {"elements": [[0, 1, 2, 3], [0, 1, 0, 1], [0, 0, 0, 0]],
                               "covers": [[0, 1], [1, 2]]}


def test_commutator(capsys):
    code, out, _ = run(capsys, "commutator", "--algebra", "corpus:S3", "--args", "1,1")
    d = json.loads(out)
    assert code == 0 and d["value"] == [0, 1, 1, 0, 0, 1]
    assert d["cube_count"] == 648 and d["rounds"] >= 1


def test_supernil(capsys, sl2_file):
    code, out, _ = run(capsys, "supernil", "--algebra", sl2_file, "--beta", "1", "--k", "2")
    d = json.loads(out)
    assert code == 0 and d["holds"] is False
    assert d["witness"] == [0] * 7 + [1]


def test_snags(capsys):
    _, out, _ = run(capsys, "snags", "--algebra", "corpus:SL2", "--two")
    assert json.loads(out)["pairs"] == [[0, 1]]
    _, out, _ = run(capsys, "snags", "--algebra", "corpus:SL2", "--beta", "0.1", "--k", "3")
    d = json.loads(out)
    assert d["pairs"] == [[0, 1]] and d["snags"][0]["witness"] == [0] * 7 + [1]
    code, _, err = run(capsys, "snags", "--algebra", "corpus:SL2")
    assert code == 1 and "error" in err


def test_tct(capsys):
    code, out, _ = run(capsys, "tct", "--algebra", "corpus:Z4", "--delta", "0",
                       "--theta", "c1", "--beta", "1")
    d = json.loads(out)
    assert code == 0 and d["beta_regular"]["holds"]
    assert d["minimal_sets"][0]["twin_monoid"]["nilpotency_class"] == 1


@pytest.mark.parametrize("token, expected", [
    ("0", [0, 1, 2, 3]), ("1", [0, 0, 0, 0]), ("c1", [0, 1, 0, 1]),
    ("0-1-0-1", [0, 1, 0, 1]), ("0,1,0,1", [0, 1, 0, 1]), ("[0,1,0,1]", [0, 1, 0, 1]),
    ('{"repr": [0,1,0,1]}', [0, 1, 0, 1]), ("0.2|1.3", [0, 1, 0, 1]),
])
def test_congruence_tokens(token, expected):
    A = corpus.load("Z4")
    assert list(cli.parse_congruence_token(token, A).repr) == expected


@pytest.mark.parametrize("token", ["c9", "0-1", "0.1|2.3", "x", "[1,1,1,1]"])
def test_bad_congruence_tokens(token):
    with pytest.raises(cli.UsageError):
        cli.parse_congruence_token(token, corpus.load("Z4"))


def test_check_json(capsys, sl2_file):
    code, out, _ = run(capsys, "check", "--algebra", sl2_file, "--beta", "all",
                       "--k", "1", "--json")
    d = json.loads(out)
    assert code == 0 and d["schema"] == "chain-report/1"
    assert [r["beta"] for r in d["reports"]] == [[0, 1], [0, 0]]


def test_check_violation_exit_code(capsys, monkeypatch):
    monkeypatch.setitem(verifier.DEFAULT_EVALUATORS, "p5",
                        lambda ctx: PropertyResult(FALSE, "injected"))
    code, out, _ = run(capsys, "check", "--algebra", "corpus:Z2", "--json")
    assert code == 2 and json.loads(out)["violations"] > 0


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "check", "--algebra", str(tmp_path / "missing.json"))[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "x", "size": 2, "operations": [{"name": "m", "arity": 2, "table": [0, 0, 0, 7]}]}')
    code, _, err = run(capsys, "con", "--algebra", str(bad))
    assert code == 1 and "error" in err
    assert run(capsys, "check", "--algebra", "corpus:Nope")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "fuzz", "--count", "1", "--seed", "1", "--kmax", "0")[0] == 1


def test_fuzz_text_and_json(capsys):
    code, out, _ = run(capsys, "fuzz", "--count", "6", "--size", "3", "--seed", "4")
    assert code == 0 and out.startswith("algebras=6")
    code, out, _ = run(capsys, "fuzz", "--count", "6", "--size", "2,3", "--seed", "4",
                       "--json")
    d = json.loads(out)
    assert d["sizes"] == [2, 3] and d["violations"] == []


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "supernil_lab.cli", "corpus"],
                         capture_output=True, text=True, check=True).stdout
    assert "SL2" in out.split()
