from __future__ import annotations

import json

import pytest

from maclab.cli import parse_partition, run
from maclab.partitions import Partition


def _json(capsys, argv):
    code = run(argv)
    return code, json.loads(capsys.readouterr().out)


def test_parse_partition():
    assert parse_partition("2,1") == Partition([2, 1])
    assert parse_partition("[3, 1]") == Partition([3, 1])
    assert parse_partition("") == Partition()
    assert parse_partition("0") == Partition()


def test_basis_expansion_reports_command(capsys):
    code, data = _json(capsys, ["jqt", "--lambda", "1,1", "--basis", "m"])
    assert code == 0
    assert data["command"] == ["jqt", "--lambda", "1,1", "--basis", "m"]
    assert [term["mu"] for term in data["expansion"]["terms"]] == [[1, 1]]


def test_modified_basis_pretty(capsys):
    assert run(["htilde", "--lambda", "2", "--basis", "s", "--format", "pretty"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "# maclab htilde --lambda 2 --basis s --format pretty"
    assert "s[1, 1]: q" in out


def test_character_verbs(capsys):
    assert run(["char", "--mu", "1", "--k", "2", "--format", "pretty"]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "(t*v1 - t + v2 - 1)/(t)"
    assert run(["char", "--mu", "1", "--lambda", "1", "--format", "pretty"]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "q - 1"
    code, data = _json(capsys, ["star", "--mu", "2", "--of", "J"])
    assert code == 0 and data["k"] == 1


def test_structure_and_gj_verbs(capsys):
    code, data = _json(capsys, ["gcoef", "--mu", "1", "--nu", "1"])
    assert code == 0 and [c["pi"] for c in data["coefficients"]] == [[1], [1, 1]]
    code, data = _json(capsys, ["ccoef", "--m", "1"])
    assert code == 0 and len(data["coefficients"]) == 1
    code, data = _json(capsys, ["hcoef", "--m", "2", "--pi", "1,1", "--mu", "1,1", "--nu", "1,1"])
    assert code == 0 and len(data["coefficients"]) == 1


def test_sweep_and_verify_exit_codes(capsys, tmp_path):
    out = tmp_path / "report.json"
    assert run(["sweep", "--conjecture", "matchings", "--n", "2", "--no-runtime", "--output", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["failed"] == 0 and data["config"] == {"qprime": "q-1"}
    assert all("runtime" not in c for c in data["certificates"])
    code, data = _json(capsys, ["verify", "--suite", "core", "--max-size", "2"])
    assert code == 0 and data["failed"] == 0


def test_failed_sweep_exits_one(capsys, monkeypatch):
    import maclab.conjectures as conj
    from maclab.scalars import var

    monkeypatch.setattr(conj, "_stanley", lambda inp, cfg: (var("gamma") - 1, ("gamma",)))
    assert run(["sweep", "--conjecture", "stanley", "--n", "2"]) == 1
    assert json.loads(capsys.readouterr().out)["failed"] > 0


def test_cache_verb(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("MACLAB_CACHE", str(tmp_path))
    code, data = _json(capsys, ["cache", "info"])
    assert code == 0 and data["dir"] == str(tmp_path)
    code, data = _json(capsys, ["cache", "clear"])
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["jqt"],
    ["jqt", "--lambda", "1,2"],
    ["sweep", "--conjecture", "stanley", "--n", "-1"],
    ["ccoef", "--m", "0"],
    ["char", "--mu", "1", "--normalization", "weird"],
    ["frobnicate"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert run(argv) == 2
