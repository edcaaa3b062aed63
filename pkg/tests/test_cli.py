import json

import pandas as pd
import pytest

from src import cli, features, oracle
from src.features import CurveFeatureReport
from src.report_store import ReportStore

FAST = ["--oracle-samples", "1024"]


@pytest.fixture
def loop_file(tmp_path):
    path = tmp_path / "loop.json"
    path.write_text(json.dumps({"terms": [{"m": 2, "c": "1", "d": "1"}, {"m": 3, "c": "-2/3", "d": "-2/3"}]}))
    return str(path)


def test_reduce(capsys):
    assert cli.main(["reduce", "--l", "3", "--sin"]) == 0
    assert capsys.readouterr().out.strip() == "sin(3t) = (3 − 4u)·sin t, u = sin²t"


def test_reduce_prints_both_by_default(capsys):
    assert cli.main(["reduce", "--l", "2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("sin(2t) = ")
    assert lines[1].startswith("cos(2t) = ")


def test_reduce_index_too_large(capsys):
    assert cli.main(["reduce", "--l", "1000"]) == 2
    assert "exceeds" in capsys.readouterr().err


def test_usage_errors():
    assert cli.main([]) == 2
    assert cli.main(["reduce", "--l", "3", "--sin", "--cos"]) == 2
    assert cli.main(["classical", "--kind", "spirograph", "--R", "1", "--r", "1"]) == 2


def test_analyze_verify(loop_file, tmp_path):
    out = tmp_path / "report.json"
    assert cli.main(FAST + ["analyze", "--chain", loop_file, "--verify", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    kinds = [f["kind"] for f in data["features"]]
    assert kinds.count("selfIntersection") == 1
    assert kinds.count("singular") == 1
    assert data["oracleDiff"] == {"unmatchedAnalytic": [], "unmatchedNumeric": []}


def test_analyze_missing_file(tmp_path, capsys):
    assert cli.main(["analyze", "--chain", str(tmp_path / "nope.json")]) == 2
    assert "error" in capsys.readouterr().err


def test_analyze_store(loop_file, tmp_path, monkeypatch):
    assert cli.main(FAST + ["analyze", "--chain", loop_file, "--store", "--out", str(tmp_path / "a.json")]) == 0
    store = ReportStore(str(tmp_path / "reports.db"))
    assert store.get_stats()["total_reports"] == 1

    def fail(*args, **kwargs):
        raise AssertionError("cached report should be used")

    monkeypatch.setattr(cli, "analyze_chain", fail)
    assert cli.main(FAST + ["analyze", "--chain", loop_file, "--store", "--out", str(tmp_path / "b.json")]) == 0
    assert (tmp_path / "a.json").read_text() == (tmp_path / "b.json").read_text()


def test_mismatch_exit_code(loop_file, monkeypatch):
    def disagreeing(chain, **kwargs):
        return CurveFeatureReport(
            {"chain": chain.to_json()},
            oracle_diff={"unmatchedAnalytic": [[0.0, 0.0]], "unmatchedNumeric": []},
        )

    monkeypatch.setattr(cli, "analyze_chain", disagreeing)
    assert cli.main(FAST + ["analyze", "--chain", loop_file, "--verify"]) == 3


def test_classical(capsys):
    assert cli.main(FAST + ["classical", "--kind", "hypocycloid", "--R", "4", "--r", "1", "--verify"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["summary"]["cusps"] == 4
    assert data["descriptor"]["twoChain"]["l"] == 3


def test_classical_bad_radii():
    assert cli.main(["classical", "--kind", "hypocycloid", "--R", "1", "--r", "2"]) == 2


def test_torus(tmp_path, capsys):
    csv = tmp_path / "knot.csv"
    assert cli.main(["torus", "--p", "3", "--q", "7", "--R", "3", "--r", "1", "--csv", str(csv)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["summary"]["crossings"] == 14
    assert list(pd.read_csv(csv).columns) == ["t", "x", "y", "z"]


def test_torus_bad_spec():
    assert cli.main(["torus", "--p", "2", "--q", "4", "--R", "3", "--r", "1"]) == 2


def test_helix(tmp_path, capsys):
    chain = tmp_path / "rose.json"
    chain.write_text(json.dumps({"terms": [{"m": 1, "c": "1", "d": "1"}, {"m": 3, "c": "1", "d": "1"}]}))
    assert cli.main(["helix", "--chain", str(chain), "--a", "2", "--Q", "1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["summary"]["classification"] == "capareda"


def test_helix_needs_two_chain(loop_file, tmp_path):
    chain = tmp_path / "three.json"
    chain.write_text(
        json.dumps({"terms": [{"m": 1, "c": 1, "d": 1}, {"m": 2, "c": 1, "d": 1}, {"m": 4, "c": 1, "d": 1}]})
    )
    assert cli.main(["helix", "--chain", str(chain), "--a", "1", "--Q", "1"]) == 2
    assert cli.main(["helix", "--chain", loop_file, "--a", "1", "--Q", "0.5"]) == 0


def test_spectrum(capsys):
    assert cli.main(FAST + ["spectrum", "--terms", "2:1,1:2", "--verify"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["descriptor"]["N"] == 1
    assert set(data["boundaries"]) == {"f1", "f2"}


def test_spectrum_bad_alpha():
    assert cli.main(["spectrum", "--terms", "1:x"]) == 2


def test_oracle_check(loop_file, tmp_path):
    out = tmp_path / "oracle.json"
    assert cli.main(FAST + ["oracle-check", "--chain", loop_file, "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["selfIntersections"]) == 1
    assert len(data["singular"]) == 1


def test_plot_and_sample(loop_file, tmp_path):
    svg = tmp_path / "loop.svg"
    csv = tmp_path / "loop.csv"
    assert cli.main(["plot", "--chain", loop_file, "--out", str(svg), "--samples", "256"]) == 0
    assert svg.read_text().rstrip().endswith("</svg>")
    assert cli.main(["sample", "--chain", loop_file, "--out", str(csv), "--samples", "256"]) == 0
    assert len(pd.read_csv(csv)) == 256


def test_store_keys_verified_reports_by_oracle_grid(loop_file, tmp_path, monkeypatch):
    calls = []
    original = cli.analyze_chain

    def counting(*args, **kwargs):
        calls.append(kwargs["oracle_config"].n_samples)
        return original(*args, **kwargs)

    monkeypatch.setattr(cli, "analyze_chain", counting)
    run = ["analyze", "--chain", loop_file, "--verify", "--store"]
    assert cli.main(["--oracle-samples", "1024"] + run) == 0
    assert cli.main(["--oracle-samples", "1024"] + run) == 0
    assert cli.main(["--oracle-samples", "2048"] + run) == 0
    assert calls == [1024, 2048]
    assert ReportStore(str(tmp_path / "reports.db")).get_stats()["total_reports"] == 2


def test_oracle_check_scans_once(loop_file, monkeypatch):
    calls = []
    original = oracle.scan_self_intersections

    def counting(curve, cfg=None):
        calls.append(cfg)
        return original(curve, cfg)

    for module in (oracle, features, cli):
        monkeypatch.setattr(module, "scan_self_intersections", counting)
    assert cli.main(FAST + ["oracle-check", "--chain", loop_file]) == 0
    assert len(calls) == 1
