import json

from src.main.cli import main, parse_params, run_all, write_atomic
from src.main.config import EngineConfig
from src.main.scenarios import Scenario


def test_list(capsys, tmp_path):
    target = tmp_path / "catalog.json"
    assert main(["list", "--json", str(target)]) == 0
    assert "su5-t2-astheno" in capsys.readouterr().out
    assert len(json.loads(target.read_text())) == 10


def test_run_writes_report(tmp_path):
    target = tmp_path / "astheno.json"
    assert main(["run", "su5-t2-astheno", "--json", str(target)]) == 0
    report = json.loads(target.read_text())
    assert report["values"]["c2"] == "7/4"
    assert report["verdicts"] == {"positive_solution": True}


def test_run_several_scenarios_into_a_directory(tmp_path):
    assert main(["run", "su5-t2-astheno", "sl3-Ilambda", "--json", str(tmp_path / "out")]) == 0
    assert (tmp_path / "out" / "su5-t2-astheno.json").exists()
    assert (tmp_path / "out" / "sl3-Ilambda.json").exists()


def test_scan_csv(tmp_path):
    target = tmp_path / "scan.csv"
    assert main(["run", "su5-t2-scan", "--param", "range=2", "--csv", str(target)]) == 0
    lines = target.read_text().splitlines()
    assert lines[0] == "A,C,classification,rank,obstructed_p"
    assert len(lines) == 25


def test_usage_errors(capsys):
    assert main(["run", "sl2m1-nonregular", "--param", "m=17/2"]) == 2
    assert "m" in capsys.readouterr().err
    assert main(["run", "no-such-scenario"]) == 2
    assert main(["run", "su5-t2-astheno", "--param", "beta1"]) == 2


def test_mismatch_exit_code(tmp_path):
    catalog = tmp_path / "expected.json"
    catalog.write_text(json.dumps([{"scenario": "su5-t2-astheno", "params": {},
                                    "values": {"c2": "2"}}]))
    assert main(["run", "su5-t2-astheno", "--expectations", str(catalog)]) == 1


def test_parse_params():
    assert parse_params(["m=3", " lambda = i/2 "]) == {"m": "3", "lambda": "i/2"}


def test_write_atomic(tmp_path):
    target = tmp_path / "nested" / "file.txt"
    write_atomic(target, "text\n")
    assert target.read_text() == "text\n"
    assert list(target.parent.iterdir()) == [target]


def test_parallel_run_matches_serial():
    scenarios = [Scenario("su5-t2-astheno"), Scenario("compact-dxi", {"n": "3"})]
    serial = run_all(scenarios, EngineConfig())
    parallel = run_all(scenarios, EngineConfig(jobs=2))
    assert [r.to_json() for r in parallel] == [r.to_json() for r in serial]
