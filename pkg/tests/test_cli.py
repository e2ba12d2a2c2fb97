import json

import pytest

from agentsim.cli import main, parse_collector, parse_scan_values, parse_value
from agentsim.collect import read_csv


def test_parse_value_types():
    assert parse_value("3") == 3
    assert parse_value("0.5") == 0.5
    assert parse_value("true") is True
    assert parse_value("20,20") == (20, 20)
    assert parse_value("euler_dt1") == "euler_dt1"


def test_parse_scan_values():
    assert parse_scan_values("0..8") == list(range(9))
    assert parse_scan_values("0.5,0.7") == [0.5, 0.7]


def test_parse_collector_names():
    assert parse_collector("mood") == "mood"
    source, agg = parse_collector("sum_mood")
    assert source == "mood" and agg.__name__ == "sum"


def test_run_writes_six_row_csv(tmp_path, capsys):
    out = tmp_path / "sch"
    code = main(["run", "schelling", "--steps", "5", "--seed", "42",
                 "--adata", "sum_mood", "--out", str(out)])
    assert code == 0
    table = read_csv(str(out) + "_agents.csv")
    assert table.nrows == 6  # step-0 snapshot + 5 steps
    assert table.names == ["step", "sum_mood"]
    assert table.column("step") == [0, 1, 2, 3, 4, 5]


def test_unknown_model_is_usage_error(capsys):
    code = main(["run", "nosuchmodel"])
    assert code == 2
    err = capsys.readouterr().err
    assert "schelling" in err and "wolfsheep" in err


def test_unknown_subcommand_is_usage_error():
    assert main(["frobnicate"]) == 2


def test_provenance_line_reproduces_file(tmp_path):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    argv = ["run", "schelling", "min_to_be_happy=4", "--steps", "3", "--seed", "9",
            "--adata", "sum_mood"]
    assert main(argv + ["--out", str(out_a)]) == 0
    first = (tmp_path / "a_agents.csv").read_text()
    provenance = first.splitlines()[0]
    assert provenance.startswith("# agentsim run schelling min_to_be_happy=4")
    assert main(argv + ["--out", str(out_b)]) == 0
    second = (tmp_path / "b_agents.csv").read_text()
    assert first.split("\n", 1)[1] == second.split("\n", 1)[1]


def test_scan_workers_do_not_change_output(tmp_path):
    common = ["scan", "schelling", "min_to_be_happy=1..3", "--replicates", "2",
              "--steps", "3", "--seed", "5", "--adata", "sum_mood"]
    a = tmp_path / "w1.csv"
    b = tmp_path / "w4.csv"
    assert main(common + ["--workers", "1", "--out", str(a)]) == 0
    assert main(common + ["--workers", "4", "--out", str(b)]) == 0
    assert a.read_text().splitlines()[1:] == b.read_text().splitlines()[1:]
    table = read_csv(str(a))
    assert set(table.column("min_to_be_happy")) == {1, 2, 3}


def test_bench_prints_all_models(capsys):
    assert main(["bench", "--slack", "1000"]) == 0
    out = capsys.readouterr().out
    for name in ("schelling", "flocking", "wolfsheep", "forestfire"):
        assert name in out
    assert "LOC" in out


def test_optimize_reports_best(tmp_path, capsys):
    log = tmp_path / "log.csv"
    code = main(["optimize", "schelling", "min_to_be_happy=0:8",
                 "--budget", "24", "--population", "6", "--seed", "1",
                 "--out", str(log)])
    assert code == 0
    assert "best cost" in capsys.readouterr().out
    table = read_csv(str(log))
    assert "best_cost" in table.names


def test_optimize_unknown_cost_is_usage_error(capsys):
    assert main(["optimize", "schelling", "min_to_be_happy=0:8",
                 "--cost", "nope"]) == 2


def test_run_checkpoint_and_resume_round(tmp_path, capsys):
    ck = tmp_path / "state.abmck"
    assert main(["run", "schelling", "--steps", "4", "--seed", "3",
                 "--adata", "sum_mood", "--out", str(tmp_path / "r"),
                 "--checkpoint", str(ck)]) == 0
    doc = json.loads(ck.read_text())
    assert doc["step_count"] == 4
    out2 = tmp_path / "resumed.abmck"
    assert main(["resume", str(ck), "--steps", "2", "--out", str(out2)]) == 0
    assert json.loads(out2.read_text())["step_count"] == 6


def test_resume_missing_file_is_io_error(tmp_path, capsys):
    assert main(["resume", str(tmp_path / "absent.abmck")]) == 4


def test_unwritable_output_is_io_error(capsys):
    code = main(["run", "schelling", "--steps", "1", "--adata", "sum_mood",
                 "--out", "/nonexistent-dir/x"])
    assert code == 4


def test_bad_override_is_usage_error(capsys):
    assert main(["run", "schelling", "notapair", "--steps", "1"]) == 2


def test_model_invariant_violation_is_model_error(capsys):
    assert main(["run", "schelling", "density=0.0", "--steps", "1"]) == 3


def test_bad_scan_spec_is_usage_error(capsys):
    assert main(["scan", "schelling", "min_to_be_happy=0..3",
                 "--replicates", "0", "--adata", "sum_mood"]) == 2


def test_bad_optimize_spec_is_usage_error(capsys):
    assert main(["optimize", "schelling", "min_to_be_happy=0:8",
                 "--budget", "2", "--population", "6"]) == 2
