import csv
import io

import pytest

from jaya_lab.cli import main
from jaya_lab.costs import CostConstants, sjaya_run_cost
from jaya_lab.models import (
    DistributionKind,
    best_update_expectation,
    worst_update_expectation,
)


def _csv(capsys):
    return list(csv.DictReader(io.StringIO(capsys.readouterr().out)))


def test_theory_worst(capsys):
    assert main(["theory-worst", "--n", "10,100", "--p", "1"]) == 0
    rows = _csv(capsys)
    assert [int(r["n"]) for r in rows] == [10, 100]
    assert float(rows[0]["E_X"]) == pytest.approx(1.593742, abs=1e-6)
    assert float(rows[1]["E_X"]) == pytest.approx(1.704813, abs=1e-6)


def test_theory_worst_matches_library(capsys):
    main(["theory-worst", "--n", "50", "--p", "0.5"])
    assert float(_csv(capsys)[0]["E_X"]) == worst_update_expectation(50, 0.5)
    main(["theory-worst", "--n", "5,50", "--p", "0"])
    assert all(float(r["E_X"]) == 0.0 for r in _csv(capsys))


def test_theory_best(capsys):
    main(["theory-best", "--dist", "exponential", "--n", "1"])
    rows = _csv(capsys)
    assert float(rows[0]["exponential"]) == pytest.approx(0.3679, abs=5e-5)
    assert rows[1]["n"] == "inf"
    main(["theory-best", "--dist", "uniform,normal", "--n", "10000,1"])
    rows = _csv(capsys)
    assert float(rows[0]["uniform"]) == pytest.approx(0.6931, abs=5e-5)
    assert float(rows[1]["normal"]) == pytest.approx(0.5, abs=1e-12)
    assert float(rows[0]["normal"]) == best_update_expectation(DistributionKind.normal(), 10000)
    assert rows[2]["normal"] == ""  # no known limit


def test_cost(capsys):
    main(["cost", "--algorithm", "sjaya", "--n", "100", "--d", "30", "--G", "20",
          "--expected-assign", "0.6907"])
    rows = {r["term"]: float(r["value"]) for r in _csv(capsys)}
    assert rows["sjaya: total"] == sjaya_run_cost(100, 30, 20, DistributionKind.uniform(),
                                                  CostConstants(), 0.6907)


def test_cost_markdown(capsys):
    main(["cost", "--format", "markdown", "--algorithm", "jaya"])
    out = capsys.readouterr().out
    assert out.startswith("| term | value |") and "jaya: total" in out


def test_run_writes_trace(tmp_path):
    out = tmp_path / "trace.csv"
    assert main(["run", "--function", "goldstein_price", "--n", "10", "--G", "5",
                 "--seed", "1", "-o", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 5 and all(float(r["best_fitness"]) >= 3 for r in rows)


def test_ensemble_with_traces(tmp_path, capsys):
    traces = tmp_path / "t.csv"
    main(["ensemble", "--function", "ackley", "--n", "6", "--G", "4", "--runs", "3",
          "--traces", str(traces)])
    stats = {r["statistic"]: r["value"] for r in _csv(capsys)}
    assert stats["runs"] == "3" and "E_Y_gen4" in stats
    assert len(list(csv.DictReader(traces.open()))) == 12


def test_oracle_exit_code(capsys):
    assert main(["oracle", "--k", "5", "--n", "10", "--p", "0.5", "--trials", "200000"]) == 0
    rows = _csv(capsys)
    assert len(rows) == 6 and all(r["within_4_sigma"] == "pass" for r in rows)


def test_transition(capsys):
    main(["transition", "--runs", "50", "--G", "3"])
    rows = _csv(capsys)
    assert [r["current"] for r in rows] == [str(k) for k in range(10, 0, -1)]


def test_reproduce_analytic_tables(tmp_path, capsys):
    assert main(["reproduce", "--table", "1", "--out", str(tmp_path)]) == 0
    assert main(["reproduce", "--table", "4", "--out", str(tmp_path), "--format", "markdown"]) == 0
    out = capsys.readouterr().out
    assert "table1: PASS" in out and "table4: PASS" in out
    assert (tmp_path / "table1.csv").exists() and (tmp_path / "table4.md").exists()


def test_reproduce_unknown_table_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["reproduce", "--table", "7"])
    assert exc.value.code == 2


def test_reproduce_failure_exit_code(tmp_path, capsys):
    # 20 runs are far too few for the matrix tolerances
    assert main(["reproduce", "--table", "matrix", "--runs", "20", "--out", str(tmp_path)]) == 1
    assert "matrix: FAIL" in capsys.readouterr().out


def test_invalid_numbers_rejected():
    for argv in (["theory-worst", "--p", "1.5"], ["theory-worst", "--n", "0"],
                 ["cost", "--Cc", "-1"], ["ensemble", "--runs", "0"]):
        with pytest.raises(SystemExit):
            main(argv)


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "c.ini"
    cfg.write_text("n = 20\np = 0.5\n")
    main(["theory-worst", "--config", str(cfg)])
    rows = _csv(capsys)
    assert rows[0]["n"] == "20" and float(rows[0]["E_X"]) == worst_update_expectation(20, 0.5)
    main(["theory-worst", "--config", str(cfg), "--p", "1"])
    assert float(_csv(capsys)[0]["E_X"]) == worst_update_expectation(20, 1.0)
    cfg.write_text("bogus = 1\n")
    with pytest.raises(SystemExit):
        main(["theory-worst", "--config", str(cfg)])


def test_jobs_from_environment(monkeypatch):
    monkeypatch.setenv("JAYA_LAB_JOBS", "3")
    from jaya_lab.cli import build_parser
    args = build_parser().parse_args(["ensemble"])
    assert args.jobs == 3
