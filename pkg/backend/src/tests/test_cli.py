import pytest

from contract_lab import cli
from contract_lab.errors import BracketFailure, ClosedFormUnavailable, ParseError, ReservationTooHigh
from contract_lab.experiments import read_table

RENEWAL = "r = 11\nc = 1\nb = 1\nlambda = 1\ndelta = 0.9\n"
HIGH_TECH = "r = 1e7\nc = 1e5\nb = 50\nlambda = 0.01\n"


@pytest.fixture
def scenario_file(tmp_path):
    def write(text, name="scenario.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def test_check_ok(scenario_file, capsys):
    assert cli.main(["check", scenario_file(HIGH_TECH)]) == cli.EXIT_OK
    assert "status: ok" in capsys.readouterr().out


def test_check_warnings_and_strict(scenario_file, capsys):
    path = scenario_file("r = 1.5\nc = 1\nlambda = 1\n")
    assert cli.main(["check", path]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "warning: high-margin" in out
    assert "status: warnings" in out
    assert cli.main(["--strict", "check", path]) == cli.EXIT_INVALID


def test_parse_error_exit_code(scenario_file, capsys):
    assert cli.main(["check", scenario_file("r = 10\nwat = 1\n")]) == cli.EXIT_INVALID
    assert ":2:1: unknown key" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert cli.main(["single", str(tmp_path / "absent.txt")]) == cli.EXIT_INVALID


def test_fatal_parameters(scenario_file):
    assert cli.main(["single", scenario_file("r = 1\nc = 1\nlambda = 1\n")]) == cli.EXIT_INVALID


def test_single(scenario_file, capsys):
    assert cli.main(["single", scenario_file(HIGH_TECH)]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0].split() == ["contract", "wholesale"]
    assert "efficiency" in out


def test_penalty_kind_and_csv(scenario_file, tmp_path, capsys):
    out_path = tmp_path / "reports" / "penalty.csv"
    code = cli.main(["--out", str(out_path), "penalty", "--kind", "unit_penalty", scenario_file(HIGH_TECH)])
    assert code == cli.EXIT_OK
    assert "unit_penalty" in capsys.readouterr().out
    table = read_table(out_path)
    assert table.loc[0, "contract"] == "unit_penalty"
    assert table.loc[0, "penalty"] == pytest.approx(9.593e6, rel=1e-3)


def test_renewal_coordinate_and_optimize(scenario_file, capsys):
    path = scenario_file(RENEWAL)
    assert cli.main(["renewal", path]) == cli.EXIT_OK
    coordinated = capsys.readouterr().out
    assert "renewal_endogenous" in coordinated
    assert "2.66216" in coordinated
    assert cli.main(["renewal", "--optimize", path]) == cli.EXIT_OK
    assert "profit_difference_pct" in capsys.readouterr().out


def test_simulate(scenario_file, capsys):
    code = cli.main(["--seed", "11", "simulate", "--replications", "2000", scenario_file(RENEWAL)])
    assert code == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "sim_supplier_npv" in out
    assert "sim_duration" in out


@pytest.mark.parametrize("argv,field", [
    (["simulate", "--replications", "0"], "replications"),
    (["--seed", "-1", "simulate"], "seed"),
])
def test_invalid_simulation_settings_exit_code(scenario_file, capsys, argv, field):
    code = cli.main(argv + [scenario_file(RENEWAL)])
    assert code == cli.EXIT_INVALID
    err = capsys.readouterr().err
    assert f"error: invalid input: {field}" in err
    assert "Traceback" not in err


def test_report_csv_only_with_out(scenario_file, tmp_path):
    assert cli.main(["single", scenario_file(HIGH_TECH)]) == cli.EXIT_OK
    assert not (tmp_path / "output").exists()
    assert cli.main(["--out", "single.csv", "single", scenario_file(HIGH_TECH)]) == cli.EXIT_OK
    assert len(read_table(tmp_path / "output" / "single.csv")) == 1


def test_strict_applies_to_report_commands(scenario_file):
    path = scenario_file("r = 1.5\nc = 1\nlambda = 1\n")
    assert cli.main(["single", path]) == cli.EXIT_OK
    assert cli.main(["--strict", "single", path]) == cli.EXIT_INVALID


def test_solver_failure_exit_code(scenario_file, monkeypatch):
    def fail(*args, **kwargs):
        raise BracketFailure("no sign change")

    monkeypatch.setattr("contract_lab.experiments.reports.coordinated_renewal_report", fail)
    assert cli.main(["renewal", scenario_file(RENEWAL)]) == cli.EXIT_SOLVER


@pytest.mark.parametrize("exc,code", [
    (BracketFailure("x"), cli.EXIT_SOLVER),
    (ClosedFormUnavailable("x"), cli.EXIT_SOLVER),
    (ParseError("x", 1, 1), cli.EXIT_INVALID),
    (ReservationTooHigh("x"), cli.EXIT_INVALID),
])
def test_exit_code_mapping(exc, code):
    assert cli.exit_code_for(exc) == code


def test_factorial_partial(tmp_path, capsys):
    grid = tmp_path / "grid.txt"
    grid.write_text("r_minus_k = 0.5, 10\nlambda = 1\ndelta = 0.9\n")
    out_path = tmp_path / "fact.csv"
    code = cli.main(["--out", str(out_path), "factorial", "--grid", str(grid), "--threads", "1"])
    assert code == cli.EXIT_PARTIAL
    assert "1 of 2 cells failed" in capsys.readouterr().out
    assert len(read_table(out_path)) == 2
    assert (tmp_path / "fact_summary.csv").exists()


def test_figure(tmp_path, capsys):
    assert cli.main(["figure", "coord_price"]) == cli.EXIT_OK
    assert "wrote 49 rows" in capsys.readouterr().out
    assert (tmp_path / "output" / "coord_price.csv").exists()
    assert cli.main(["figure", "nope"]) == cli.EXIT_INVALID
