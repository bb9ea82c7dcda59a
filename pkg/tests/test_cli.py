import csv
import subprocess
import sys

import pytest

from tracefem.cli import SUMMARY_COLUMNS, main, parse_args, parse_levels


def _read(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def test_parse_levels():
    assert parse_levels("2..5") == [2, 3, 4, 5]
    assert parse_levels("1,3") == [1, 3]


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["converge", "--levels", "a..b"],
    ["killing", "--dt", "-1"],
    ["converge", "--level", "3"],
    ["sweep-cp", "--c-p", "0"],
])
def test_usage_errors_exit_2(argv, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(argv + ["--output-dir", str(tmp_path)])
    assert exc.value.code == 2


def test_config_values_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nc_p = 5\ndt = 0.2\nno-timing = true\n")
    _, args = parse_args(["killing", "--config", str(cfg), "--dt", "0.05"])
    assert args.c_p == 5.0 and args.dt == 0.05 and args.no_timing
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n")
    with pytest.raises(SystemExit) as exc:
        parse_args(["killing", "--config", str(bad)])
    assert exc.value.code == 2


def test_converge_outputs_and_determinism(tmp_path):
    outs = [tmp_path / "a", tmp_path / "b"]
    for out in outs:
        status = main(["converge", "--levels", "1..2", "--no-timing", "--vtk", "-v",
                       "--output-dir", str(out)])
        assert status == 0
    text = [(o / "summary.csv").read_text() for o in outs]
    assert text[0] == text[1]
    rows = _read(outs[0] / "summary.csv")
    assert list(rows[0]) == SUMMARY_COLUMNS and len(rows) == 2
    assert all(r["wall_seconds"] == "" for r in rows)
    assert len(_read(outs[0] / "rates.csv")) == 5
    assert (outs[0] / "fields_converge_l2.vtk").stat().st_size > 0
    assert _read(outs[0] / "residuals.csv")


def test_unconverged_run_exits_1(tmp_path):
    status = main(["converge", "--levels", "1", "--max-iters", "2", "--output-dir", str(tmp_path)])
    assert status == 1
    assert float(_read(tmp_path / "summary.csv")[0]["wall_seconds"]) >= 0


def test_killing_and_cond_study(tmp_path):
    assert main(["killing", "--level", "1", "--dt", "0.5", "--output-dir", str(tmp_path)]) == 0
    energy = _read(tmp_path / "energy_killing_l1_dt0.5.csv")
    assert len(energy) == 11
    assert _read(tmp_path / "decay.csv")[0]["lambda"] != ""
    assert main(["cond-study", "--levels", "0..1", "--shifts", "2", "--shift-level", "0",
                 "--output-dir", str(tmp_path)]) == 0
    assert len(_read(tmp_path / "condition.csv")) == 4


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "tracefem", "sweep-cp", "--level", "1",
                        "--values", "1,5", "--output-dir", str(tmp_path)],
                       capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert [row["c_p"] for row in _read(tmp_path / "summary.csv")] == ["1.0", "5.0"]
