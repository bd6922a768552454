import csv
import io
import json

import pytest

from heatlab import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spectrum_negative_range(capsys):
    code, out, _ = run(capsys, "spectrum", "--model", "ab-disk", "--nu", "0.3", "--k", "-5..5", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 11
    assert float(rows[0]["value"]) == pytest.approx(5.3)


def test_trace_uses_17_digits(capsys):
    code, out, _ = run(capsys, "trace", "--model", "ab-disk", "--nu", "0.3", "--t", "0.1", "--format", "csv")
    assert code == 0
    value = next(csv.DictReader(io.StringIO(out)))["value"]
    assert len(value.replace(".", "").lstrip("0")) == 17


def test_json_output_round_trips(tmp_path, capsys):
    first = tmp_path / "first.json"
    code, _, _ = run(capsys, "trace", "--model", "sphere-landau", "--m", "2", "--t", "0.25,0.5",
                     "--format", "json", "--output", str(first))
    assert code == 0
    doc = json.loads(first.read_text())
    assert doc["schema_version"] == 1
    code, out, _ = run(capsys, "--config", str(first))
    assert code == 0
    assert json.loads(out)["rows"] == doc["rows"]


def test_flags_override_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"command": "trace", "model": {"kind": "ab-disk", "nu": 0.3}, "t_grid": [0.5]}))
    code, out, _ = run(capsys, "trace", "--config", str(cfg), "--nu", "0.4", "--format", "json")
    assert code == 0
    assert json.loads(out)["config"]["model"]["nu"] == 0.4


def test_flag_foreign_to_model_is_rejected(capsys):
    code, _, err = run(capsys, "trace", "--model", "ab-disk", "--b", "1", "--t", "0.1")
    assert code == 1
    assert "does not apply" in err


@pytest.mark.parametrize("argv", [
    ["trace", "--model", "ab-disk", "--nu", "0.3", "--t", "0.1", "--tol", "0.5"],
    ["trace", "--model", "ab-disk", "--nu", "0.3", "--t", "0.5,0.1"],
    ["trace", "--model", "ab-disk", "--nu", "0.3", "--t", "1e-6"],
    ["spectrum", "--model", "ab-disk", "--nu", "0.3", "--k", "5..1"],
    ["trace", "--model", "const-field-disk", "--b", "5", "--t", "0.1"],
    ["bogus"],
])
def test_invalid_configurations_exit_1(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 1


def test_expand_relative_const_field(capsys):
    code, out, _ = run(capsys, "expand", "--model", "const-field-disk", "--b", "0.5", "--relative",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    log_rows = [r for r in doc["rows"] if r[1]]
    assert log_rows == [["3", True, -0.125]]


def test_sweep_rows(capsys):
    code, out, _ = run(capsys, "sweep", "--model", "iso-oscillator", "--param", "b", "--values", "0.5,1",
                       "--t", "0.2,1", "--format", "csv")
    assert code == 0
    assert len(list(csv.DictReader(io.StringIO(out)))) == 4


def test_cross_check_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "cross-check", "--model", "ab-disk", "--nu", "0.2",
                       "--t", "0.1,1")
    assert code == 0
    assert "true" in out


def test_failing_criterion_exits_3(capsys):
    code, _, _ = run(capsys, "verify", "--criteria", "12")
    assert code == 3


def test_passing_criterion_exits_0(capsys):
    code, _, _ = run(capsys, "verify", "--criteria", "1")
    assert code == 0
