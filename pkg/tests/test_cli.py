"""
Tests for the painleve-separatrix CLI.

Covers argument parsing, the layered run configuration, artifact writers and
the exit-code mapping of ``main``. Commands that need eigenvalue solves are
driven through a patched ``run`` or from a prepared input file.
"""

import argparse
import json
import logging
import subprocess
import sys
from pathlib import Path
from unittest.mock import patch

import pytest

from painleve_separatrix.asymptotics import slope_from_energy, wkb_energy
from painleve_separatrix.cli.args import create_parser, index_list, parse_args
from painleve_separatrix.cli.config import RunConfig, build_config, load_config_file, validate_config
from painleve_separatrix.cli.formatters import (
    EIGENVALUE_COLUMNS,
    TRACE_COLUMNS,
    eigenvalue_rows,
    emit_trace,
    format_value,
    print_summary_to_stderr,
    read_eigenvalues,
    read_table,
    write_table,
)
from painleve_separatrix.cli.main import main
from painleve_separatrix.cli.pipeline import CommandResult
from painleve_separatrix.exceptions import (
    MaxStepsExceededError,
    PainleveConfigurationError,
    PainleveReproductionError,
)
from painleve_separatrix.models import Checkpoint, EigenvalueKind, PainleveState, PoleEvent, SolveRecord, WkbParams


@pytest.fixture(autouse=True)
def restore_logging():
    """main() reconfigures the root logger; put it back after each test."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.mark.unit
@pytest.mark.cli
class TestArgs:
    @pytest.mark.parametrize(
        "text, expected",
        [("1..4", [1, 2, 3, 4]), ("2,4,8", [2, 4, 8]), ("7", [7]), ("3,", [3])],
    )
    def test_index_list(self, text, expected):
        assert index_list(text) == expected

    def test_index_list_rejects_garbage(self):
        with pytest.raises(argparse.ArgumentTypeError):
            index_list("a..b")

    def test_create_parser(self):
        parser = create_parser()
        assert parser.prog == "painleve-separatrix"

    def test_eigen_flags(self):
        args = parse_args(["eigen", "--kind", "value", "--n-max", "4", "--bracket", "-2.1", "-1.9"])
        assert args.command == "eigen"
        assert args.kind == "value"
        assert args.n_max == 4
        assert args.bracket == [-2.1, -1.9]
        assert args.workers is None

    def test_shared_flags_default_to_none(self):
        args = parse_args(["eigen"])
        assert args.rel_tol is None
        assert args.horizon is None
        assert args.output_format is None

    def test_toy_sets_kind(self):
        assert parse_args(["toy", "--n-max", "3"]).kind == "toy"

    def test_audit_defaults(self):
        args = parse_args(["audit"])
        assert args.levels == [2, 4, 8, 12]
        assert args.x_max == 1.0

    def test_wkb_levels(self):
        assert parse_args(["wkb", "--n", "1..3"]).levels == [1, 2, 3]

    @pytest.mark.parametrize(
        "argv",
        [
            ["eigen", "--bracket", "2", "1"],
            ["audit", "--n", "0"],
            ["audit", "--x-max", "-1"],
            ["wkb", "--g", "0"],
            ["wkb", "--epsilon", "-1"],
            ["extrapolate", "--order", "-1"],
        ],
    )
    def test_invalid_values(self, argv):
        with pytest.raises(PainleveConfigurationError):
            parse_args(argv)

    def test_toy_is_not_an_eigen_kind(self):
        with pytest.raises(SystemExit):
            parse_args(["eigen", "--kind", "toy"])

    def test_missing_command(self):
        with pytest.raises(SystemExit):
            parse_args([])


@pytest.mark.unit
@pytest.mark.cli
class TestConfig:
    def test_load_config_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("# tighter run\nrel_tol = 1e-13  # inline\nworkers = 4\nscan_step = none\n")
        assert load_config_file(path) == {"rel_tol": 1e-13, "workers": 4, "scan_step": None}

    def test_unknown_key_names_its_line(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("rel_tol = 1e-13\n# comment\nbogus = 3\n")
        with pytest.raises(PainleveConfigurationError) as exc_info:
            load_config_file(path)
        assert "line 3" in str(exc_info.value)
        assert exc_info.value.details["parameter"] == "bogus"
        assert exc_info.value.details["line"] == 3

    def test_unparsable_value(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("workers = many\n")
        with pytest.raises(PainleveConfigurationError) as exc_info:
            load_config_file(path)
        assert exc_info.value.details["parameter"] == "workers"

    def test_missing_file(self, tmp_path):
        with pytest.raises(PainleveConfigurationError):
            load_config_file(tmp_path / "absent.cfg")

    def test_flags_beat_file_beat_defaults(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("workers = 4\nh_max = 0.05\n")
        config = build_config(parse_args(["eigen", "--config", str(path), "--workers", "2"]))
        assert config.workers == 2
        assert config.h_max == 0.05
        assert config.rel_tol == 1e-12
        settings = config.solver_settings()
        assert settings.control.h_max == 0.05
        assert settings.workers == 2

    def test_refinement_keys(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("refine_method = RK45\nrefine_factor = 4\n")
        config = build_config(parse_args(["eigen", "--config", str(path)]))
        settings = config.solver_settings()
        assert (settings.refine_method, settings.refine_factor) == ("RK45", 4.0)
        assert settings.refined(4).control.rel_tol == pytest.approx(2.5e-13)

    def test_command_options(self):
        config = build_config(parse_args(["audit", "--n", "2,4", "--angle", "-2.0"]))
        assert config.options["levels"] == [2, 4]
        assert config.options["angle"] == -2.0
        assert "workers" not in config.options

    def test_eigenvalue_kind(self):
        assert RunConfig(kind="value").eigenvalue_kind() == EigenvalueKind.value(0.0)
        assert RunConfig(kind="slope", fixed_datum=2.0).eigenvalue_kind() == EigenvalueKind.slope(2.0)
        assert RunConfig(kind="toy").eigenvalue_kind() == EigenvalueKind.toy()

    @pytest.mark.parametrize(
        "overrides",
        [
            {"kind": "both"},
            {"n_max": 0},
            {"output_format": "xml"},
            {"method": "Euler"},
            {"refine_method": "Euler"},
            {"refine_factor": 0.5},
            {"rel_tol": -1.0},
            {"kind": "slope", "fixed_datum": 0.0},
        ],
    )
    def test_validate_config(self, overrides):
        with pytest.raises(PainleveConfigurationError):
            validate_config(RunConfig(**overrides))

    def test_output_dir_must_be_a_directory(self, tmp_path):
        path = tmp_path / "file"
        path.write_text("")
        with pytest.raises(PainleveConfigurationError):
            validate_config(RunConfig(output_dir=path))


@pytest.mark.unit
@pytest.mark.cli
class TestFormatters:
    def test_format_value(self):
        assert format_value(0.1) == "0.1"
        assert format_value(True) == "true"
        assert format_value(3) == "3"
        assert format_value(-1.98740393) == "-1.98740393"

    def test_csv_round_trip(self, output_dir, slope_records):
        records = slope_records(3)
        target = write_table(output_dir / "eigenvalues_b.csv", EIGENVALUE_COLUMNS, eigenvalue_rows(records))
        text = target.read_text()
        assert text.startswith("n,value,bracket_width,pole_count,flagged\n")
        assert "\r" not in text
        assert read_eigenvalues(target) == [(r.n, r.value, r.bracket_width) for r in records]

    def test_json_table(self, output_dir, slope_records):
        records = slope_records(2)
        target = write_table(output_dir / "eigenvalues_b.csv", EIGENVALUE_COLUMNS, eigenvalue_rows(records), "json")
        assert target.suffix == ".json"
        payload = json.loads(target.read_text())
        assert payload[1]["n"] == 2
        assert payload[1]["flagged"] is False
        assert read_eigenvalues(target) == [(r.n, r.value, r.bracket_width) for r in records]

    def test_missing_width_reads_as_zero(self, output_dir):
        target = write_table(output_dir / "values.csv", ("n", "value"), [(1, 3.15837325)])
        assert read_eigenvalues(target) == [(1, 3.15837325, 0.0)]

    def test_identical_runs_write_identical_files(self, tmp_path, slope_records):
        rows = eigenvalue_rows(slope_records(4))
        first = write_table(tmp_path / "a" / "t.csv", EIGENVALUE_COLUMNS, rows)
        second = write_table(tmp_path / "b" / "t.csv", EIGENVALUE_COLUMNS, rows)
        assert first.read_bytes() == second.read_bytes()

    def test_trace_of_initial_only_record(self, output_dir):
        trace, sidecar = emit_trace(SolveRecord(initial=PainleveState(0j, 1 + 0j, 2 + 0j)), output_dir / "trace.csv")
        assert trace.read_text() == ",".join(TRACE_COLUMNS) + "\n"
        assert sidecar.name == "trace.poles.csv"
        assert read_table(sidecar) == []

    def test_trace_rows(self, output_dir):
        record = SolveRecord(
            initial=PainleveState(0j, 1 + 0j, 0j),
            checkpoints=[Checkpoint(-1.0 + 0j, 2.0 + 0j, 3.0 + 0j, 1.0)],
            poles=[PoleEvent(-0.5 + 0j, 1 + 0j, -0.45 + 0j, 0.1)],
        )
        trace, sidecar = emit_trace(record, output_dir / "trace.csv")
        [row] = read_table(trace)
        assert (float(row["re_t"]), float(row["re_y"]), float(row["re_yp"])) == (-1.0, 2.0, 3.0)
        [pole] = read_table(sidecar)
        assert float(pole["re_t0"]) == -0.5
        assert float(pole["re_residue"]) == 1.0

    def test_print_summary_to_stderr(self, capsys):
        print_summary_to_stderr("slope eigenvalues", ["n= 1: 3.1583732500"], [Path("eigenvalues_b.csv")])
        captured = capsys.readouterr()
        assert "SLOPE EIGENVALUES" in captured.err
        assert "eigenvalues_b.csv" in captured.err
        assert captured.out == ""


@pytest.mark.unit
@pytest.mark.cli
class TestMainExitCodes:
    def test_success(self, output_dir):
        with patch("painleve_separatrix.cli.main.run", return_value=CommandResult("done")):
            assert main(["eigen", "--output-dir", str(output_dir), "--quiet"]) == 0

    def test_configuration_error(self, output_dir, capsys):
        assert main(["eigen", "--n-max", "0", "--output-dir", str(output_dir)]) == 2
        assert "Configuration error" in capsys.readouterr().err

    def test_numerical_failure_writes_report(self, output_dir):
        error = MaxStepsExceededError("step budget exhausted", details={"t": "(-3.2+0j)"})
        with patch("painleve_separatrix.cli.main.run", side_effect=error), patch("sys.stderr"):
            assert main(["eigen", "--output-dir", str(output_dir)]) == 3
        report = json.loads((output_dir / "error_report.json").read_text())
        assert report["error_type"] == "MaxStepsExceededError"
        assert report["command"] == "eigen"
        assert report["details"] == {"t": "(-3.2+0j)"}

    def test_unexpected_error_is_wrapped(self, output_dir):
        with patch("painleve_separatrix.cli.main.run", side_effect=RuntimeError("overflow")), patch("sys.stderr"):
            assert main(["toy", "--output-dir", str(output_dir)]) == 3
        report = json.loads((output_dir / "error_report.json").read_text())
        assert report["error_type"] == "PainleveIntegrationError"
        assert report["details"]["error_type"] == "RuntimeError"

    def test_reproduction_mismatch(self, output_dir, capsys):
        error = PainleveReproductionError("1 check(s) disagree", details={"failed": ["b_11"]})
        with patch("painleve_separatrix.cli.main.run", side_effect=error):
            assert main(["reproduce", "--output-dir", str(output_dir)]) == 4
        assert "b_11" in capsys.readouterr().err

    def test_keyboard_interrupt(self, output_dir):
        with patch("painleve_separatrix.cli.main.run", side_effect=KeyboardInterrupt()), patch("sys.stderr"):
            assert main(["eigen", "--output-dir", str(output_dir)]) == 1

    def test_usage_error_exits(self):
        with pytest.raises(SystemExit) as exc_info, patch("sys.stderr"):
            main(["nonsense"])
        assert exc_info.value.code == 2


@pytest.mark.integration
@pytest.mark.cli
class TestCommands:
    def test_wkb(self, output_dir):
        assert main(["wkb", "--n", "1..3", "--output-dir", str(output_dir), "--quiet"]) == 0
        rows = read_table(output_dir / "wkb.csv")
        assert [int(r["n"]) for r in rows] == [1, 2, 3]
        energy = wkb_energy(WkbParams(0.125, 4.0, 2))
        assert float(rows[1]["energy"]) == energy
        assert float(rows[1]["slope"]) == slope_from_energy(energy)

    def test_wkb_json_with_instrumentation(self, output_dir):
        argv = ["wkb", "--n", "1,2", "--format", "json", "--instrument", "--output-dir", str(output_dir), "--quiet"]
        assert main(argv) == 0
        assert len(json.loads((output_dir / "wkb.json").read_text())) == 2
        assert (output_dir / "performance.json").exists()

    def test_extrapolate_from_input(self, output_dir, slope_records):
        source = write_table(output_dir / "input.csv", EIGENVALUE_COLUMNS, eigenvalue_rows(slope_records(10)))
        argv = ["extrapolate", "--kind", "slope", "--input", str(source), "--order", "4"]
        assert main(argv + ["--output-dir", str(output_dir), "--quiet"]) == 0
        rows = read_table(output_dir / "extrapolation_slope.csv")
        assert [int(r["order"]) for r in rows] == [0, 1, 2, 3, 4]
        assert float(rows[-1]["limit"]) == pytest.approx(4.256843, abs=1e-6)

    def test_extrapolate_refuses_noisy_high_order(self, output_dir, slope_records):
        source = write_table(output_dir / "input.csv", EIGENVALUE_COLUMNS, eigenvalue_rows(slope_records(10)))
        argv = ["extrapolate", "--kind", "slope", "--input", str(source), "--order", "7"]
        with patch("sys.stderr"):
            assert main(argv + ["--output-dir", str(output_dir), "--quiet"]) == 3
        report = json.loads((output_dir / "error_report.json").read_text())
        assert report["error_type"] == "NoiseGuardError"
        assert report["details"]["noise"] == 1e-9
        assert report["details"]["order"] == 7

    def test_extrapolate_falls_back_to_tol_for_noise(self, output_dir):
        rows = [(n, 4.256843 * n**0.75 * (1.0 + 1.0 / n)) for n in range(1, 11)]
        source = write_table(output_dir / "input.csv", ("n", "value"), rows)
        argv = ["extrapolate", "--kind", "slope", "--input", str(source), "--order", "7", "--tol", "1e-6"]
        with patch("sys.stderr"):
            assert main(argv + ["--output-dir", str(output_dir), "--quiet"]) == 3
        report = json.loads((output_dir / "error_report.json").read_text())
        assert report["details"]["noise"] == 1e-6

    def test_config_file_drives_the_run(self, tmp_path):
        out = tmp_path / "from_config"
        config = tmp_path / "run.cfg"
        config.write_text(f"output_dir = {out}\noutput_format = json\n")
        assert main(["wkb", "--n", "1", "--config", str(config), "--quiet"]) == 0
        assert (out / "wkb.json").exists()

    def test_module_help(self):
        project_root = Path(__file__).parent.parent
        result = subprocess.run(
            [sys.executable, "-m", "painleve_separatrix.cli", "--help"],
            capture_output=True,
            text=True,
            cwd=project_root,
            check=False,
        )
        assert result.returncode == 0
        assert "usage:" in result.stdout
        assert "reproduce" in result.stdout


@pytest.mark.unit
def test_timeout_plugin_is_active(pytestconfig):
    # slow reproductions rely on their timeout marks
    assert pytestconfig.pluginmanager.hasplugin("timeout")
    assert str(pytestconfig.getini("timeout")) == "120"
