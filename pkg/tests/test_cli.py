import math

import pytest

from cavityberry.cli import load_config, main
from cavityberry.sweep import parse_csv

FAST_FLAGS = ["--tol", "1e-7", "--n-start", "10", "--n-step", "10", "--n-cap", "200"]


def run_cli(args):
    return main(args)


class TestConfigFile:
    def test_parses_keys_comments_blank_lines(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "# sweep setup\n"
            "model = rabi\n"
            "g-start = 0.0\n"
            "g_stop = 1.0   # inline comment\n"
            "g-count = 3\n"
            "\n"
            "strict = true\n"
        )
        values = load_config(str(cfg))
        assert values == {
            "model": "rabi", "g_start": "0.0", "g_stop": "1.0",
            "g_count": "3", "strict": "true",
        }

    def test_missing_file_is_input_error(self, tmp_path, capsys):
        rc = run_cli(["sweep", "--config", str(tmp_path / "absent.cfg")])
        assert rc == 1
        assert "error:" in capsys.readouterr().err

    def test_malformed_line_is_input_error(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("just words\n")
        rc = run_cli(["sweep", "--config", str(cfg)])
        assert rc == 1

    def test_unknown_key_is_input_error(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("wibble = 3\n")
        assert run_cli(["sweep", "--config", str(cfg)]) == 1


class TestSweepCommand:
    def test_writes_csv_and_svg(self, tmp_path):
        out = tmp_path / "sweep.csv"
        svg = tmp_path / "sweep.svg"
        rc = run_cli(["sweep", "--model", "rabi", "--g-start", "0", "--g-stop", "1",
                      "--g-count", "3", "--out", str(out), "--svg", str(svg)] + FAST_FLAGS)
        assert rc == 0
        records = parse_csv(out.read_text())
        assert len(records) == 3
        assert records[2].gamma_variational == pytest.approx(2 * math.pi * 0.9375, abs=1e-10)
        assert svg.read_text().count("<polyline") == 2

    def test_stdout_when_no_out(self, capsys):
        rc = run_cli(["sweep", "--g-start", "0", "--g-stop", "0.4", "--g-count", "2",
                      "--methods", "variational"])
        assert rc == 0
        captured = capsys.readouterr().out
        assert captured.splitlines()[0].startswith("g,gamma_numeric")

    def test_config_file_with_flag_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "model = rabi\ng-start = 0\ng-stop = 1\ng-count = 5\n"
            "tol = 1e-7\nn-start = 10\nn-step = 10\nn-cap = 200\n"
            "methods = variational\n"
        )
        out = tmp_path / "a.csv"
        rc = run_cli(["sweep", "--config", str(cfg), "--g-count", "2", "--out", str(out)])
        assert rc == 0
        assert len(parse_csv(out.read_text())) == 2  # flag beat the file

    def test_invalid_grid_exit_1(self, capsys):
        rc = run_cli(["sweep", "--g-start", "1", "--g-stop", "0.5"])
        assert rc == 1
        assert "invalid input" in capsys.readouterr().err

    def test_usage_error_exit_1(self, capsys):
        # argparse's own exit code 2 is remapped: 2 means non-convergence
        rc = run_cli(["sweep", "--no-such-flag"])
        assert rc == 1
        capsys.readouterr()

    def test_help_exit_0(self, capsys):
        assert run_cli(["--help"]) == 0
        capsys.readouterr()

    def test_strict_unconverged_exit_2(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        rc = run_cli(["sweep", "--g-start", "1.8", "--g-stop", "2.0", "--g-count", "2",
                      "--tol", "1e-12", "--n-start", "2", "--n-step", "2",
                      "--n-cap", "6", "--out", str(out), "--strict"])
        assert rc == 2
        assert "not converged" in capsys.readouterr().err
        # rows are still written, flagged in-band
        records = parse_csv(out.read_text())
        assert all(not r.converged for r in records)

    def test_unconverged_without_strict_exit_0(self, tmp_path):
        out = tmp_path / "sweep.csv"
        rc = run_cli(["sweep", "--g-start", "1.8", "--g-stop", "2.0", "--g-count", "2",
                      "--tol", "1e-12", "--n-start", "2", "--n-step", "2",
                      "--n-cap", "6", "--out", str(out)])
        assert rc == 0

    def test_deterministic_byte_identical(self, tmp_path):
        args = ["sweep", "--model", "rabi", "--g-start", "0", "--g-stop", "0.8",
                "--g-count", "3"] + FAST_FLAGS
        outs = []
        for name in ("a", "b"):
            out = tmp_path / f"{name}.csv"
            svg = tmp_path / f"{name}.svg"
            assert run_cli(args + ["--out", str(out), "--svg", str(svg)]) == 0
            outs.append((out.read_bytes(), svg.read_bytes()))
        assert outs[0] == outs[1]


class TestOtherCommands:
    def test_variational_rabi(self, capsys):
        rc = run_cli(["variational", "--model", "rabi", "--lam", "1.0"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "regime = superradiant" in out
        assert "critical_coupling = 0.5" in out

    def test_variational_lambda3(self, capsys):
        rc = run_cli(["variational", "--model", "lambda3", "--lam", "0.2"])
        assert rc == 0
        assert "regime = normal" in capsys.readouterr().out

    def test_demo_controversy(self, tmp_path, capsys):
        out = tmp_path / "demo.csv"
        rc = run_cli(["demo-controversy", "--lam", "0.5", "--steps", "128",
                      "--tol", "1e-6", "--out", str(out)])
        assert rc == 0
        text = capsys.readouterr().out
        assert "jc" in text and "rabi" in text
        assert out.read_text().startswith("case,")

    def test_diag_stdout(self, capsys):
        rc = run_cli(["diag", "--model", "rabi", "--lam", "0.4", "--n-max", "12",
                      "--levels", "4"])
        assert rc == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "index,energy,gamma,mean_photon,parity"
        assert len(lines) == 5

    def test_plot_from_csv(self, tmp_path):
        out = tmp_path / "sweep.csv"
        svg = tmp_path / "plot.svg"
        assert run_cli(["sweep", "--g-start", "0", "--g-stop", "1", "--g-count", "3",
                        "--out", str(out)] + FAST_FLAGS) == 0
        rc = run_cli(["plot", "--records", str(out), "--svg", str(svg),
                      "--title", "replot"])
        assert rc == 0
        content = svg.read_text()
        assert content.count("<polyline") == 2
        assert ">replot</text>" in content

    def test_plot_missing_records_flag(self, capsys):
        assert run_cli(["plot"]) == 1

    def test_plot_missing_file(self, tmp_path):
        assert run_cli(["plot", "--records", str(tmp_path / "nope.csv")]) == 1
