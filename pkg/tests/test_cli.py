"""End-to-end tests for the `simulate` command line."""

import json
import os

import pytest

from wynersim import cli


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestSplit:
    def test_golden_equal_strength(self, capsys):
        code, out, _ = _run(capsys, "split", "--btot", "8",
                            "--rho-d-db", "10", "--alpha", "1")
        assert code == 0
        assert out == "B_d=2 B_i=6\n"

    def test_golden_weak_interferer(self, capsys):
        rho_i_db = "10"  # alpha applied separately below
        code, out, _ = _run(capsys, "split", "--btot", "8",
                            "--rho-d-db", rho_i_db, "--alpha", "0.000158")
        assert code == 0
        assert out == "B_d=8 B_i=0\n"

    def test_clamp_flags(self, capsys):
        code, out, _ = _run(capsys, "split", "--btot", "8", "--rho-d-db", "10",
                            "--alpha", "1", "--clamp-lo", "3", "--clamp-hi", "5")
        assert code == 0
        assert out == "B_d=3 B_i=5\n"

    def test_alpha_out_of_range(self, capsys):
        code, _, err = _run(capsys, "split", "--btot", "8",
                            "--rho-d-db", "10", "--alpha", "1.5")
        assert code == 2
        assert "alpha" in err


class TestList:
    def test_lists_all_figures(self, capsys):
        code, out, _ = _run(capsys, "--list")
        assert code == 0
        for fig in ("fig3", "fig5", "fig9"):
            assert fig in out
        assert "mean_loss_vs_bd" in out

    def test_no_subcommand_is_usage_error(self, capsys):
        code, _, err = _run(capsys)
        assert code == 2
        assert "usage" in err


class TestRun:
    def test_csv_to_stdout(self, capsys):
        code = cli.main(["fig8", "--out", "/dev/stdout"])
        assert code == 0

    def test_csv_to_file_and_rerun_identical(self, tmp_path, capsys):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["fig6", "--trials", "100", "--seed", "5",
                "--alpha", "1", "--btot", "4"]
        assert cli.main(argv + ["--out", str(p1)]) == 0
        assert cli.main(argv + ["--out", str(p2)]) == 0
        assert p1.read_bytes() == p2.read_bytes()
        head = p1.read_bytes().split(b"\n", 1)[0]
        assert head == b"alpha,arm,mean,stderr,trials"

    def test_json_meta(self, tmp_path, capsys):
        p = tmp_path / "t.json"
        code = cli.main(["fig8", "--btot", "6", "--format", "json",
                         "--out", str(p)])
        assert code == 0
        doc = json.loads(p.read_text())
        assert doc["meta"]["figure"] == "fig8"
        assert doc["meta"]["params"]["B_tot"] == 6
        assert doc["columns"] == ["alpha_tilde_db", "B_d", "B_i"]

    def test_custom_subcommand(self, tmp_path, capsys):
        p = tmp_path / "c.csv"
        code = cli.main(["custom", "--figure", "fig3", "--trials", "100",
                         "--alpha", "1", "--rho-d-db", "0,10",
                         "--out", str(p)])
        assert code == 0
        assert p.read_bytes().count(b"\n") == 5  # header + 2 rho x 2 metrics

    def test_config_error_exit_2(self, capsys):
        code, _, err = _run(capsys, "fig6", "--trials", "100", "--btot", "5")
        assert code == 2
        assert "B_tot" in err

    def test_bad_trials_exit_2(self, capsys):
        code, _, err = _run(capsys, "fig3", "--trials", "10")
        assert code == 2
        assert "trials" in err

    def test_io_error_exit_1(self, tmp_path, capsys):
        code, _, err = _run(capsys, "fig8", "--out",
                            str(tmp_path / "no" / "such" / "dir" / "x.csv"))
        assert code == 1
        assert "cannot write" in err
