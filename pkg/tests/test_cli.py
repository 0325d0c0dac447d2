import json

import pytest

from rigidcomp.cli import (
    EXIT_CERTIFY,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_TOO_LARGE,
    EXIT_USAGE,
    main,
)
from rigidcomp.graphs import read_edge_list, sample_gnp, write_edge_list

TRIANGLE_TEXT = "3 3\n0 1\n0 2\n1 2\n"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGen:
    def test_writes_edge_list(self, capsys, tmp_path):
        out = tmp_path / "g.txt"
        code, _, err = run(capsys, "gen", "--n", "30", "--p", "0.2", "--seed", "9",
                           "--out", str(out))
        assert code == EXIT_OK
        assert "seed: 9" in err
        assert read_edge_list(out) == sample_gnp(30, 0.2, 9)

    def test_c_parameterization(self, capsys, tmp_path):
        out = tmp_path / "g.txt"
        code, _, _ = run(capsys, "gen", "--n", "100", "--c", "4.5", "--seed", "1",
                         "--out", str(out))
        assert code == EXIT_OK
        assert read_edge_list(out) == sample_gnp(100, 0.045, 1)

    def test_stdout_default(self, capsys):
        code, out, _ = run(capsys, "gen", "--n", "3", "--p", "1.0")
        assert code == EXIT_OK
        assert out == TRIANGLE_TEXT

    def test_deterministic(self, capsys):
        _, out1, _ = run(capsys, "gen", "--n", "40", "--p", "0.1", "--seed", "5")
        _, out2, _ = run(capsys, "gen", "--n", "40", "--p", "0.1", "--seed", "5")
        assert out1 == out2

    def test_p_and_c_conflict(self, capsys):
        code, _, _ = run(capsys, "gen", "--n", "10", "--p", "0.1", "--c", "2.0")
        assert code == EXIT_USAGE

    def test_neither_p_nor_c(self, capsys):
        code, _, _ = run(capsys, "gen", "--n", "10")
        assert code == EXIT_USAGE

    def test_bad_p(self, capsys):
        code, _, _ = run(capsys, "gen", "--n", "10", "--p", "1.5")
        assert code == EXIT_USAGE


class TestDecompose:
    def test_triangle(self, capsys, tmp_path):
        src = tmp_path / "tri.txt"
        src.write_text(TRIANGLE_TEXT)
        code, out, _ = run(capsys, "decompose", "--in", str(src))
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["n"] == 3 and payload["m"] == 3
        assert payload["components"] == [
            {"vertices": [0, 1, 2], "edge_count": 3, "trivial": False}
        ]
        assert payload["largest_span"] == 3

    def test_json_file_output(self, capsys, tmp_path):
        src = tmp_path / "g.txt"
        dst = tmp_path / "out.json"
        write_edge_list(sample_gnp(40, 0.15, 3), src)
        code, _, _ = run(capsys, "decompose", "--in", str(src), "--out", str(dst))
        assert code == EXIT_OK
        payload = json.loads(dst.read_text())
        assert payload["m"] == sum(c["edge_count"] for c in payload["components"])

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "decompose", "--in", str(tmp_path / "nope.txt"))
        assert code == EXIT_PARSE

    def test_malformed_input(self, capsys, tmp_path):
        src = tmp_path / "bad.txt"
        src.write_text("not a header\n")
        code, _, _ = run(capsys, "decompose", "--in", str(src))
        assert code == EXIT_PARSE


class TestVerify:
    def test_match(self, capsys, tmp_path):
        src = tmp_path / "g.txt"
        write_edge_list(sample_gnp(7, 0.5, 17), src)
        code, out, _ = run(capsys, "verify", "--in", str(src))
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["match"] is True
        assert payload["engine_components"] == payload["oracle_components"]

    def test_too_large(self, capsys, tmp_path):
        src = tmp_path / "g.txt"
        write_edge_list(sample_gnp(25, 0.3, 1), src)
        code, _, _ = run(capsys, "verify", "--in", str(src))
        assert code == EXIT_TOO_LARGE


class TestBounds:
    def test_certify_ok(self, capsys):
        code, out, _ = run(capsys, "bounds", "--certify")
        assert code == EXIT_OK
        lines = [l for l in out.splitlines() if l]
        assert lines and all(l.startswith("ok") for l in lines)

    def test_formula_t_threshold(self, capsys):
        code, out, _ = run(capsys, "bounds", "--formula", "t_threshold",
                           "--a", "2", "--c", "5")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["value"] == pytest.approx(0.0318637, abs=5e-8)

    def test_formula_rate_tenth(self, capsys):
        code, out, _ = run(capsys, "bounds", "--formula", "rate_tenth")
        assert code == EXIT_OK
        assert json.loads(out)["value"] == pytest.approx(-0.0074335, abs=1e-7)

    def test_missing_params(self, capsys):
        code, _, _ = run(capsys, "bounds", "--formula", "chernoff", "--N", "10")
        assert code == EXIT_USAGE

    def test_no_action(self, capsys):
        code, _, _ = run(capsys, "bounds")
        assert code == EXIT_USAGE

    def test_unknown_formula_rejected_by_parser(self, capsys):
        code, _, _ = run(capsys, "bounds", "--formula", "nope")
        assert code == EXIT_USAGE


class TestSweep:
    def test_csv_and_summary(self, capsys, tmp_path):
        csv_path = tmp_path / "rec.csv"
        sum_path = tmp_path / "sum.json"
        code, _, err = run(
            capsys, "sweep", "--n", "40,60", "--c", "1.0,4.5", "--trials", "3",
            "--seed", "77", "--csv", str(csv_path), "--summary", str(sum_path),
        )
        assert code == EXIT_OK
        assert "seed: 77" in err
        lines = csv_path.read_text().splitlines()
        assert lines[0].startswith("n,c,trial,seed,")
        assert len(lines) == 1 + 2 * 2 * 3
        summary = json.loads(sum_path.read_text())
        assert summary["metadata"]["master_seed"] == 77
        assert len(summary["cells"]) == 4

    def test_byte_identical_across_threads(self, capsys, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for path, threads in zip(paths, ("1", "4")):
            code, _, _ = run(
                capsys, "sweep", "--n", "50", "--c", "2.0,4.0", "--trials", "4",
                "--seed", "3", "--threads", threads,
                "--csv", str(path), "--summary", str(tmp_path / "s.json"),
            )
            assert code == EXIT_OK
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "sweep.cfg"
        cfg.write_text(
            "# demo sweep\n"
            "n_values = 40\n"
            "c_values = 1.0, 4.5\n"
            "trials = 2\n"
            "master_seed = 9\n"
        )
        csv_a = tmp_path / "a.csv"
        csv_b = tmp_path / "b.csv"
        code, _, _ = run(capsys, "sweep", "--config", str(cfg),
                         "--csv", str(csv_a), "--summary", str(tmp_path / "s.json"))
        assert code == EXIT_OK
        code, _, _ = run(capsys, "sweep", "--n", "40", "--c", "1.0,4.5",
                         "--trials", "2", "--seed", "9",
                         "--csv", str(csv_b), "--summary", str(tmp_path / "s.json"))
        assert code == EXIT_OK
        assert csv_a.read_text() == csv_b.read_text()

    def test_flags_override_config(self, capsys, tmp_path):
        cfg = tmp_path / "sweep.cfg"
        cfg.write_text("n_values = 40\nc_values = 1.0\ntrials = 2\nmaster_seed = 9\n")
        sum_path = tmp_path / "s.json"
        code, _, _ = run(capsys, "sweep", "--config", str(cfg), "--seed", "123",
                         "--csv", str(tmp_path / "r.csv"), "--summary", str(sum_path))
        assert code == EXIT_OK
        assert json.loads(sum_path.read_text())["metadata"]["master_seed"] == 123

    def test_bad_config_line(self, capsys, tmp_path):
        cfg = tmp_path / "sweep.cfg"
        cfg.write_text("n_values 40\n")
        code, _, _ = run(capsys, "sweep", "--config", str(cfg))
        assert code == EXIT_PARSE

    def test_missing_grid(self, capsys):
        code, _, _ = run(capsys, "sweep", "--trials", "2")
        assert code == EXIT_USAGE


class TestTopLevel:
    def test_no_command(self, capsys):
        assert main([]) == EXIT_USAGE

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == EXIT_USAGE

    def test_version_banner(self, capsys):
        _, _, err = run(capsys, "bounds", "--formula", "rate_tenth")
        assert err.startswith("rigidcomp ")
