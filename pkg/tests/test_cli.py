"""CLI behavior: output, exit codes, file formats, config handling."""

from __future__ import annotations

import json

import pytest

from dicore.cli import main
from dicore.digraph import Digraph

from conftest import complete_digraph


@pytest.fixture
def files(tmp_path):
    paths = {}
    named = {
        "twocycle": Digraph(2, [(0, 1), (1, 0)]),
        "arc": Digraph(2, [(0, 1)]),
        "k3bi": complete_digraph(3),
        "point": Digraph(1),
    }
    for name, d in named.items():
        path = tmp_path / f"{name}.dg"
        path.write_text(d.to_text())
        paths[name] = str(path)
    bad = tmp_path / "bad.dg"
    bad.write_text("3 2\n1 2\nX Y\n")
    paths["bad"] = str(bad)
    paths["dir"] = tmp_path
    return paths


class TestSample:
    def test_emits_header_only_at_p_zero(self, files, capsys):
        assert main(["sample", "--n", "5", "--p", "0", "--seed", "7"]) == 0
        assert capsys.readouterr().out == "5 0\n"

    def test_roundtrip_through_file(self, files):
        out = str(files["dir"] / "sample.dg")
        assert main(["sample", "--n", "9", "--p", "0.5", "--seed", "3", "--out", out]) == 0
        d = Digraph.from_text(open(out).read())
        again = str(files["dir"] / "sample2.dg")
        assert main(["sample", "--n", "9", "--p", "0.5", "--seed", "3", "--out", again]) == 0
        assert open(out).read() == open(again).read()
        assert d.n == 9

    def test_bad_probability_exits_2(self, files, capsys):
        assert main(["sample", "--n", "5", "--p", "1.5", "--seed", "7"]) == 2
        assert "error" in capsys.readouterr().err


class TestIsCore:
    def test_core_exit_0(self, files, capsys):
        assert main(["is-core", "--in", files["twocycle"]]) == 0
        assert capsys.readouterr().out == "CORE\n"

    def test_not_core_exit_1_with_witness(self, files, capsys):
        assert main(["is-core", "--in", files["arc"]]) == 1
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "NOT CORE"
        assert set(out[1:]) in ({"1 -> 1", "2 -> 1"}, {"1 -> 2", "2 -> 2"})

    def test_unknown_exit_2(self, files, capsys, tmp_path):
        from dicore.random_model import Seed, sample

        big = tmp_path / "big.dg"
        big.write_text(sample(12, 0.5, Seed(1)).to_text())
        assert main(["is-core", "--in", str(big), "--budget", "2"]) == 2
        assert "UNKNOWN" in capsys.readouterr().out

    def test_malformed_file_names_line(self, files, capsys):
        assert main(["is-core", "--in", files["bad"]]) == 2
        assert "line 3" in capsys.readouterr().err

    def test_missing_file(self, files, capsys):
        assert main(["is-core", "--in", str(files["dir"] / "nope.dg")]) == 2


class TestFindHomAndContains:
    def test_find_hom_found(self, files, capsys):
        assert main(["find-hom", "--from", files["arc"], "--to", files["point"]]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "FOUND"
        assert out[1:] == ["1 -> 1", "2 -> 1"]

    def test_find_hom_not_found(self, files, capsys):
        assert main(["find-hom", "--from", files["twocycle"], "--to", files["point"]]) == 1
        assert capsys.readouterr().out == "NOT FOUND\n"

    def test_contains_positive(self, files, capsys):
        assert main(["contains", "--pattern", files["arc"], "--host", files["k3bi"]]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "CONTAINS"

    def test_contains_negative(self, files, capsys):
        assert main(["contains", "--pattern", files["twocycle"], "--host", files["arc"]]) == 1
        assert capsys.readouterr().out == "NOT CONTAINED\n"


class TestMaxDensity:
    def test_k3_normalized(self, files, capsys):
        assert main(["max-density", "--in", files["k3bi"]]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0].startswith("m = 2/1")
        assert out[1] == "witness: 1 2 3"

    def test_brute_method(self, files, capsys):
        assert main(["max-density", "--in", files["arc"], "--method", "brute"]) == 0
        assert capsys.readouterr().out.splitlines()[0].startswith("m = 1/2")


class TestBound:
    def test_tail_mode(self, capsys):
        assert main(["bound", "--lambda", "100", "--t", "30"]) == 0
        out = capsys.readouterr().out
        assert "upper rate_bound" in out and "lower quadratic" in out

    def test_corollary_mode(self, capsys):
        assert main(["bound", "--eps", "1", "--mean", "12"]) == 0
        out = capsys.readouterr().out
        assert "general" in out and "simplified" in out

    def test_mixed_flags_rejected(self, capsys):
        assert main(["bound", "--lambda", "10", "--eps", "1"]) == 2
        assert main(["bound"]) == 2


class TestExperimentCommand:
    def test_csv_to_stdout(self, capsys):
        rc = main([
            "experiment", "neighbors",
            "--n", "12", "--p", "0.5", "--trials", "3", "--seed", "5", "--workers", "1",
        ])
        assert rc == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].startswith("n,p,trials,seed,mean")
        assert len(lines) == 2

    def test_config_file_with_flag_override(self, files, capsys):
        cfg = files["dir"] / "cfg.json"
        cfg.write_text(json.dumps({"ns": [10], "ps": [0.3], "trials": 2, "seed": 9}))
        rc = main([
            "experiment", "neighbors", "--config", str(cfg),
            "--trials", "4", "--workers", "1",
        ])
        assert rc == 0
        row = capsys.readouterr().out.strip().splitlines()[1]
        assert row.split(",")[2] == "4"  # trials overridden

    def test_threshold_requires_pattern(self, capsys):
        rc = main([
            "experiment", "threshold",
            "--n", "10", "--p", "0.5", "--trials", "2", "--seed", "1", "--workers", "1",
        ])
        assert rc == 2
        assert "pattern" in capsys.readouterr().err

    def test_threshold_runs_with_pattern(self, files, capsys):
        rc = main([
            "experiment", "threshold", "--pattern", files["twocycle"],
            "--n", "10", "--p", "1.0", "--trials", "2", "--seed", "1", "--workers", "1",
        ])
        assert rc == 0
        assert capsys.readouterr().out.splitlines()[0].startswith("n,p,ratio")

    def test_missing_required_settings(self, capsys):
        assert main(["experiment", "neighbors", "--n", "5", "--p", "0.5", "--workers", "1"]) == 2

    def test_unknown_config_key(self, files, capsys):
        cfg = files["dir"] / "cfg2.json"
        cfg.write_text(json.dumps({"trials": 2, "seed": 9, "mystery": True}))
        assert main(["experiment", "neighbors", "--config", str(cfg), "--workers", "1"]) == 2

    def test_out_file(self, files):
        out = str(files["dir"] / "table.csv")
        rc = main([
            "experiment", "subset-arcs",
            "--n", "20", "--p", "0.5", "--k", "5",
            "--trials", "3", "--seed", "5", "--workers", "1", "--out", out,
        ])
        assert rc == 0
        assert open(out).read().startswith("n,p,k,")


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["no-such-command"])
    assert err.value.code == 2
