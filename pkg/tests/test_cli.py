import json

from isingtree.cli import main

TRIANGLE = "3\n0 1\n0 2\n1 2\n"
SINGLE_EDGE = "2\n0 1\n"
FOUR_CYCLE = "4\n0 1\n0 3\n1 2\n2 3\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def graph_file(tmp_path, text, name="graph.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestGen:
    def test_square_lattice(self, tmp_path, capsys):
        out_path = tmp_path / "lat.txt"
        code, out, err = run(capsys, "gen", "square-lattice", "10", str(out_path))
        assert code == 0 and err == ""
        assert "100 nodes, 200 edges" in out
        lines = out_path.read_text().splitlines()
        assert lines[0] == "100"
        assert len(lines) == 201

    def test_mobius_ladder(self, tmp_path, capsys):
        out_path = tmp_path / "mob.txt"
        code, out, _ = run(capsys, "gen", "mobius-ladder", "4", str(out_path))
        assert code == 0
        assert "8 nodes, 12 edges" in out

    def test_degenerate_size(self, tmp_path, capsys):
        code, out, err = run(capsys, "gen", "square-lattice", "2", str(tmp_path / "x.txt"))
        assert code == 1
        assert err.startswith("error:")
        assert out == ""

    def test_unknown_family_is_usage_error(self, tmp_path, capsys):
        code, _, err = run(capsys, "gen", "petersen", "5", str(tmp_path / "x.txt"))
        assert code == 2
        assert "petersen" in err

    def test_unwritable_path(self, tmp_path, capsys):
        code, _, err = run(capsys, "gen", "square-lattice", "3", str(tmp_path / "no" / "x.txt"))
        assert code == 1
        assert "error:" in err


class TestSolve:
    def test_single_edge(self, tmp_path, capsys):
        path = graph_file(tmp_path, SINGLE_EDGE)
        code, out, err = run(capsys, "solve", "cits", path, "--n_epochs", "20")
        assert code == 0 and err == ""
        assert "best cut 1 at epoch" in out

    def test_edgeless(self, tmp_path, capsys):
        path = graph_file(tmp_path, "4\n")
        code, out, _ = run(capsys, "solve", "sa", path)
        assert code == 0
        assert "best cut 0" in out

    def test_unknown_algorithm_is_usage_error(self, tmp_path, capsys):
        path = graph_file(tmp_path, SINGLE_EDGE)
        code, _, err = run(capsys, "solve", "tabu", path)
        assert code == 2
        assert "tabu" in err

    def test_trajectory_file(self, tmp_path, capsys):
        path = graph_file(tmp_path, TRIANGLE)
        out_csv = tmp_path / "traj.csv"
        code, out, _ = run(
            capsys, "solve", "sa", path, "--n_epochs", "7", "--out", str(out_csv)
        )
        assert code == 0
        assert f"wrote trajectory to {out_csv}" in out
        lines = out_csv.read_text().splitlines()
        assert lines[0] == "algorithm,instance,seed,epoch,cut"
        assert len(lines) == 8
        assert lines[1].startswith(f"sa,{path},0,1,")

    def test_deterministic(self, tmp_path, capsys):
        path = graph_file(tmp_path, FOUR_CYCLE)
        _, first, _ = run(capsys, "solve", "cim", path, "--seed", "5")
        _, second, _ = run(capsys, "solve", "cim", path, "--seed", "5")
        assert first == second

    def test_missing_graph_file(self, tmp_path, capsys):
        code, _, err = run(capsys, "solve", "sa", str(tmp_path / "absent.txt"))
        assert code == 1
        assert "absent.txt" in err

    def test_malformed_graph_file(self, tmp_path, capsys):
        path = graph_file(tmp_path, "2\n1 0\n")
        code, _, err = run(capsys, "solve", "sa", path)
        assert code == 1
        assert "error:" in err and path in err

    def test_bad_parameter_reported(self, tmp_path, capsys):
        path = graph_file(tmp_path, SINGLE_EDGE)
        code, _, err = run(capsys, "solve", "sa", path, "--t_star", "-1.0")
        assert code == 1
        assert "t_star" in err


def bench_args(tmp_path, *extra):
    return (
        "bench", "--out", str(tmp_path / "bench"),
        "--family", "square-lattice", "--size", "3",
        "--n_runs", "3", "--n_epochs", "30", *extra,
    )


class TestBench:
    def test_summary_structure(self, tmp_path, capsys):
        code, out, err = run(capsys, *bench_args(tmp_path))
        assert code == 0 and err == ""
        summary = json.loads((tmp_path / "bench.json").read_text())
        assert summary["target_exact"] == 12
        assert summary["target_approx"] is None
        assert summary["graph"]["n"] == 9 and summary["graph"]["n_edges"] == 18
        assert len(summary["graph"]["hash"]) == 40
        assert set(summary["algorithms"]) == {"sa", "cim", "cits"}
        for stats in summary["algorithms"].values():
            assert set(stats) == {"exact"}
            assert stats["exact"]["n_runs"] == 3
        assert summary["config"]["alpha"] == 0.25
        for name in ("sa", "cim", "cits"):
            assert f"{name}: q50=" in out
        assert "wrote" in out

    def test_csv_rows(self, tmp_path, capsys):
        code, _, _ = run(capsys, *bench_args(tmp_path))
        assert code == 0
        lines = (tmp_path / "bench.csv").read_text().splitlines()
        # 3 algorithms x 3 runs x 30 epochs, plus the header
        assert len(lines) == 1 + 3 * 3 * 30

    def test_reruns_byte_identical(self, tmp_path, capsys):
        base = bench_args(tmp_path)[3:]
        first = run(capsys, "bench", "--out", str(tmp_path / "a"), *base)
        second = run(capsys, "bench", "--out", str(tmp_path / "b"), *base)
        assert first[0] == 0 and second[0] == 0
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

    def test_single_run_percentiles_collapse(self, tmp_path, capsys):
        code, _, _ = run(capsys, *bench_args(tmp_path, "--n_runs", "1", "--algorithms", "sa"))
        assert code == 0
        stats = json.loads((tmp_path / "bench.json").read_text())["algorithms"]["sa"]["exact"]
        if stats["success_rate"] == 1.0:
            assert stats["q1"] == stats["q25"] == stats["q50"] == stats["q75"]

    def test_algorithm_subset(self, tmp_path, capsys):
        code, out, _ = run(capsys, *bench_args(tmp_path, "--algorithms", "cim"))
        assert code == 0
        summary = json.loads((tmp_path / "bench.json").read_text())
        assert set(summary["algorithms"]) == {"cim"}
        assert "sa:" not in out

    def test_bad_algorithm_name(self, tmp_path, capsys):
        code, _, err = run(capsys, *bench_args(tmp_path, "--algorithms", "sa,tabu"))
        assert code == 1
        assert "tabu" in err

    def test_missing_family(self, tmp_path, capsys):
        code, _, err = run(capsys, "bench", "--out", str(tmp_path / "b"), "--size", "3")
        assert code == 1
        assert "family" in err

    def test_missing_size(self, tmp_path, capsys):
        code, _, err = run(
            capsys, "bench", "--out", str(tmp_path / "b"), "--family", "square-lattice"
        )
        assert code == 1
        assert "size" in err

    def test_large_instance_needs_explicit_target(self, tmp_path, capsys):
        code, _, err = run(
            capsys, "bench", "--out", str(tmp_path / "b"),
            "--family", "circular-ladder", "--size", "120",
            "--n_runs", "1", "--n_epochs", "5",
        )
        assert code == 1
        assert "target" in err

    def test_explicit_targets(self, tmp_path, capsys):
        code, _, _ = run(
            capsys, *bench_args(tmp_path, "--target", "12", "--target_approx", "11")
        )
        assert code == 0
        summary = json.loads((tmp_path / "bench.json").read_text())
        assert summary["target_approx"] == 11
        for stats in summary["algorithms"].values():
            assert set(stats) == {"exact", "approx"}
            assert stats["approx"]["target"] == 11

    def test_plot(self, tmp_path, capsys):
        code, out, _ = run(capsys, *bench_args(tmp_path, "--plot"))
        assert code == 0
        svg = (tmp_path / "bench.svg").read_text()
        assert svg.startswith("<svg")
        assert str(tmp_path / "bench.svg") in out


class TestConfigFile:
    def write_config(self, tmp_path, text):
        path = tmp_path / "run.cfg"
        path.write_text(text)
        return str(path)

    def test_file_supplies_values(self, tmp_path, capsys):
        cfg = self.write_config(
            tmp_path,
            "# benchmark setup\n\nfamily = square-lattice\nsize = 3\n"
            "n_runs = 2\nn_epochs = 20\nalgorithms = sa\n",
        )
        code, _, _ = run(capsys, "bench", "--out", str(tmp_path / "b"), "--config", cfg)
        assert code == 0
        summary = json.loads((tmp_path / "b.json").read_text())
        assert summary["n_runs"] == 2 and summary["n_epochs"] == 20

    def test_flags_override_file(self, tmp_path, capsys):
        cfg = self.write_config(
            tmp_path, "family = square-lattice\nsize = 3\nn_runs = 2\nn_epochs = 20\n"
        )
        code, _, _ = run(
            capsys, "bench", "--out", str(tmp_path / "b"), "--config", cfg,
            "--n_epochs", "10", "--algorithms", "sa",
        )
        assert code == 0
        assert json.loads((tmp_path / "b.json").read_text())["n_epochs"] == 10

    def test_unknown_key(self, tmp_path, capsys):
        cfg = self.write_config(tmp_path, "temperature = 3\n")
        code, _, err = run(capsys, "bench", "--out", str(tmp_path / "b"), "--config", cfg)
        assert code == 1
        assert "temperature" in err

    def test_bad_value_names_key(self, tmp_path, capsys):
        cfg = self.write_config(tmp_path, "n_epochs = soon\n")
        code, _, err = run(capsys, "bench", "--out", str(tmp_path / "b"), "--config", cfg)
        assert code == 1
        assert "n_epochs" in err and "soon" in err

    def test_malformed_line_names_location(self, tmp_path, capsys):
        cfg = self.write_config(tmp_path, "family square-lattice\n")
        code, _, err = run(capsys, "bench", "--out", str(tmp_path / "b"), "--config", cfg)
        assert code == 1
        assert f"{cfg}:1" in err

    def test_missing_config_file(self, tmp_path, capsys):
        code, _, err = run(
            capsys, "bench", "--out", str(tmp_path / "b"),
            "--config", str(tmp_path / "absent.cfg"),
        )
        assert code == 1
        assert "absent.cfg" in err

    def test_config_for_solve(self, tmp_path, capsys):
        cfg = self.write_config(tmp_path, "n_epochs = 9\nseed = 4\n")
        path = graph_file(tmp_path, TRIANGLE)
        out_csv = tmp_path / "t.csv"
        code, _, _ = run(
            capsys, "solve", "sa", path, "--config", cfg, "--out", str(out_csv)
        )
        assert code == 0
        assert len(out_csv.read_text().splitlines()) == 10


class TestExact:
    def test_triangle(self, tmp_path, capsys):
        path = graph_file(tmp_path, TRIANGLE)
        code, out, err = run(capsys, "exact", path)
        assert code == 0 and err == ""
        assert "max cut 2" in out
        assert "optimal configurations 3" in out

    def test_four_cycle_witness(self, tmp_path, capsys):
        path = graph_file(tmp_path, FOUR_CYCLE)
        code, out, _ = run(capsys, "exact", path)
        assert code == 0
        assert "max cut 4" in out
        assert "witness +1 -1 +1 -1" in out

    def test_too_large(self, tmp_path, capsys):
        gen_path = tmp_path / "big.txt"
        run(capsys, "gen", "square-lattice", "10", str(gen_path))
        code, _, err = run(capsys, "exact", str(gen_path))
        assert code == 1
        assert "30" in err


class TestTopLevel:
    def test_no_command_is_usage_error(self, capsys):
        code, _, err = run(capsys)
        assert code == 2
        assert "usage" in err

    def test_help_exits_clean(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == 0
        assert "gen" in out and "bench" in out
