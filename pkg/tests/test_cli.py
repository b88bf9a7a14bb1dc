import json

import numpy as np
import pytest

from reconlab.cli import main
from reconlab.graph6 import graph6_encode
from reconlab.hypomorphism import cycle_adjacency, matrix_pair
from reconlab.matrixcore import Permutation, SymmetricMatrix
from reconlab.serialize import cone_to_dict, dumps, matrix_to_dict, pair_to_dict
from reconlab.solidangle import Cone


@pytest.fixture
def octant_path(tmp_path):
    cone = Cone(apex=np.zeros(3), generators=np.eye(3))
    path = tmp_path / "octant.json"
    path.write_text(dumps(cone_to_dict(cone)))
    return str(path)


@pytest.fixture
def pair_path(tmp_path):
    A, B, sigma = matrix_pair(cycle_adjacency(6), Permutation.swap(6, 1, 3))
    path = tmp_path / "pair.json"
    path.write_text(dumps(pair_to_dict(A, B, sigma)))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAngle:
    def test_octant_exact(self, octant_path, capsys):
        code, out, _ = run_cli(capsys, "angle", "--cone", octant_path,
                               "--samples", "1000000", "--seed", "7")
        assert code == 0
        report = json.loads(out)
        assert report["passed"] is True
        assert report["report"]["fraction"] == 0.125
        assert report["report"]["method"] == "Exact3D"
        assert report["seed"] == 7 and report["samples"] == 1000000

    def test_monte_carlo_flag(self, octant_path, capsys):
        code, out, _ = run_cli(capsys, "angle", "--cone", octant_path,
                               "--samples", "50000", "--seed", "7", "--monte-carlo")
        assert code == 0
        report = json.loads(out)["report"]
        assert report["method"] == "MonteCarlo"
        assert abs(report["fraction"] - 0.125) <= 4.0 * report["std_error"]

    def test_deterministic_byte_identical(self, octant_path, capsys):
        args = ("angle", "--cone", octant_path, "--seed", "3", "--deterministic")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_csv_format(self, octant_path, capsys):
        code, out, _ = run_cli(capsys, "angle", "--cone", octant_path, "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "fraction,abs_norm,std_error,samples,method"

    def test_missing_file_is_usage_error(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "angle", "--cone", str(tmp_path / "nope.json"))
        assert code == 2
        assert "error" in json.loads(err)


class TestDeck:
    def test_deck_of_identity(self, tmp_path, capsys):
        path = tmp_path / "m.json"
        path.write_text(dumps(matrix_to_dict(SymmetricMatrix.identity(3))))
        code, out, _ = run_cli(capsys, "deck", "--matrix", str(path))
        assert code == 0
        cards = json.loads(out)["report"]["deck"]
        assert len(cards) == 3 and cards[0]["n"] == 2


class TestGenPair:
    def test_writes_bare_pair(self, tmp_path, capsys):
        g6 = tmp_path / "c.g6"
        g6.write_text("# comment\n" + graph6_encode(cycle_adjacency(5).entries) + "\n")
        out_path = tmp_path / "pair.json"
        code, _, _ = run_cli(capsys, "gen-pair", "--graph6", str(g6),
                             "--tau", "swap:1,3", "--out", str(out_path))
        assert code == 0
        data = json.loads(out_path.read_text())
        assert set(data) == {"A", "B", "sigma"}
        assert data["sigma"] is not None

    def test_uncertified_pair_exits_one(self, tmp_path, capsys):
        from reconlab.hypomorphism import path_adjacency

        g6 = tmp_path / "p.g6"
        g6.write_text(graph6_encode(path_adjacency(3).entries) + "\n")
        code, out, _ = run_cli(capsys, "gen-pair", "--graph6", str(g6), "--tau", "swap:0,1")
        assert code == 1
        assert json.loads(out)["sigma"] is None


class TestVerifyCommands:
    def test_tutte_pass(self, pair_path, capsys):
        code, out, _ = run_cli(capsys, "verify-tutte", "--pair", pair_path,
                               "--deterministic")
        assert code == 0
        report = json.loads(out)
        assert report["passed"] is True
        assert report["report"]["max_abs_diff"] <= 1e-8 * max(1.0, report["report"]["scale"])

    def test_tutte_custom_grid(self, pair_path, capsys):
        # values starting with '-' need the '=' form, per argparse convention
        code, out, _ = run_cli(capsys, "verify-tutte", "--pair", pair_path,
                               "--grid-lambda=-1:1:3", "--grid-t", "0,2")
        assert code == 0
        rep = json.loads(out)["report"]
        assert rep["lambda_grid"] == [-1.0, 0.0, 1.0] and rep["t_grid"] == [0.0, 2.0]

    def test_forged_pair_fails_gate_then_force(self, tmp_path, capsys):
        A, B, sigma = matrix_pair(cycle_adjacency(6), Permutation.swap(6, 1, 3))
        bumped = B.entries.copy()
        bumped[0, 0] += 1e-3
        forged = tmp_path / "forged.json"
        forged.write_text(dumps(pair_to_dict(A, SymmetricMatrix(bumped), sigma)))
        code, _, err = run_cli(capsys, "verify-tutte", "--pair", str(forged))
        assert code == 1
        assert json.loads(err)["error"] == "NotHypomorphic"
        code, out, _ = run_cli(capsys, "verify-tutte", "--pair", str(forged), "--force")
        assert code == 1
        assert json.loads(out)["passed"] is False

    def test_main_theorem_pass(self, pair_path, capsys):
        code, out, _ = run_cli(capsys, "verify-main", "--pair", pair_path,
                               "--t-samples", "6", "--deterministic")
        assert code == 0
        report = json.loads(out)
        assert report["passed"] is True and len(report["report"]["samples"]) == 6

    def test_main_csv(self, pair_path, capsys):
        code, out, _ = run_cli(capsys, "verify-main", "--pair", pair_path, "--format", "csv")
        assert code == 0
        assert out.splitlines()[0].startswith("t,lambda_n_a")


class TestVerifyGeometry:
    def test_small_run(self, capsys):
        code, out, _ = run_cli(capsys, "verify-geometry", "--count", "3", "--seed", "9",
                               "--samples", "5000")
        assert code == 0
        report = json.loads(out)
        assert report["passed"] is True
        assert report["report"]["tallies"]["lemma1_equivalence"]["failed"] == 0

    def test_zero_tolerance_fails(self, capsys):
        code, out, _ = run_cli(capsys, "verify-geometry", "--count", "2", "--seed", "9",
                               "--samples", "5000", "--tol-eig", "0")
        assert code == 1
        assert json.loads(out)["passed"] is False


class TestIngest:
    def test_valid_records(self, tmp_path, capsys):
        g6 = tmp_path / "g.g6"
        g6.write_text("# two graphs\nBw\nD?{\n")
        out_dir = tmp_path / "mats"
        code, out, _ = run_cli(capsys, "ingest", "--graph6", str(g6),
                               "--out", str(out_dir))
        assert code == 0
        written = json.loads(out)["written"]
        assert len(written) == 2
        first = json.loads((out_dir / "matrix_0000.json").read_text())
        assert first["n"] == 3

    def test_malformed_line_names_line_number(self, tmp_path, capsys):
        g6 = tmp_path / "g.g6"
        g6.write_text("Bw\nB&\n")
        code, _, err = run_cli(capsys, "ingest", "--graph6", str(g6))
        assert code == 2
        assert json.loads(err)["line"] == 2

    def test_stdout_stream(self, tmp_path, capsys):
        g6 = tmp_path / "g.g6"
        g6.write_text("Bw\n")
        code, out, _ = run_cli(capsys, "ingest", "--graph6", str(g6))
        assert code == 0
        assert json.loads(out.strip())["n"] == 3


class TestUsageContract:
    def test_unknown_flag_exits_two(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["angle", "--cone", "x.json", "--bogus"])
        assert err.value.code == 2
        assert json.loads(capsys.readouterr().err)["error"] == "usage"

    def test_zero_samples_rejected(self, octant_path, capsys):
        code, _, err = run_cli(capsys, "angle", "--cone", octant_path, "--samples", "0")
        assert code == 2
        assert "samples" in json.loads(err)["message"]

    def test_unreadable_pair_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, _ = run_cli(capsys, "verify-tutte", "--pair", str(bad))
        assert code == 2
