import json
import subprocess
import sys

import numpy as np
import pytest

from oracles import polygon_vertices
from wsweights import LP, Discrete, ProblemInstance
from wsweights.cli import main
from wsweights.fileio import (
    InstanceFormatError,
    load_instance,
    read_csv,
    read_weights,
    save_instance,
)


def data_rows(path):
    return [line for line in open(path) if not line.startswith("#")]


def manifest_of(path):
    comments, _, _ = read_csv(path)
    return json.loads(comments[0][len("manifest: "):])


@pytest.fixture
def front_instance(tmp_path):
    path = tmp_path / "front.json"
    pts = [[0, 4], [1, 1], [4, 0], [3, 3], [2, 5]]
    save_instance(ProblemInstance(np.eye(2), Discrete(np.array(pts, float))), path)
    return path


class TestInstanceFiles:
    def test_round_trip_discrete(self, tmp_path):
        inst = ProblemInstance(np.array([[0.1, 2.0], [1 / 3, -1.0]]), Discrete(np.array([[0.7, 1e-17]])))
        save_instance(inst, tmp_path / "a.json")
        back = load_instance(tmp_path / "a.json")
        assert np.array_equal(back.objectives, inst.objectives)
        assert np.array_equal(back.backend.points, inst.backend.points)

    def test_round_trip_lp(self, tmp_path):
        lp = LP([[1, 1], [1, -1]], [1, 0.5], ["<=", ">="], [(0, None), (None, 2.5)])
        inst = ProblemInstance(np.eye(2), lp)
        save_instance(inst, tmp_path / "b.json")
        back = load_instance(tmp_path / "b.json").backend
        assert back.bounds == ((0.0, None), (None, 2.5)) and back.sense == ("<=", ">=")
        assert np.array_equal(back.A, lp.A)

    @pytest.mark.parametrize(
        "text",
        [
            "not json",
            '{"p": 2, "n": 2, "objectives": [[1, 0], [0, 1]]}',
            '{"p": 2, "n": 2, "objectives": [[1, 0], [0, 1]], "points": [[0, 0]], "lp": {}}',
            '{"p": 2, "n": 2, "objectives": [[1, 0]], "points": [[0, 0]]}',
            '{"p": 2, "n": 2, "objectives": [[1, 0], [0, 1]], "lp": {"A": [[1, 1]], "b": [1]}}',
        ],
    )
    def test_malformed(self, tmp_path, text):
        path = tmp_path / "bad.json"
        path.write_text(text)
        with pytest.raises(InstanceFormatError):
            load_instance(path)


class TestSample:
    def test_uniform_example(self, tmp_path):
        out = tmp_path / "u.csv"
        assert main(["sample", "uniform", "--p", "3", "--d", "2", "--out", str(out)]) == 0
        rows = [tuple(map(float, r.split(","))) for r in data_rows(out)[1:]]
        assert rows == [(0, 0, 1), (0, 0.5, 0.5), (0, 1, 0), (0.5, 0, 0.5), (0.5, 0.5, 0), (1, 0, 0)]
        comments, header, _ = read_csv(out)
        assert header == ["w1", "w2", "w3"]
        assert any("strategy: uniform" in c for c in comments)

    def test_slhs_repeatable(self, tmp_path):
        out = tmp_path / "s.csv"
        main(["sample", "slhs", "--p", "2", "--d", "4", "--seed", "7", "--out", str(out)])
        first = out.read_bytes()
        main(["sample", "slhs", "--p", "2", "--d", "4", "--seed", "7", "--out", str(out)])
        assert out.read_bytes() == first

    def test_dirichlet_rows(self, tmp_path):
        out = tmp_path / "d.csv"
        assert main(["sample", "dirichlet", "--alpha", "1,1,1", "--n", "5000", "--out", str(out)]) == 0
        w = read_weights(out, p=3)
        assert w.shape == (5000, 3) and np.allclose(w.sum(axis=1), 1, atol=1e-12)

    def test_seventeen_digits(self, tmp_path):
        out = tmp_path / "r.csv"
        main(["sample", "random", "--p", "2", "--n", "20", "--seed", "3", "--out", str(out)])
        for row in data_rows(out)[1:]:
            for cell in row.strip().split(","):
                assert float("%.17g" % float(cell)) == float(cell)

    @pytest.mark.parametrize(
        "argv",
        [
            ["sample", "lhs", "--p", "2"],
            ["sample", "random", "--p", "2"],
            ["sample", "uniform", "--d", "3"],
            ["sample", "lhs", "--p", "3", "--d", "4", "--s", "0"],
            ["sample", "dirichlet", "--alpha", "1,1", "--p", "3", "--n", "4"],
            ["sample", "uniform", "--p", "3", "--d", "2", "--beta", "1,1"],
            ["sample", "slhs", "--p", "2", "--d", "4", "--rho", "0.5"],
            ["sample", "nonsense"],
            [],
        ],
    )
    def test_usage_errors(self, argv):
        assert main(argv) == 2

    def test_library_error_exit_one(self):
        assert main(["sample", "slhs", "--p", "3", "--d", "3", "--delta", "0"]) == 1
        assert main(["sample", "uniform", "--p", "4", "--d", "10", "--budget", "5"]) == 1


class TestSolve:
    def test_singleton(self, tmp_path, capsys):
        inst = tmp_path / "one.json"
        save_instance(ProblemInstance(np.eye(2), Discrete(np.array([[2.0, 3.0]]))), inst)
        out = tmp_path / "o.csv"
        assert main(["solve", "--instance", str(inst), "--strategy", "lhs", "--d", "6", "--out", str(out)]) == 0
        _, header, rows = read_csv(out)
        assert header == ["w1", "w2", "y1", "y2", "status", "report"]
        assert {tuple(r[2:4]) for r in rows} == {("2", "3")}
        assert "N=1 D=3" in capsys.readouterr().out

    def test_triangle_lp_front(self, tmp_path):
        A = [[1.0, 2.0], [3.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]
        b = [4.0, 6.0, 0.0, 0.0]
        C = np.array([[-1.0, 0.0], [0.0, -1.0]])
        inst = tmp_path / "lp.json"
        save_instance(ProblemInstance(C, LP(A, b, ["<="] * 4, [(None, None)] * 2)), inst)
        front = tmp_path / "f.csv"
        code = main(["solve", "--instance", str(inst), "--strategy", "uniform", "--d", "10",
                     "--out", str(tmp_path / "s.csv"), "--front", str(front)])
        assert code == 0
        _, _, rows = read_csv(front)
        got = sorted((float(r[0]), float(r[1])) for r in rows)
        verts = polygon_vertices(A, b)
        images = [tuple(C @ v) for v in verts]
        expected = sorted(
            y for y in images
            if not any(o[0] <= y[0] and o[1] <= y[1] and o != y for o in images)
        )
        assert np.allclose(got, expected, atol=1e-9)

    def test_weights_file(self, tmp_path, front_instance):
        weights = tmp_path / "w.csv"
        main(["sample", "uniform", "--p", "2", "--d", "4", "--out", str(weights)])
        out = tmp_path / "o.csv"
        assert main(["solve", "--instance", str(front_instance), "--weights", str(weights), "--out", str(out)]) == 0
        _, _, rows = read_csv(out)
        assert [r[-1] for r in rows] == ["new", "new", "duplicate", "new", "duplicate"]

    def test_wrong_p_weights(self, tmp_path, front_instance):
        weights = tmp_path / "w3.csv"
        main(["sample", "uniform", "--p", "3", "--d", "2", "--out", str(weights)])
        assert main(["solve", "--instance", str(front_instance), "--weights", str(weights)]) == 2

    def test_missing_and_malformed_instance(self, tmp_path):
        assert main(["solve", "--instance", str(tmp_path / "nope.json"), "--strategy", "uniform", "--d", "2"]) == 2
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert main(["solve", "--instance", str(bad), "--strategy", "uniform", "--d", "2"]) == 2

    def test_solver_failure_exit_one(self, tmp_path, capsys):
        inst = tmp_path / "unb.json"
        save_instance(ProblemInstance(np.array([[-1.0], [0.0]]), LP([[0.0]], [0.0], ["<="])), inst)
        assert main(["adapt", "--instance", str(inst)]) == 1
        assert "SolveFailedError" in capsys.readouterr().err

    def test_jobs(self, tmp_path, front_instance):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        base = ["solve", "--instance", str(front_instance), "--strategy", "random", "--n", "40"]
        main(base + ["--out", str(a)])
        main(base + ["--jobs", "4", "--out", str(b)])
        assert data_rows(a) == data_rows(b)
        assert main(base + ["--jobs", "0"]) == 2


class TestAdapt:
    def test_huge_tau(self, tmp_path, front_instance, capsys):
        out = tmp_path / "a.csv"
        assert main(["adapt", "--instance", str(front_instance), "--d", "4", "--tau", "1e9", "--out", str(out)]) == 0
        assert "N=3 D=5" in capsys.readouterr().out
        comments, _, _ = read_csv(out)
        assert "termination: no-gaps rounds: 0" in comments

    def test_full_front_and_audit(self, tmp_path, front_instance):
        out, audit = tmp_path / "a.csv", tmp_path / "log.jsonl"
        code = main(["adapt", "--instance", str(front_instance), "--out", str(out), "--audit", str(audit),
                     "--max-depth", "3"])
        assert code == 0
        _, _, rows = read_csv(out)
        assert sorted((float(r[0]), float(r[1])) for r in rows) == [(0, 4), (1, 1), (4, 0)]
        records = [json.loads(line) for line in audit.read_text().splitlines()]
        assert {"weight", "image", "report", "round"} <= set(records[0])
        assert len(records) == records[-1]["solved"]

    def test_missing_instance(self, tmp_path):
        assert main(["adapt", "--instance", str(tmp_path / "missing.json")]) == 2

    @pytest.mark.parametrize("flag", [["--rho", "2"], ["--tau", "-1"], ["--d", "0"], ["--max-depth", "0"]])
    def test_bad_flags(self, front_instance, flag):
        assert main(["adapt", "--instance", str(front_instance)] + flag) == 2


class TestDiag:
    def test_growth(self, tmp_path):
        out = tmp_path / "g.csv"
        assert main(["diag", "growth", "--p", "2,3,4,5", "--d", "1..25", "--out", str(out)]) == 0
        _, header, rows = read_csv(out)
        assert header == ["p", "d", "count", "log10count"] and len(rows) == 100
        assert ["3", "2", "6"] in [r[:3] for r in rows]

    def test_qq(self, tmp_path):
        out = tmp_path / "q.csv"
        assert main(["diag", "qq", "--d", "20", "--s", "2", "--seed", "1", "--out", str(out)]) == 0
        _, header, rows = read_csv(out)
        assert header == ["theoretical", "observed"] and len(rows) == 20

    def test_qq_too_few(self):
        assert main(["diag", "qq", "--d", "2", "--s", "1"]) == 1

    @pytest.mark.parametrize(
        "argv",
        [["diag", "growth", "--p", "1,2", "--d", "1..3"], ["diag", "growth", "--p", "x", "--d", "1"],
         ["diag", "qq", "--d", "1"], ["diag"]],
    )
    def test_bad_flags(self, argv):
        assert main(argv) == 2


class TestReplay:
    def test_manifest_content(self, tmp_path):
        out = tmp_path / "s.csv"
        main(["sample", "lhs", "--p", "3", "--d", "5", "--s", "2", "--seed", "4", "--out", str(out)])
        m = manifest_of(out)
        assert m["command"] == "sample" and m["seed"] == 4 and m["version"]
        assert m["outputs"] == {"out": str(out)} and "--out" not in m["argv"]
        assert m["config"]["d"] == 5

    @pytest.mark.parametrize(
        "argv",
        [
            ["sample", "random", "--p", "3", "--n", "50", "--seed", "2"],
            ["sample", "slhs", "--p", "4", "--d", "8", "--delta", "0.1", "--seed", "5"],
            ["diag", "qq", "--d", "30", "--s", "3", "--seed", "9"],
            ["diag", "growth", "--p", "2,3", "--d", "1..5"],
        ],
    )
    def test_byte_identical_rows(self, tmp_path, argv):
        first, second = tmp_path / "1.csv", tmp_path / "2.csv"
        assert main(argv + ["--out", str(first)]) == 0
        assert main(["replay", str(first), "--out", str(second)]) == 0
        assert data_rows(first) == data_rows(second)

    def test_solve_and_adapt(self, tmp_path, front_instance):
        s1, f1 = tmp_path / "s1.csv", tmp_path / "f1.csv"
        main(["solve", "--instance", str(front_instance), "--strategy", "lhs", "--d", "10", "--seed", "3",
              "--out", str(s1), "--front", str(f1)])
        s2, f2 = tmp_path / "s2.csv", tmp_path / "f2.csv"
        assert main(["replay", str(s1), "--out", str(s2), "--front", str(f2)]) == 0
        assert data_rows(s1) == data_rows(s2) and data_rows(f1) == data_rows(f2)
        a1, a2 = tmp_path / "a1.csv", tmp_path / "a2.csv"
        main(["adapt", "--instance", str(front_instance), "--out", str(a1)])
        assert main(["replay", str(a1), "--out", str(a2)]) == 0
        assert data_rows(a1) == data_rows(a2)

    def test_redirect_leaves_recorded_outputs_alone(self, tmp_path, front_instance):
        s1, f1, s2 = tmp_path / "s1.csv", tmp_path / "f1.csv", tmp_path / "s2.csv"
        main(["solve", "--instance", str(front_instance), "--strategy", "uniform", "--d", "4",
              "--out", str(s1), "--front", str(f1)])
        before = f1.read_bytes()
        assert main(["replay", str(s1), "--out", str(s2)]) == 0
        assert f1.read_bytes() == before
        assert data_rows(s1) == data_rows(s2)

    def test_no_manifest(self, tmp_path):
        plain = tmp_path / "plain.csv"
        plain.write_text("w1,w2\n0.5,0.5\n")
        assert main(["replay", str(plain)]) == 2
        assert main(["replay", str(tmp_path / "absent.csv")]) == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "wsweights", "sample", "uniform", "--p", "2", "--d", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-3:] == ["0,1", "0.5,0.5", "1,0"]
