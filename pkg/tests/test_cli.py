import json

import pytest

from tourdecomp.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main


@pytest.fixture
def tt4_file(tmp_path):
    path = tmp_path / "tt4.txt"
    assert main(["gen", "--kind", "transitive", "--n", "4", "--out", str(path)]) == EXIT_OK
    return path


def test_gen_stdout(capsys):
    assert main(["gen", "--kind", "transitive", "--n", "3"]) == EXIT_OK
    assert capsys.readouterr().out == "3 3\n0 1\n0 2\n1 2\n"


def test_gen_bad_spec(capsys):
    assert main(["gen", "--kind", "skewed", "--n", "4"]) == EXIT_INPUT
    assert "bias" in capsys.readouterr().err


def test_excess_text_and_json(tt4_file, capsys):
    assert main(["excess", str(tt4_file)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("ex(D) = 4\n0\t+3\n")
    assert main(["excess", str(tt4_file), "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["total"] == 4


def test_excess_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 5\n")
    assert main(["excess", str(bad)]) == EXIT_INPUT
    assert "outside" in capsys.readouterr().err
    assert main(["excess", str(tmp_path / "nope.txt")]) == EXIT_INPUT


def test_decompose_exact(tt4_file, capsys):
    assert main(["decompose", str(tt4_file)]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["kind"] == "perfect" and len(data["paths"]) == 4 and data["exact"]


def test_decompose_construct(tmp_path, capsys):
    path = tmp_path / "t.txt"
    main(["gen", "--kind", "transitive", "--n", "20", "--out", str(path)])
    assert main(["decompose", str(path), "--method", "construct"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["kind"] == "perfect"


def test_decompose_construct_failure(tmp_path, capsys):
    path = tmp_path / "nr6.txt"
    main(["gen", "--kind", "near_regular", "--n", "6", "--out", str(path)])
    code = main(["decompose", str(path), "--method", "construct", "--params", "1,2,3"])
    assert code == EXIT_FAILED
    assert "build" in capsys.readouterr().err


def test_decompose_bad_params(tt4_file):
    assert main(["decompose", str(tt4_file), "--method", "construct", "--params", "x"]) == EXIT_INPUT


def test_verify(capsys):
    assert main(["verify", "--n", "4", "--all"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("n=4: 64 instances, 64 consistent, 0 violations")


def test_verify_errors(capsys):
    assert main(["verify", "--n", "5", "--all"]) == EXIT_INPUT
    assert main(["verify", "--n", "4"]) == EXIT_INPUT


def test_experiment_json_no_timing(tmp_path):
    args = ["experiment", "--kind", "random_uniform", "--n", "6", "--samples", "3",
            "--method", "exact", "--no-timing"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(a)]) == EXIT_OK
    assert main(args + ["--out", str(b), "--workers", "2"]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert "timing" not in json.loads(a.read_text())


def test_experiment_csv(tmp_path):
    out = tmp_path / "r.csv"
    assert main(["experiment", "--kind", "transitive", "--n", "8", "--samples", "2",
                 "--format", "csv", "--out", str(out)]) == EXIT_OK
    assert len(out.read_text().splitlines()) == 3
    assert main(["experiment", "--n", "8", "--format", "csv"]) == EXIT_INPUT


def test_verify_counterexample_exit_code(monkeypatch, capsys):
    fake = {"n": 4, "instances": 1, "consistent": 0, "inconclusive": [],
            "violations": [{"index": 0, "ex": 2, "pn": 3, "edge_list": "4 0\n", "edges": []}]}
    monkeypatch.setattr("tourdecomp.cli.verify_conjecture", lambda *a, **k: fake)
    assert main(["verify", "--n", "4", "--all"]) == 3
    out = capsys.readouterr().out
    assert '"pn": 3' in out and "1 violations" in out


def test_verify_inconclusive_exit_code(capsys):
    assert main(["verify", "--n", "6", "--samples", "2", "--budget-ms", "0.001"]) in (0, 2)
