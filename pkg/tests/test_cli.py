import json

import pytest

from itea.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_run_trace_csv(capsys):
    code, out, _ = _run(capsys, "run", "--algorithm", "it1", "--function", "leadingones", "--n", "50",
                        "--trace-every", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "iteration,evaluations,best_fitness,p,theta"
    assert len(lines) > 2


def test_bench_defaults_filled(capsys):
    code, out, _ = _run(capsys, "bench", "--algorithm", "eit", "--function", "onemax", "--n", "200",
                        "--runs", "3", "--seed", "7")
    assert code == 0
    d = json.loads(out)
    assert (d["lambda"], d["mu"], d["p0"], d["p_min"], d["alpha"], d["p_max"]) == (20, 1, 1 / 200, 1 / 200, 0.2, 0.5)
    assert d["runs"] == 3 and d["seed"] == 7 and d["success_count"] == 3


def test_bench_csv(capsys):
    code, out, _ = _run(capsys, "bench", "--n", "40", "--runs", "2", "--format", "csv")
    header, row = out.splitlines()
    assert header.split(",")[0] == "algorithm" and row.startswith("eit,onemax,40,4,")


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["bench", "--algorithm", "two_rate", "--lambda", "9"], "--lambda"),
        (["run", "--mu", "20", "--lambda", "10"], "--mu"),
        (["run", "--p0", "0.9"], "--p0"),
        (["run", "--p0", "0.001", "--p-min", "0.01"], "--p0"),
        (["static", "--initial-weight", "500"], "--initial-weight"),
        (["bench", "--runs", "0"], "--runs"),
    ],
)
def test_usage_errors(capsys, argv, flag):
    code, _, err = _run(capsys, *argv)
    assert code == 2
    assert flag in err


@pytest.mark.parametrize("argv", [["run", "--algorithm", "sga"], ["run", "--function", "nk"]])
def test_unknown_choices(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert argv[1] in capsys.readouterr().err


def test_help_lists_defaults(capsys):
    with pytest.raises(SystemExit):
        main(["bench", "--help"])
    out = capsys.readouterr().out
    for text in ("--p-min", "default: p0", "default: 0.2", "default: 100", "--jobs", "max(1, n // 10)"):
        assert text in out


def test_out_file_and_reproducibility(tmp_path, capsys):
    argv = ["run", "--n", "60", "--seed", "3", "--algorithm", "neit"]
    target = tmp_path / "trace.csv"
    assert main(argv + ["--out", str(target)]) == 0
    code, out, _ = _run(capsys, *argv)
    assert target.read_text() == out
    assert list(tmp_path.iterdir()) == [target]


def test_run_json(capsys):
    code, out, _ = _run(capsys, "run", "--n", "30", "--format", "json", "--trace-every", "0")
    d = json.loads(out)
    assert d["success"] and d["trace"] == [] and d["metadata"]["n"] == 30


def test_static_cli(capsys):
    code, out, _ = _run(capsys, "static", "--n", "20", "--iterations", "5", "--initial-weight", "10")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "iteration,p,theta,p_hat" and len(lines) == 7
    code, out, _ = _run(capsys, "static", "--n", "20", "--iterations", "2", "--format", "json")
    assert json.loads(out)["metadata"]["p_max"] == 1.0
