import dataclasses
import io
import json
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout

import pytest

from twistfuse import cli, folding
from twistfuse.cli import JobSpec, build_parser, main


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def run_json(argv):
    code, out, err = run_cli(argv + ["--format", "json"])
    assert code == 0, err
    return json.loads(out)


def test_list_boundaries():
    data = run_json(["list", "boundaries", "--algebra", "A2", "--automorphism", "flip",
                     "--level", "2"])
    assert data["boundaries"] == [["0", "0"], ["1/2", "1/2"]]
    assert data["algebra"] == "A2" and data["level"] == 2


def test_list_reps_text():
    code, out, _ = run_cli(["list", "reps", "--algebra", "A1", "--level", "3"])
    assert code == 0
    assert "reps (4):" in out
    for j in range(4):
        assert f"[{j}]" in out


def test_list_all_json():
    data = run_json(["list", "--algebra", "D4", "--automorphism", "triality", "--level", "3"])
    assert len(data["reps"]) > len(data["symmetric"]) == len(data["boundaries"]) == 3
    assert ["1/3", "0", "1/3", "1/3"] in data["boundaries"]


def test_unsupported_automorphism():
    code, out, err = run_cli(["list", "--algebra", "A2", "--automorphism", "triality",
                              "--level", "1"])
    assert code == 2
    assert "not defined for A2" in err
    assert out == ""


@pytest.mark.parametrize("argv", [
    ["list", "--algebra", "X9", "--level", "1"],
    ["list", "--algebra", "A2"] + ["--level", "-1"],
    ["fuse", "--algebra", "A2", "--automorphism", "flip", "--level", "1",
     "--rep", "1,1", "--boundary", "0,0"],
    ["fuse", "--algebra", "A2", "--automorphism", "flip", "--level", "2",
     "--rep", "1/2,0", "--boundary", "0,0"],
    ["fuse", "--algebra", "A2", "--automorphism", "flip", "--level", "2",
     "--rep", "0,0", "--boundary", "1/2,0"],
    ["fuse", "--algebra", "A2", "--automorphism", "flip", "--level", "2",
     "--rep", "0,0", "--boundary", "x"],
    ["nimrep", "--algebra", "A2", "--level", "1", "--rep", "2,0"],
    ["bogus"],
])
def test_usage_errors(argv):
    code, _, _ = run_cli(argv)
    assert code == 2


def test_fuse_vacuum():
    data = run_json(["fuse", "--algebra", "A2", "--automorphism", "flip", "--level", "2",
                     "--rep", "0,0", "--boundary", "1/2,1/2"])
    assert data["index_order"] == [["0", "0"], ["1/2", "1/2"]]
    assert data["coefficients"] == [0, 1]


def test_fuse_adjoint():
    data = run_json(["fuse", "--algebra", "A2", "--automorphism", "flip", "--level", "2",
                     "--rep", "1,1", "--boundary", "0,0"])
    assert data["coefficients"] == [1, 1]


def test_nimrep_vacuum_identity():
    data = run_json(["nimrep", "--algebra", "D4", "--automorphism", "flip", "--level", "2",
                     "--rep", "0,0,0,0"])
    n = len(data["index_order"])
    assert data["matrices"][0]["matrix"] == [[int(r == c) for c in range(n)] for r in range(n)]


def test_nimrep_all_matches_verify():
    data = run_json(["nimrep", "--algebra", "A2", "--automorphism", "flip", "--level", "2"])
    reps = [m["rep"] for m in data["matrices"]]
    assert reps == [["0", "0"], ["0", "1"], ["0", "2"], ["1", "0"], ["1", "1"], ["2", "0"]]
    assert data["matrices"][4]["matrix"] == [[1, 1], [1, 0]]
    code, _, _ = run_cli(["verify", "--algebra", "A2", "--automorphism", "flip", "--level", "2"])
    assert code == 0


def test_verify_a2_flip():
    data = run_json(["verify", "--algebra", "A2", "--automorphism", "flip", "--max-level", "3"])
    assert data["status"] == "pass"
    assert [r["level"] for r in data["levels"]] == [1, 2, 3]
    assert all(r["max_residual"] < 1e-6 for r in data["levels"])


def test_verify_a1_kac_walton():
    data = run_json(["verify", "--algebra", "A1", "--max-level", "6"])
    assert data["status"] == "pass"
    assert sum(r["triples"] for r in data["levels"]) == sum((k + 1) ** 3 for k in range(1, 7))


def test_verify_corrupted_theta(monkeypatch):
    orig = folding.named_automorphism

    def corrupted(spec, name):
        aut = orig(spec, name)
        return dataclasses.replace(aut, theta_omega=tuple(2 * x for x in aut.theta_omega))

    monkeypatch.setattr(folding, "named_automorphism", corrupted)
    code, out, _ = run_cli(["verify", "--algebra", "A2", "--automorphism", "flip",
                            "--max-level", "1"])
    assert code == 1
    assert "first mismatch (i, alpha, beta) = (0,0; 0,0; 0,0)" in out


def test_internal_error_exit_code(monkeypatch):
    import twistfuse.fusion as fusion
    orig = fusion._projected
    monkeypatch.setattr(fusion, "_projected",
                        lambda i, aut: tuple((X, -m) for X, m in orig(i, aut)))
    code, _, err = run_cli(["fuse", "--algebra", "A2", "--automorphism", "flip", "--level", "2",
                            "--rep", "1,0", "--boundary", "0,0"])
    assert code == 3
    assert "internal error" in err


@pytest.mark.parametrize("argv", [
    ["nimrep", "--algebra", "A3", "--automorphism", "flip", "--level", "2", "--format", "json"],
    ["list", "--algebra", "E6", "--automorphism", "flip", "--level", "2"],
    ["verify", "--algebra", "D4", "--automorphism", "triality", "--max-level", "2",
     "--format", "json"],
])
def test_byte_identical_output(argv):
    first = run_cli(argv)
    second = run_cli(argv)
    assert first == second


def test_fraction_wire_format():
    data = run_json(["list", "boundaries", "--algebra", "E6", "--automorphism", "flip",
                     "--level", "3"])
    for w in data["boundaries"]:
        for s in w:
            assert isinstance(s, str)
            q = int(s.split("/")[1]) if "/" in s else 1
            assert q in (1, 2, 3)


@pytest.mark.parametrize("job", [
    JobSpec("A2", "flip", 2, (1, 1), cli.as_weight(["1/2", "1/2"]), "json"),
    JobSpec("D4", "triality", 3, (0, 1, 0, 0), cli.as_weight(["1/3", 0, "1/3", "1/3"]), "text"),
    JobSpec("A1", "trivial", 0, (0,), (0,), "text"),
])
def test_jobspec_round_trip(job):
    args = build_parser().parse_args(["fuse"] + job.to_argv())
    again = JobSpec.from_args(args)
    assert again == job
    assert again.to_argv() == job.to_argv()


def test_fractional_rep_rejected():
    with pytest.raises(cli.UsageError):
        cli.parse_labels("1/2,0")
    assert cli.parse_labels("1/2, 0", fractional=True) == (cli.Fraction(1, 2), 0)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twistfuse", "list", "reps", "--algebra", "A1",
                           "--level", "1", "--format", "json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["reps"] == [["0"], ["1"]]
