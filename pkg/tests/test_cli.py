import json
import subprocess
import sys
from pathlib import Path

import pytest

from psicert.cli import run
from psicert.generators import example_fig2, generate_lambda_example
from psicert.polycore import poly_from_json, poly_to_json

GOLDEN = Path(__file__).parent / "golden"


def _run_cli(args, cwd=None):
    cmd = [sys.executable, "-m", "psicert", *args]
    return subprocess.run(cmd, cwd=cwd, text=True, capture_output=True)


@pytest.fixture()
def fig2_file(tmp_path):
    path = tmp_path / "fig2.json"
    path.write_text(json.dumps(poly_to_json(example_fig2())))
    return str(path)


@pytest.fixture()
def lambda15_file(tmp_path):
    path = tmp_path / "lambda15.json"
    path.write_text(json.dumps(poly_to_json(generate_lambda_example(15))))
    return str(path)


def test_check_psi_member_exit_zero(fig2_file):
    r = _run_cli(["check-psi", "--poly", fig2_file, "--d", "1"])
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["member"] is True


def test_check_psi_nonmember_exit_one(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(
        json.dumps({"n": 2, "terms": [
            {"exp": [1, 0], "coef": "1"}, {"exp": [0, 1], "coef": "-1"}]})
    )
    r = _run_cli(["check-psi", "--poly", str(path), "--d", "3"])
    assert r.returncode == 1
    doc = json.loads(r.stdout)
    assert doc["member"] is False
    assert doc["witness"]["monomial"] == [0, 4]


def test_min_d_found(lambda15_file):
    r = _run_cli(["min-d", "--poly", lambda15_file, "--max-d", "32"])
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["min_d"] == 29


def test_min_d_not_found_exit_one(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(
        json.dumps({"n": 2, "terms": [
            {"exp": [1, 0], "coef": "1"}, {"exp": [0, 1], "coef": "-1"}]})
    )
    r = _run_cli(["min-d", "--poly", str(path), "--max-d", "4"])
    assert r.returncode == 1
    assert json.loads(r.stdout)["min_d"] is None


def test_usage_error_exit_two():
    r = _run_cli(["check-psi", "--d", "1"])  # missing input file
    assert r.returncode == 2
    r2 = _run_cli(["frobnicate"])
    assert r2.returncode == 2
    # inconsistent family parameters are usage errors too
    r3 = _run_cli(["generate", "two-var", "--d", "2", "--m", "3", "--D", "8"])
    assert r3.returncode == 2


def test_search_local_strategy_smoke():
    r = _run_cli(["search", "--n", "2", "--D", "3", "--d", "1",
                  "--strategy", "local", "--budget", "5000", "--seed", "1"])
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["strategy"] == "local" and doc["seed"] == 1


def test_generate_and_signature_round_trip(tmp_path):
    out = tmp_path / "pd.json"
    r = _run_cli(["generate", "pd", "--n", "3", "--D", "6", "--out", str(out)])
    assert r.returncode == 0, r.stderr
    doc = json.loads(out.read_text())
    poly = poly_from_json(doc)
    assert len(poly.support) == 28
    r2 = _run_cli(["signature", "--poly", str(out)])
    sig = json.loads(r2.stdout)
    assert sig["n_plus"] + sig["n_minus"] == 28


def test_generate_fig2_matches_library(tmp_path):
    r = _run_cli(["generate", "fig2"])
    assert r.returncode == 0
    assert poly_from_json(json.loads(r.stdout)) == example_fig2()


def test_generate_qk_auto_reports_to_stderr():
    r = _run_cli(["generate", "qk", "--n", "3", "--k", "2"])
    assert r.returncode == 0
    assert "epsilon=1" in r.stderr
    doc = json.loads(r.stdout)
    assert doc["n"] == 3  # stdout stays a clean polynomial document


def test_verify_bounds(fig2_file):
    r = _run_cli(["verify-bounds", "--poly", fig2_file, "--d", "1"])
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["bound"] == "2" and doc["satisfied"] is True


def test_certificate(fig2_file):
    r = _run_cli(["certificate", "--poly", fig2_file])
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["max_fiber"] <= 2
    assert len(doc["assignment"]) == 6


def test_certificate_nonmember_exit_one(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(
        json.dumps({"n": 2, "terms": [
            {"exp": [2, 0], "coef": "1"}, {"exp": [0, 2], "coef": "-1"}]})
    )
    r = _run_cli(["certificate", "--poly", str(path)])
    assert r.returncode == 1


def test_search_cli_restricted(tmp_path, fig2_file):
    pat = tmp_path / "support.json"
    from psicert.patterns import pattern_from_poly, pattern_to_json

    pat.write_text(json.dumps(pattern_to_json(pattern_from_poly(example_fig2()))))
    r = _run_cli(
        [
            "search", "--n", "3", "--D", "6", "--d", "1",
            "--strategy", "exhaustive", "--support", str(pat),
        ]
    )
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["seed"] == 0
    num, _, den = doc["ratio"].partition("/")
    assert int(num) / int(den or "1") >= 6 / 7


def test_reduce_cli(tmp_path):
    from members import random_psi1_member
    from psicert.polycore import hermitian_to_json

    herm = tmp_path / "member.json"
    herm.write_text(json.dumps(hermitian_to_json(random_psi1_member(1))))
    steps = tmp_path / "steps.json"
    r = _run_cli(["reduce", "--herm", str(herm), "--out", str(steps)])
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["echelon"] is True
    assert doc["reconstruction_error"] <= 1e-9
    assert steps.exists()


def test_diagram_golden_files(fig2_file, tmp_path):
    r = _run_cli(["--format", "text", "diagram", "--poly", fig2_file, "--style", "svg"])
    assert r.returncode == 0
    assert r.stdout == (GOLDEN / "fig2.svg").read_text()
    r2 = _run_cli(["--format", "text", "diagram", "--poly", fig2_file, "--style", "ascii"])
    assert r2.stdout == (GOLDEN / "fig2.txt").read_text()


def test_diagram_deterministic(fig2_file):
    a = _run_cli(["diagram", "--poly", fig2_file])
    b = _run_cli(["diagram", "--poly", fig2_file])
    assert a.stdout == b.stdout


def test_diagram_empty_pattern_header_only(tmp_path):
    pat = tmp_path / "empty.json"
    pat.write_text(json.dumps({"n": 3, "D": 2, "pos": [], "neg": []}))
    r = _run_cli(["--format", "text", "diagram", "--pattern", str(pat)])
    assert r.returncode == 0
    assert r.stdout.count("<circle") == 0
    assert r.stdout.startswith("<svg") and r.stdout.rstrip().endswith("</svg>")


def test_reduce_nonmember_exit_one(tmp_path):
    doc = {"n": 2, "entries": [
        {"alpha": [1, 0], "beta": [1, 0], "re": "1", "im": "0"},
        {"alpha": [0, 1], "beta": [0, 1], "re": "-1", "im": "0"},
    ]}
    herm = tmp_path / "bad.json"
    herm.write_text(json.dumps(doc))
    r = _run_cli(["reduce", "--herm", str(herm)])
    assert r.returncode == 1


def test_diagram_rejects_many_vars(tmp_path):
    path = tmp_path / "p4.json"
    path.write_text(
        json.dumps({"n": 4, "terms": [{"exp": [1, 0, 0, 0], "coef": "1"}]})
    )
    r = _run_cli(["diagram", "--poly", str(path)])
    assert r.returncode == 2


def test_check_psi_hermitian_input(tmp_path):
    from members import random_psi1_member
    from psicert.polycore import hermitian_to_json

    herm = tmp_path / "member.json"
    herm.write_text(json.dumps(hermitian_to_json(random_psi1_member(5))))
    r = _run_cli(["check-psi", "--herm", str(herm), "--d", "1"])
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["member"] is True


def test_malformed_input_is_usage_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    r = _run_cli(["check-psi", "--poly", str(bad), "--d", "1"])
    assert r.returncode == 2
    bad2 = tmp_path / "bad2.json"
    bad2.write_text(json.dumps({"n": 2, "terms": [{"exp": [1], "coef": "1"}]}))
    r2 = _run_cli(["check-psi", "--poly", str(bad2), "--d", "1"])
    assert r2.returncode == 2


def test_check_psi_with_multiplier(tmp_path):
    poly = tmp_path / "p.json"
    poly.write_text(
        json.dumps({"n": 2, "terms": [
            {"exp": [1, 0], "coef": "1"}, {"exp": [0, 1], "coef": "-1"}]})
    )
    mult = tmp_path / "s.json"
    mult.write_text(json.dumps({"n": 2, "exps": [[2, 0], [0, 2]]}))
    r = _run_cli(["check-psi", "--poly", str(poly), "--d", "0",
                  "--multiplier", str(mult)])
    assert r.returncode == 1
    assert json.loads(r.stdout)["witness"]["monomial"] == [0, 3]


def test_search_reports_knight_reference():
    r = _run_cli(["search", "--n", "3", "--D", "2", "--d", "2",
                  "--strategy", "greedy"])
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["knight_move_reference"] == 4


def test_json_outputs_reparse(fig2_file):
    # every JSON document a subcommand prints must parse back
    for args in (
        ["check-psi", "--poly", fig2_file, "--d", "1"],
        ["signature", "--poly", fig2_file],
        ["verify-bounds", "--poly", fig2_file, "--d", "1"],
        ["certificate", "--poly", fig2_file],
    ):
        r = _run_cli(args)
        json.loads(r.stdout)


def test_run_callable_directly(fig2_file):
    assert run(["check-psi", "--poly", fig2_file, "--d", "1"]) == 0
    assert run(["nonsense"]) == 2
