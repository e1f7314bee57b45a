import json
import logging
from pathlib import Path

import pytest
from click.testing import CliRunner

from src.classify import VerificationReport, verifiers
from src.cli import app
from src.cli.app import cli
from src.core.errors import VerificationError

GOLDEN = Path(__file__).parent / "golden"

SWAP_P = "0,1,4|7|3|2,5,6"
SWAP_Q = "0,1,4|3|7|2,5,6"


@pytest.fixture(autouse=True)
def restore_logging():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, list(args))
    return invoke


def test_diffset(run):
    result = run("diffset", "--n", "8", "--set", "2,3,5,6")
    assert result.exit_code == 0
    assert result.output == "{0^4,1^2,2,3^2,4}\n"


def test_cross_diffset(run):
    result = run("diffset", "--n", "8", "--set", "2,3", "--set", "5,6")
    assert result.exit_code == 0
    assert result.output.strip() == "{2,3^2,4}"


def test_diffset_json(run):
    result = run("diffset", "--n", "8", "--set", "0,1,4,7", "--json")
    payload = json.loads(result.output)
    assert payload["multiset"] == [4, 2, 1, 2, 1]
    assert payload["schema"] == "homometry-lab/v1"


@pytest.mark.parametrize("args", [
    ["--n", "8", "--set", ""],
    ["--n", "8", "--set", "1,9"],
    ["--n", "8", "--set", "a,b"],
    ["--n", "0", "--set", "0"],
    ["--n", "8", "--set", "1", "--set", "2", "--set", "3"],
])
def test_diffset_bad_input(run, args):
    result = run("diffset", *args)
    assert result.exit_code == 2
    assert "Error" in result.output


def test_classify_text(run):
    result = run("classify", "--n", "8", "--p", SWAP_P, "--q", SWAP_Q)
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "PSEUDO_ONLY"
    assert lines[1] == "homometric, not equivalent, pseudo-equivalent"
    assert lines[2] == "pseudo-equivalence witnesses: r^0, r^4, r^4, r^0"


def test_classify_json_matches_golden(run):
    result = run("classify", "--n", "8", "--p", SWAP_P, "--q", SWAP_Q, "--json")
    assert result.exit_code == 0
    expected = json.loads((GOLDEN / "classify_pseudo.json").read_text(encoding="utf-8"))
    assert json.loads(result.output) == expected


def test_classify_homometric_only(run):
    result = run("classify", "--n", "8", "--p", "0,1,4,7|2,6|3,5", "--q", "0,1,3,4|2,6|5,7")
    assert result.output.splitlines()[:2] == ["HOMOMETRIC_ONLY", "homometric, not equivalent, not pseudo-equivalent"]


def test_classify_rejects_mismatched_blocks(run):
    result = run("classify", "--n", "8", "--p", "0,1,2,3|4,5,6,7", "--q", "0,1,2,3|4,5|6,7")
    assert result.exit_code == 2
    result = run("classify", "--n", "8", "--p", "0,1,2|2,3,4,5,6,7", "--q", "0,1,2,3|4,5,6,7")
    assert result.exit_code == 2


def test_form_collisions(run):
    result = run("form", "--n", "5", "--p", "0|1,2,3,4", "--q", "1,2,3,4|0", "--alphabet", "1,-1")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["forms_equal"] is False
    assert payload["collision_ratios"] == pytest.approx([-1.0])
    assert payload["autocorrelation"] == pytest.approx([5.0, 1.0, 1.0, 1.0, 1.0])
    assert payload["mass"] == 25


def test_table1_row(run):
    result = run("table1", "--n", "6", "--mode", "exhaustive", "--workers", "1")
    assert result.exit_code == 0
    assert result.output == (
        "N,sizes,equivalent,pseudo_only,homometric_only,total_homometric\n"
        "6,2-2-2,369,0,0,369\n"
    )


def test_table1_sample_is_deterministic(run):
    args = ["table1", "--n", "9", "--mode", "sample", "--seed", "1", "--count", "40", "--workers", "1", "--json"]
    first, second = run(*args), run(*args)
    assert first.exit_code == 0
    assert first.output == second.output
    rows = json.loads(first.output)
    assert rows[0]["sample_size"] == 40 and rows[0]["sizes"] == [3, 3, 3]


def test_table1_writes_file(run, tmp_path):
    out = tmp_path / "table.csv"
    result = run("table1", "--n", "7", "--mode", "exhaustive", "--workers", "1", "--out", str(out))
    assert result.exit_code == 0
    assert result.output == ""
    assert out.read_text(encoding="utf-8").splitlines()[1] == "7,3-2-2,1218,0,0,1218"


def test_table1_reports_failed_rows(run):
    result = run("table1", "--n", "6", "--mode", "sample", "--count", "500", "--workers", "1")
    assert result.exit_code == 2
    assert "N=6" in result.output


@pytest.mark.parametrize("args", [[], ["--n", "6", "--all"], ["--all", "--profile", "2-2-2"]])
def test_table1_usage(run, args):
    assert run("table1", *args).exit_code == 2


@pytest.mark.parametrize("args", [
    ["--theorem", "patterson", "--n", "8"],
    ["--theorem", "patterson", "--n", "18", "--mode", "sampled", "--count", "100"],
    ["--theorem", "two-alphabet", "--n", "7", "--trials", "50"],
    ["--theorem", "sparse", "--n", "6", "--k", "3"],
    ["--theorem", "singletons", "--n", "8", "--k", "3"],
    ["--theorem", "forms", "--n", "6", "--k", "2"],
])
def test_verify_passes(run, args):
    result = run("verify", *args)
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["violations"] == []
    assert payload["checked"] > 0


def test_verify_exits_one_on_counterexample(run, monkeypatch):
    def broken(ring, **kwargs):
        report = VerificationReport("patterson", ring.n, checked=1)
        report.violations.append({"a": [0], "b": [1], "direction": "sets homometric, complements not"})
        return report

    monkeypatch.setattr(verifiers, "verify_patterson", broken)
    result = run("verify", "--theorem", "patterson", "--n", "8")
    assert result.exit_code == 1
    assert json.loads(result.output.split("Error")[0])["violations"][0]["a"] == [0]
    assert "1 counterexample(s) to patterson at N=8" in result.output


def test_table1_exits_one_when_cross_check_fails(run, monkeypatch):
    def broken(*args, **kwargs):
        raise VerificationError("Scan found 1 equivalent pairs, orbit count gives 2")

    monkeypatch.setattr(app, "run_table1", broken)
    result = run("table1", "--n", "6", "--mode", "exhaustive")
    assert result.exit_code == 1
    assert "orbit count gives 2" in result.output


def test_verify_budget_is_a_usage_error(run):
    assert run("verify", "--theorem", "patterson", "--n", "20").exit_code == 2
    assert run("verify", "--theorem", "sparse", "--n", "8", "--budget", "100").exit_code == 2


def test_refine(run):
    result = run("refine", "--n", "8", "--a", "0,1,4,7", "--a-prime", "0,1,3,4", "--parts", "3")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[-1] == "12 homometric pair(s)"
    assert "({0,1,4,7},{2,6},{3},{5}) vs ({0,1,3,4},{2,6},{5},{7}): HOMOMETRIC_ONLY" in lines
