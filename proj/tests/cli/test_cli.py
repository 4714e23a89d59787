import json
import os
import subprocess
from pathlib import Path

import jsonschema
import pytest

BIN = os.environ.get("CASASKIT_BIN", str(Path(__file__).resolve().parents[2] / "build/tools/casaskit"))
SCHEMAS = Path(os.environ.get("CASASKIT_SCHEMAS", Path(__file__).resolve().parents[2] / "schemas"))


def run(*args, stdin=None):
    return subprocess.run([BIN, *args], input=stdin, capture_output=True, text=True, timeout=600)


def run_json(verb, *args, stdin=None):
    out = run(verb, *args, "--json", stdin=stdin)
    assert out.returncode in (0, 2), out.stderr
    doc = json.loads(out.stdout)
    schema = json.loads((SCHEMAS / f"{verb}.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    jsonschema.validate(doc, schema, cls=jsonschema.Draft202012Validator)
    return doc, out


def test_analyze_cubic():
    doc, _ = run_json("analyze", "-i", "x^3 - x")
    assert [r["exact"] for r in doc["roots"]] == ["-1", "0", "1"]
    assert doc["trivial"] is False
    assert doc["real_rooted"] is True
    assert doc["centroid"]["exact"] == "0"
    assert doc["gap_squared"] == "1/3"


def test_analyze_coefficient_list_is_binomial():
    doc, _ = run_json("analyze", "-i", "poly:[1,-8,24,-32,16]")
    # (x - 2)^4 expanded by the binomial theorem
    assert doc["polynomial"] == "x^4 - 8*x^3 + 24*x^2 - 32*x + 16"
    assert doc["trivial"] is True
    assert len(doc["roots"]) == 1 and doc["roots"][0]["multiplicity"] == 4


def test_analyze_rejects_degree_zero_and_parse_errors():
    out = run("analyze", "-i", "7")
    assert out.returncode == 1
    assert "degree" in out.stderr
    out = run("analyze", "-i", "x^2 + + 1")
    assert out.returncode == 1
    assert "position" in out.stderr


def test_input_from_stdin_and_file(tmp_path):
    doc, _ = run_json("analyze", stdin="x^2 - 1\n")
    assert doc["degree"] == 2
    f = tmp_path / "p.txt"
    f.write_text("(x-1)^3\n")
    doc, _ = run_json("analyze", "-i", f"@{f}")
    assert doc["trivial"] is True


def test_goncharov_examples():
    doc, _ = run_json("goncharov", "-i", "nodes:[0,1,2]", "--cross-check")
    assert doc["polynomial"] == "z^3 - 6*z^2 + 9*z"
    assert doc["cross_check"]["agree"] is True
    doc, _ = run_json("goncharov", "-i", "nodes:[3,3,3]")
    assert doc["polynomial"] == "z^3 - 9*z^2 + 27*z - 27"
    doc, _ = run_json("goncharov", "-i", "nodes:[0,1]", "--bound-at", "2")
    b = doc["bounds"][0]
    assert b["abs"] == 0
    assert b["sharp"] <= 9
    assert b["goncharov"] == 9


def test_goncharov_budget_reports_cap():
    out = run("goncharov", "-i", "nodes:[0,1,2,3]", "--construction", "genetic", "--budget", "3")
    assert out.returncode == 1
    assert "cap 3" in out.stderr


def test_identities_and_bounds():
    doc, _ = run_json("identities", "-i", "x^4 - 3*x^2 + 2*x")
    assert doc["all_pass"] is True
    eq21 = [r for r in doc["reports"] if r["id"] == "eq21" and r["hypothesis_ok"]]
    assert eq21 and eq21[0]["exact_residuals"] == ["0"]
    doc, _ = run_json("bounds", "-i", "x*(x-1)*(x-2)")
    assert doc["violations"] == 0
    assert {"eq26", "eq27", "eq28", "eq39"} <= {r["id"] for r in doc["reports"]}


def test_ca_check():
    doc, out = run_json("ca-check", "-i", "x^4 - 3*x^2 + 2*x", "--chain", "nodes:[1,1]")
    assert out.returncode == 0
    assert doc["verdict"] == "not_ca"
    assert [o["shared"] for o in doc["orders"]] == [True, False, True]
    assert doc["shared_root_counts"]["l"] == [2, 1, 0, 0]
    assert doc["chain"]["stationary"] is True
    doc, _ = run_json("ca-check", "-i", "(x-2)^4")
    assert doc["verdict"] == "trivial"
    assert doc["unit_disc"]["alpha"] == "1/4"


def test_ca_search_degree_four_is_deterministic():
    a, out_a = run_json("ca-search", "--degree", "4", "--seed", "7")
    b, out_b = run_json("ca-search", "--degree", "4", "--seed", "7")
    assert out_a.returncode == 0
    assert a["verdict"] == "no candidate below theta"
    assert out_a.stdout == out_b.stdout
    # every enumerated composition appears exactly once
    assert len(a["patterns"]) == 8
    assert len({tuple(p["pattern"]) for p in a["patterns"]}) == 8


def test_ca_search_degree_one_and_errors():
    doc, out = run_json("ca-search", "--degree", "1")
    assert out.returncode == 0
    assert "trivial" in doc["note"]
    assert run("ca-search", "--degree", "0").returncode == 1
    assert run("ca-search", "--degree", "6", "--complex").returncode == 1
    assert run("ca-search", "--filters", "nonsense").returncode == 1


def test_ca_search_budget_marks_incomplete():
    out = run("ca-search", "--degree", "5", "--budget", "1", "--json")
    assert out.returncode == 1
    assert json.loads(out.stdout)["incomplete"] is True


def test_ca_search_reporting_mode_lists_candidates():
    doc, out = run_json("ca-search", "--degree", "3", "--theta", "inf")
    assert out.returncode == 2
    assert doc["config"]["theta"] is None
    assert doc["candidates"]
    assert not any(c["verified"] for c in doc["candidates"])


@pytest.mark.parametrize(
    "args, code",
    [
        (["analyze", "-i", "x^3 - x"], 0),
        (["analyze", "-i", "0"], 1),
        (["analyze", "--unknown"], 1),
        (["frobnicate"], 1),
        ([], 1),
        (["bounds", "-i", "x^2 + 1"], 1),
        (["ca-check", "-i", "x^3 - x"], 0),
        (["ca-search", "--degree", "3"], 0),
        (["ca-search", "--degree", "-2"], 1),
    ],
)
def test_exit_code_contract(args, code):
    assert run(*args).returncode == code


def test_canonical_text_round_trips():
    for text in ["x^3 - x", "(x - 1/2)^3 * (x + 3)", "poly:[2, (0,1), -1/3]", "x^5 - 40*x^3 + 135*x^2 - 126*x"]:
        doc, _ = run_json("analyze", "-i", text)
        again, _ = run_json("analyze", "-i", doc["polynomial"])
        assert again["polynomial"] == doc["polynomial"]


def test_human_output_uses_twelve_digits():
    out = run("analyze", "-i", "x^3 - x")
    assert "gap: 0.57735026919" in out.stdout
