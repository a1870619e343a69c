import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from frobrig.cli import EXIT_USAGE, main

SCHEMAS = {
    ("check",): "check.json",
    ("decide",): "decide.json",
    ("as-class",): "as-class.json",
    ("local", "probe"): "local-probe.json",
    ("local", "solve"): "local-solve.json",
    ("count",): "count.json",
    ("perf",): "perf.json",
    ("family",): "family.json",
    ("reduce",): "reduce.json",
}

CASES = [
    (["check", "--f", "t", "--g", "t^2"], 0),
    (["check", "--f", "t", "--g", "t+1", "--decide"], 1),
    (["check", "--f", "t^3+t", "--g", "t^6+t^2", "--depth", "3", "--nmax", "20"], 0),
    (["check", "--f", "t", "--g", "t^2", "--field", "GF(2^2)", "--base-degree", "2"], 1),
    (["decide", "--f", "t^2+t", "--g", "t^2+t+1"], 1),
    (["decide", "--f", "t^2", "--g", "t"], 0),
    (["as-class", "t^2"], 0),
    (["as-class", "t^-6+t^-5+t^-4+t^-3+t^-2+t^-1+1", "over", "GF(2^2)"], 0),
    (["local", "probe", "--f", "t^-1", "--g", "t^-1+1", "--field", "GF(2^2)", "--nmax", "9"], 0),
    (["local", "probe", "--f", "t^-2+t^-1", "--g", "t^-2+t^-1"], 0),
    (["local", "solve", "--z", "t^-2+t^-1+1", "--field", "GF(2^2)"], 0),
    (["local", "solve", "--z", "t^-3 + O(t^-1)"], 2),
    (["count", "--f", "t^2+t", "--g", "t^2+t+1", "--dmax", "3"], 0),
    (["perf", "--expr", "(t^4+t^2)/(t^2+1)"], 0),
    (["perf", "--expr", "w", "--field", "GF(2^2)"], 0),
    (["perf", "--expr", "t^8", "--nmax", "2"], 2),
    (["family", "--field", "GF(3^2)"], 0),
    (["reduce", "--f", "t^8"], 0),
]


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        code = main(argv)
    finally:
        sys.stdout, sys.stderr = old
    return code, out.getvalue(), err.getvalue()


def schema_for(argv):
    key = tuple(argv[:2]) if argv[0] == "local" else (argv[0],)
    text = resources.files("frobrig").joinpath("schemas", SCHEMAS[key]).read_text()
    return json.loads(text)


# -- examples ------------------------------------------------------------------------------

def test_check_example():
    code, out, _ = run_cli(["check", "--f", "t", "--g", "t^2", "--field", "GF(2)", "--json"])
    data = json.loads(out)
    assert code == 0
    assert data["frobenius"]["kind"] == "equivalent"
    assert (data["frobenius"]["a"], data["frobenius"]["b"]) == (1, 0)
    assert data["consistent"] is True


def test_family_example():
    code, out, _ = run_cli(["family", "--field", "GF(2^2)", "--json"])
    data = json.loads(out)
    assert code == 0 and data["distinct"] == 3 and data["injective"]
    assert [c["class"] for c in data["classes"]] == ["0", "(w + 1)*y", "w*y"]


def test_as_class_example():
    code, out, _ = run_cli(["as-class", "t^2", "--field", "GF(2)", "--json"])
    data = json.loads(out)
    assert data["reduced_text"] == "t" and data["trivial"] is False


def test_translate_text_output():
    code, out, _ = run_cli(["check", "--f", "t", "--g", "t+1"])
    assert code == 1
    assert "topological: not equivalent: y = 0" in out
    assert "h1:          not equivalent: torsor n = 1" in out


# -- contract ------------------------------------------------------------------------------------

@pytest.mark.parametrize("argv,expect", CASES, ids=lambda v: " ".join(v) if isinstance(v, list) else str(v))
def test_json_schema_and_exit_code(argv, expect):
    code, out, err = run_cli(argv + ["--json"])
    assert code == expect, err
    jsonschema.validate(json.loads(out), schema_for(argv))


@pytest.mark.parametrize("argv,expect", CASES[::3])
def test_output_is_deterministic(argv, expect):
    first = run_cli(argv + ["--json"])
    second = run_cli(argv + ["--json"])
    assert first == second
    assert run_cli(argv) == run_cli(argv)


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["check", "--f", "t"],
    ["as-class", "t", "under", "GF(2)"],
    ["local", "solve"],
    ["local", "probe", "--f", "t^-1"],
    ["count", "--f", "t", "--g", "t+1", "--dmax", "x"],
])
def test_usage_errors(argv):
    code, out, err = run_cli(argv)
    assert code == EXIT_USAGE and "usage error" in err


@pytest.mark.parametrize("argv", [
    ["reduce", "--f", "1"],
    ["check", "--f", "t", "--g", "t", "--field", "GF(4)"],
    ["decide", "--f", "t", "--g", "1"],
    ["count", "--f", "t", "--g", "t"],
])
def test_library_errors_exit_3(argv):
    code, _, err = run_cli(argv)
    assert code == 3 and err.startswith("error:")


def test_budget_flag_and_env(monkeypatch):
    argv = ["count", "--f", "t^3+t", "--g", "t", "--dmax", "4"]
    assert run_cli(argv)[0] == 0
    code, _, err = run_cli(argv + ["--budget", "8"])
    assert code == 3 and "BudgetExceeded" in err
    monkeypatch.setenv("FROBRIG_BUDGET", "8")
    code, _, err = run_cli(argv)
    assert code == 3 and "BudgetExceeded" in err


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "frobrig.cli", "reduce", "--f", "t^4+t^2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "(t^2 + t)^(2^1)"
