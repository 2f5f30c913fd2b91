from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from strictunits.cli import run


def _run(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_passing_command_exits_zero():
    code, out, err = _run("identity", "--n-max", "10", "--q-max", "10")
    assert code == 0
    assert "# result: pass" in out
    assert err == ""


def test_usage_errors_exit_two():
    assert _run("no-such-command")[0] == 2
    assert _run("burnside-check", "--prime", "4")[0] == 2
    assert _run("jtheory-check", "--i-range", "5..1")[0] == 2
    assert _run("chart", "--window", "garbage")[0] == 2


def test_failing_check_exits_one_with_diff():
    code, out, err = _run("burnside-check", "--prime", "2")
    assert code == 1
    assert "# result: FAIL" in out
    assert err.startswith("diff: ")


def test_json_report_carries_claim_and_config():
    code, out, _ = _run("ktheory-check", "--prime", "3", "--format", "json")
    assert code == 0
    body = json.loads(out)
    assert body["command"] == "ktheory-check"
    assert body["claim"]
    assert body["config"] == {"primes": [3], "precision": 10}
    assert body["passed"] is True
    assert body["reports"][0]["exact"] is True


def test_output_is_deterministic():
    a = _run("chart", "--truncation", "3", "--format", "json")
    b = _run("chart", "--truncation", "3", "--format", "json")
    assert a == b
    c = _run("selftest", "--seed", "3")
    d = _run("selftest", "--seed", "3")
    assert c == d and c[0] == 0


def test_grid_format_for_charts():
    code, out, _ = _run("postnikov", "--format", "grid")
    assert code == 0
    assert out.startswith("# command: postnikov")


def test_tsv_header_lines():
    code, out, _ = _run("sq4i", "--i-max", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# command: sq4i"
    assert "i\tcycle\tnonzero" in lines
    assert len([l for l in lines if not l.startswith("#")]) == 4


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "strictunits.cli", "ktheory-check", "--prime", "5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "1/6*gamma" in proc.stdout


@pytest.mark.parametrize("fmt", ["tsv", "json", "grid"])
def test_every_format_renders(fmt):
    code, out, _ = _run("probe", "--n", "6", "--format", fmt)
    assert code == 0
    assert out
