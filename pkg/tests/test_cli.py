import json
import os
import subprocess
import sys

import pytest

from qcalc.catalog import names, source

REPORT_KEYS = [
    "name",
    "jacobi",
    "qc_valid",
    "bi1",
    "S",
    "T0",
    "torsion_endos",
    "torsion_nonzero",
    "dOmega_zero",
    "vertical_integrable",
    "R_samples",
    "wqc_samples",
    "conformally_flat",
    "audit",
    "fingerprint",
]


def run(*args, env_extra=None):
    env = os.environ.copy()
    env.pop("QCALC_FORMAT", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "qcalc.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def jout(result):
    assert result.returncode == 0, result.stderr
    return json.loads(result.stdout)


@pytest.fixture
def bad_jacobi(tmp_path):
    path = tmp_path / "bad.alg"
    path.write_text(
        "algebra bad dim 4\nd e1 = 0\nd e2 = e12\nd e3 = 0\nd e4 = e23\n"
    )
    return str(path)


@pytest.fixture
def so3_r4(tmp_path):
    path = tmp_path / "so3r4.alg"
    path.write_text(
        "algebra so3r4 dim 7\nd e1 = e23\nd e2 = e31\nd e3 = e12\n"
        "d e4 = 0\nd e5 = 0\nd e6 = 0\nd e7 = 0\n"
    )
    return str(path)


# ---------------------------------------------------------------------------
# report and check


def test_report_json_key_order():
    out = jout(run("report", "--catalog", "g1", "--format", "json"))
    assert list(out.keys()) == REPORT_KEYS
    assert out["S"] == "-1/2"
    assert out["jacobi"] is True
    assert out["conformally_flat"] is False
    assert out["fingerprint"]["betti"] == [1, 1, 2, 4, 2, 1, 1, 0]


def test_report_is_deterministic():
    a = run("report", "--catalog", "g2", "--format", "json")
    b = run("report", "--catalog", "g2", "--format", "json")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_report_samples_shape():
    out = jout(run("report", "--catalog", "g2", "--format", "json"))
    idx = [tuple(s["idx"]) for s in out["R_samples"]]
    assert idx == [(1, 2, 1, 2), (1, 3, 1, 3), (1, 4, 1, 4), (3, 4, 3, 4)]
    values = {tuple(s["idx"]): s["value"] for s in out["R_samples"]}
    assert values[(1, 2, 1, 2)] == "11/18"
    assert values[(1, 4, 1, 4)] == "4/9"
    wvalues = {tuple(s["idx"]): s["value"] for s in out["wqc_samples"]}
    assert wvalues[(1, 4, 1, 4)] == "-5/9"


def test_report_text_mode_mentions_scalar():
    r = run("report", "--catalog", "g1")
    assert r.returncode == 0
    assert "-1/2" in r.stdout


def test_report_exit_1_on_jacobi_failure(bad_jacobi):
    r = run("report", bad_jacobi, "--format", "json")
    assert r.returncode == 1
    out = json.loads(r.stdout)
    assert out["jacobi"] is False
    assert out["S"] is None


def test_check_passes_catalog():
    for name in ("g1", "g2", "heisenberg"):
        r = run("check", "--catalog", name)
        assert r.returncode == 0, r.stderr


def test_check_fails_bad_algebra(bad_jacobi):
    assert run("check", bad_jacobi).returncode == 1


# ---------------------------------------------------------------------------
# formats and error surfaces


def test_env_format_and_flag_priority():
    r = run("report", "--catalog", "heisenberg", env_extra={"QCALC_FORMAT": "json"})
    json.loads(r.stdout)
    r2 = run(
        "report",
        "--catalog",
        "heisenberg",
        "--format",
        "text",
        env_extra={"QCALC_FORMAT": "json"},
    )
    with pytest.raises(json.JSONDecodeError):
        json.loads(r2.stdout)


def test_parse_error_json_object(tmp_path):
    path = tmp_path / "broken.alg"
    path.write_text("algebra x dim 2\nd e1 = e9\nd e2 = 0\n")
    r = run("check", str(path), "--format", "json")
    assert r.returncode == 2
    assert r.stdout == ""
    obj = json.loads(r.stderr)
    assert set(obj["error"]) == {"message", "line", "col"}
    assert obj["error"]["line"] == 2


def test_parse_error_text(tmp_path):
    path = tmp_path / "broken.alg"
    path.write_text("algebra x dim 2\nd e1 = e1 $ e2\nd e2 = 0\n")
    r = run("check", str(path))
    assert r.returncode == 2
    assert r.stderr.startswith("error: line 2, col ")


def test_missing_file_and_bad_catalog():
    assert run("check", "/nonexistent/x.alg").returncode == 2
    assert run("check", "--catalog", "nope").returncode == 2


def test_file_and_catalog_are_exclusive(bad_jacobi):
    r = run("check", bad_jacobi, "--catalog", "g1")
    assert r.returncode == 2


# ---------------------------------------------------------------------------
# catalog subcommand


def test_catalog_list():
    out = jout(run("catalog", "list", "--format", "json"))
    assert out["names"] == names()
    assert out["names"] == sorted(out["names"])


def test_catalog_show_verbatim():
    r = run("catalog", "show", "g2")
    assert r.returncode == 0
    assert r.stdout == source("g2")
    out = jout(run("catalog", "show", "g2", "--format", "json"))
    assert out == {"name": "g2", "source": source("g2")}


# ---------------------------------------------------------------------------
# family subcommand


def test_family_solve():
    out = jout(run("family", "solve", "--catalog", "prop31_family", "--format", "json"))
    assert out == {"name": "prop31_family", "param": "mu", "roots": ["-1", "-1/3"]}


def test_family_solve_rejects_param_flag():
    r = run(
        "family", "solve", "--catalog", "prop31_family", "--param", "mu=-1"
    )
    assert r.returncode == 2


def test_family_solve_needs_parameter():
    assert run("family", "solve", "--catalog", "g1").returncode == 2


def test_specialized_report():
    out = jout(
        run(
            "report",
            "--catalog",
            "prop31_family",
            "--param",
            "mu=-1/3",
            "--format",
            "json",
        )
    )
    assert out["S"] == "-1/6"
    assert all(c["passed"] for c in out["audit"])


def test_parametric_report_needs_value():
    assert run("report", "--catalog", "prop31_family").returncode == 2


def test_param_flag_validation():
    assert (
        run("report", "--catalog", "prop31_family", "--param", "mu").returncode == 2
    )
    assert (
        run("report", "--catalog", "prop31_family", "--param", "nu=1").returncode == 2
    )


# ---------------------------------------------------------------------------
# cohomology, flags, wqc


def test_cohomology():
    out = jout(run("cohomology", "--catalog", "heisenberg", "--format", "json"))
    assert out["betti"] == [1, 4, 11, 14, 14, 11, 4, 1]
    out = jout(
        run("cohomology", "--catalog", "heisenberg", "--k", "2", "--format", "json")
    )
    assert out["betti"] == 11
    assert run("cohomology", "--catalog", "heisenberg", "--k", "9").returncode == 2


def test_flag_verify():
    out = jout(run("flag", "verify", "--catalog", "heisenberg", "--format", "json"))
    assert out["verified"] is True
    assert run("flag", "verify", "--catalog", "g1").returncode == 2


def test_flag_verify_family_at_both_roots():
    for mu in ("-1", "-1/3"):
        out = jout(
            run(
                "flag",
                "verify",
                "--catalog",
                "prop31_family",
                "--param",
                f"mu={mu}",
                "--format",
                "json",
            )
        )
        assert out["verified"] is True


def test_flag_search(so3_r4):
    out = jout(run("flag", "search", "--catalog", "g1", "--format", "json"))
    assert out["found"] is True
    assert len(out["flag"]) == 7
    out = jout(run("flag", "search", so3_r4, "--format", "json"))
    assert out["found"] is False
    assert out["flag"] is None


def test_wqc():
    out = jout(run("wqc", "--catalog", "g1", "--format", "json"))
    assert out["conformally_flat"] is False
    values = {tuple(s["idx"]): s["value"] for s in out["samples"]}
    assert values[(1, 2, 1, 2)] == "-1/2"
    out = jout(run("wqc", "--catalog", "heisenberg", "--format", "json"))
    assert out["conformally_flat"] is True


def test_wqc_needs_qc_block(so3_r4):
    assert run("wqc", so3_r4).returncode == 2
