import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from elated import cli
from elated.cache import cache_path
from elated.towers import TowerVerificationError


def _schema(command):
    text = resources.files("elated").joinpath("schemas", f"{command}.schema.json").read_text()
    return json.loads(text)


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def _json(*argv):
    code, out, err = _run(*argv)
    assert code == 0, err
    doc = json.loads(out)
    jsonschema.validate(doc, _schema(doc["command"]))
    return doc


CASES = [
    ("cycles", "--base", "10"),
    ("cycles", "--base", "10", "--happy"),
    ("cycles", "--base", "4", "--exp", "3", "--bound", "1000"),
    ("height", "97", "--base", "10"),
    ("height", "4", "--base", "10"),
    ("height", "7", "--base", "10", "--happy"),
    ("epsilon", "5", "--base", "10"),
    ("epsilon", "14", "--base", "10"),
    ("sigma", "4", "--base", "10"),
    ("preimage", "731", "--base", "10"),
    ("preimage", "10**30", "--base", "10"),
    ("constants", "--base", "7"),
    ("sequence", "attracted", "--base", "10", "--length", "2"),
    ("sequence", "consecutive", "--base", "3", "--length", "2", "--target", "6"),
    ("sequence", "nonelated", "--base", "3", "--length", "1", "--target", "5"),
    ("verify-towers", "--k", "14"),
]


@pytest.mark.parametrize("argv", CASES, ids=lambda a: " ".join(a))
def test_json_output_matches_schema(argv):
    argv = tuple(str(10**30) if a == "10**30" else a for a in argv)
    doc = _json(*argv)
    assert doc["command"] == argv[0]


@pytest.mark.parametrize("argv", CASES[:13], ids=lambda a: " ".join(a))
@pytest.mark.parametrize("fmt", ["csv", "text"])
def test_other_formats(argv, fmt):
    argv = tuple(str(10**30) if a == "10**30" else a for a in argv)
    code, out, _ = _run(*argv, "--format", fmt)
    assert code == 0 and out.strip()


def test_epsilon_12():
    doc = _json("epsilon", "12", "--base", "10")
    assert doc["results"]["epsilon"]["value"] == "8888999999"
    assert doc["results"]["trajectory"][-1] == "1"


def test_epsilon_13_is_certified():
    doc = _json("epsilon", "13", "--base", "10")
    assert doc["results"]["method"] == "certificate"
    assert doc["results"]["epsilon"]["rendered"] == "8157[9^13888887]"
    assert len(doc["results"]["trajectory"]) == 14


def test_preimage_text():
    code, out, _ = _run("preimage", "731", "--base", "10", "--format", "text")
    assert code == 0 and out.strip() == "{6889999999}"


def test_verify_towers_16():
    doc = _json("verify-towers", "--k", "16")
    assert doc["status"] == "verified"
    report = doc["results"]["reports"][0]
    assert report["height"] == 16
    assert {"name": "eps14", "modulus": 45927, "residue": 31402, "expected": 31402} in report["residues"]


def test_timing_is_opt_in():
    assert "timing" not in _json("constants", "--base", "10")
    assert _json("constants", "--base", "10", "--timing")["timing"] >= 0


def test_threads_do_not_change_results():
    a = _json("epsilon", "9", "--base", "10", "--threads", "1")
    b = _json("epsilon", "9", "--base", "10", "--threads", "4")
    assert a == b
    a = _json("cycles", "--base", "9", "--threads", "1")
    b = _json("cycles", "--base", "9", "--threads", "3")
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [(), ("bogus",), ("height",), ("height", "12"), ("epsilon", "x", "--base", "10"), ("--format", "xml", "constants", "--base", "3")],
)
def test_usage_errors(argv):
    code, out, err = _run(*argv)
    assert code == 64 and not out and err


@pytest.mark.parametrize(
    "argv",
    [
        ("height", "0", "--base", "10"),
        ("epsilon", "14", "--base", "10", "--limit", "1000"),
        ("constants", "--base", "2"),
        ("sequence", "attracted", "--base", "10", "--length", "2", "--target", "2"),
        ("sequence", "nonelated", "--base", "2", "--length", "2"),
        ("cycles", "--base", "10", "--exp", "3"),
    ],
)
def test_domain_errors(argv):
    code, out, err = _run(*argv)
    assert code == 2 and not out and err.startswith("error:")


def test_verification_failure_exit(monkeypatch):
    def boom(*a, **k):
        raise TowerVerificationError("E(eps15) = eps14", "mismatch")

    monkeypatch.setattr(cli, "verify_epsilon_tower", boom)
    code, _, err = _run("verify-towers", "--k", "15")
    assert code == 3 and "E(eps15) = eps14" in err


def test_cache_error_exit(tmp_path):
    p = cache_path(tmp_path, 10, 2, "elated")
    p.write_text("garbage\n")
    code, _, err = _run("height", "97", "--base", "10", "--cache-dir", str(tmp_path))
    assert code == 74 and str(p) in err


def test_cache_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("ELATED_CACHE_DIR", str(tmp_path))
    assert _json("height", "97", "--base", "10")["results"]["height"] == 5
    assert cache_path(tmp_path, 10, 2, "elated").exists()


def test_flag_overrides_environment(tmp_path, monkeypatch):
    env_dir, flag_dir = tmp_path / "env", tmp_path / "flag"
    monkeypatch.setenv("ELATED_CACHE_DIR", str(env_dir))
    _json("height", "97", "--base", "10", "--cache-dir", str(flag_dir))
    assert cache_path(flag_dir, 10, 2, "elated").exists()
    assert not env_dir.exists()


def test_digit_cap_hides_value():
    shown = _json("preimage", "731", "--base", "10")["results"]["members"]
    hidden = _json("preimage", "731", "--base", "10", "--digit-cap", "5")["results"]["members"]
    assert shown[0]["value"] == "6889999999"
    assert hidden[0]["value"] is None and hidden[0]["rendered"] == "6889999999"


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "elated.cli", "constants", "--base", "10", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["base,a_star,C", "10,561,6"]
