import json
import subprocess
import sys

import pytest

from mmvkit.cli import EXIT_DOMAIN, EXIT_OK, EXIT_PRECISION, EXIT_USAGE, EXIT_VERIFY, run


def call(argv, capsys):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mmv_exact_rational(capsys):
    code, out, _ = call(["mmv", "--forms", "G4,G4", "--indices", "2,2", "--digits", "50"], capsys)
    assert code == EXIT_OK
    assert "0.0000060281635802469135802469" in out
    assert "EXACT-RATIONAL-MATCH 1/165888" in out


def test_verify_f93(capsys):
    code, out, _ = call(["verify", "--id", "f93period", "--digits", "80"], capsys)
    assert code == EXIT_OK and "CONJECTURAL-CONFIRMED" in out


def test_mzv_zeta2(capsys):
    code, out, _ = call(["mzv", "--index", "2", "--digits", "30"], capsys)
    assert code == EXIT_OK
    assert "1.644934066848226436472415166646" in out


def test_json_numbers_are_strings(capsys):
    code, out, _ = call(["lvalue", "--form", "Delta", "--s", "3", "--format", "json"], capsys)
    d = json.loads(out)
    assert code == EXIT_OK and isinstance(d["value"], str) and d["value"].startswith("0.0")


@pytest.mark.parametrize("argv", [
    ["mzv", "--index", "2", "--digits", "14"],
    ["mzv", "--index", "2", "--digits", "1001"],
    ["mzv", "--index", "2", "--unknown", "3"],
    ["frobnicate"],
    [],
    ["mmv", "--forms", "G4,G4"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == EXIT_USAGE


def test_domain_errors(capsys):
    assert run(["mzv", "--index", "2,1"]) == EXIT_DOMAIN
    assert run(["lvalue", "--form", "G4", "--s", "4"]) == EXIT_DOMAIN
    assert run(["mmv", "--forms", "G4", "--indices", "1,2"]) == EXIT_DOMAIN
    assert run(["verify", "--id", "nope"]) == EXIT_DOMAIN


def test_env_digits(monkeypatch, capsys):
    monkeypatch.setenv("MMVKIT_DIGITS", "20")
    code, out, _ = call(["mzv", "--index", "2", "--format", "json"], capsys)
    assert json.loads(out)["digits"] == 20
    monkeypatch.setenv("MMVKIT_DIGITS", "5")
    assert run(["mzv", "--index", "2"]) == EXIT_USAGE


def test_findrel_found_and_not_found(capsys):
    code, out, _ = call(["findrel", "--target", "mmv:G4,G4:1,1", "--basis", "z(3)^2/pi^6", "--max-height", "10^3"],
                        capsys)
    assert code == EXIT_OK and "(1/128)" in out
    code, out, _ = call(["findrel", "--target", "mzv:2", "--basis", "z(3)/pi^3", "--max-height", "1000"], capsys)
    assert code == EXIT_VERIFY and "no relation" in out


def test_table_and_stack(capsys):
    code, out, _ = call(["table", "--forms", "G4,G4", "--format", "json", "--qterms", "40"], capsys)
    d = json.loads(out)
    assert code == EXIT_OK and len(d["entries"]) == 9
    assert {e["exact_rational"] for e in d["entries"] if e["n1"] == 2 and e["n2"] == 2} == {"1/165888"}
    code, out, _ = call(["deltastack", "--forms", "G4,G8", "--format", "json"], capsys)
    assert code == EXIT_OK and len(json.loads(out)["layers"]) == 3


def test_periodpoly_and_zetarep(capsys):
    code, out, _ = call(["periodpoly", "--form", "Delta"], capsys)
    assert code == EXIT_OK and "omega+ = 0.114379022438848" in out
    code, out, _ = call(["zetarep", "--index", "3,9", "--format", "json"], capsys)
    assert code == EXIT_OK and json.loads(out)["expansion"]


def test_selftest_subset(capsys):
    code, out, _ = call(["selftest", "--only", "1,5"], capsys)
    assert code == EXIT_OK and "2/2 criteria passed" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "mmvkit", "mzv", "--index", "3", "--digits", "15"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "1.202056903159594" in r.stdout


def test_insufficient_precision_exit_code(capsys):
    assert run(["mmv", "--forms", "G4,G4", "--indices", "1,1", "--qterms", "5"]) == EXIT_PRECISION
    assert "too small" in capsys.readouterr().err
