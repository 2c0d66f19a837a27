import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from swcalc.cli import main

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "eval_integrate": "eval integrate(theta^2*x) --space Cd(4,3)",
    "eval_class_json": "eval (1+x)^-2 --space Cd(4,3) --format json",
    "eval_product": "eval integrate(p1.h*p2.theta^2*p2.x) --space P(1)xCd(4,3)",
    "sw_elliptic_regular": "sw elliptic-regular --pg 5 --a 2",
    "sw_elliptic": "sw elliptic --chi 2 --g 2 --d 1",
    "sw_ruled_json": "sw ruled --g 4 --d 3 --format json",
    "sw_ruled_text": "sw ruled --g 4 --d 3",
    "sw_ruled_csv": "sw ruled --g 6 --d 4 --format csv",
    "sw_ruled_general_json": "sw ruled-general --g 7 --a -2 --b 3 --format json",
    "sw_section": "sw section --g 12",
    "segre_text": "segre --g 3 --d 1",
    "segre_json": "segre --g 2 --d 1 --format json",
    "grr_text": "grr --chi 3 --g 2 --d 3",
    "grr_json": "grr --chi 3 --g 2 --d 3 --n 7 --r 1/2 --format json",
    "dims_elliptic": "dims elliptic --pg 2 --a 1",
    "dims_ruled_json": "dims ruled --g 4 --a -1 --b 2 --format json",
    "dims_hilbert_csv": "dims hilbert --b 2 --g 5 --d 3 --r 1 --format csv",
}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out, _ = run(CASES[name].split())
    assert code == 0
    assert out == (GOLDEN / f"{name}.txt").read_text()


def test_every_golden_file_is_exercised():
    assert {p.stem for p in GOLDEN.glob("*.txt")} == set(CASES)


def test_ruled_json_contents():
    _, out, _ = run(CASES["sw_ruled_json"].split())
    record = json.loads(out)
    assert record["value"] == 16
    assert record["breakdown"] == {"M0": 14, "M1": 2}


def test_output_is_deterministic():
    argv = CASES["grr_json"].split()
    assert run(argv) == run(argv)


def test_parse_error_exit_code_and_location():
    code, out, err = run(["eval", "1+", "--space", "P(2)"])
    assert code == 3
    assert out == ""
    record = json.loads(err)
    assert record["error"] == "parse-error"
    assert record["offset"] == 2
    assert record["expected"]


def test_domain_error_exit_code():
    code, _, err = run(["eval", "x/ x", "--space", "Cd(2,2)"])
    assert code == 3
    assert json.loads(err)["error"] == "domain-error"


def test_bad_space_is_domain_error():
    assert run(["eval", "1", "--space", "Q(2)"])[0] == 3


def test_inapplicable_exit_code():
    code, _, err = run(["sw", "ruled", "--g", "9", "--d", "2"])
    assert code == 2
    assert json.loads(err)["error"] == "inapplicable-case"


def test_inadmissible_ruled_spec_exit_code():
    assert run(["sw", "ruled-general", "--g", "5", "--a", "-5", "--b", "1"])[0] == 2


def test_verification_mismatch_exit_code(monkeypatch):
    from swcalc import sw

    monkeypatch.setattr(sw, "elliptic_closed_form", lambda spec: 12345)
    code, _, err = run(["sw", "elliptic", "--chi", "1", "--g", "1", "--d", "1"])
    assert code == 1
    assert json.loads(err)["error"] == "verification-mismatch"


def test_verify_single_suite():
    code, out, _ = run(["verify", "--suite", "lemma45"])
    assert code == 0
    assert out.rstrip().endswith("checks passed")
    assert "FAIL" not in out


def test_verify_json():
    code, out, _ = run(["verify", "--suite", "segre", "--format", "json"])
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_verify_reports_failure(monkeypatch):
    from swcalc import verify

    monkeypatch.setitem(verify.SUITES, "segre", lambda: iter([verify.Check("segre", "forced", False, "x")]))
    code, out, _ = run(["verify", "--suite", "segre"])
    assert code == 1
    assert "FAIL segre: forced" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "swcalc", "sw", "section", "--g", "4"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "16"
