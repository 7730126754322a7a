"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Criteria 3 and 9 do not hold for the closed forms as stated.  Their tests assert
the criterion as stated and are marked strict xfail, so a fix would surface
as XPASS instead of passing silently.
"""
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from sullivan import verify


def _check(criterion, budget=None):
    t = time.perf_counter()
    r = criterion()
    elapsed = time.perf_counter() - t
    ok = r.ok and (budget is None or elapsed < budget)
    line = r.line() if ok == r.ok else f"FAIL {r.number:>2} {r.title}: over budget {elapsed:.1f}s >= {budget}s"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert r.ok, r.detail
    if budget is not None:
        assert elapsed < budget, f"criterion {r.number} took {elapsed:.1f}s"


def test_criterion_01_d_squared_suite():
    _check(verify.criterion_1, budget=10)


def test_criterion_02_section_model_closed_form():
    _check(verify.criterion_2, budget=60)


@pytest.mark.xfail(strict=True, reason="relation sign alternates with n against both conventions")
def test_criterion_03_conjugation_model():
    _check(verify.criterion_3)


def test_criterion_04_orbit_decision():
    _check(verify.criterion_4)


def test_criterion_05_component_betti():
    _check(verify.criterion_5, budget=120)


def test_criterion_06_h1_torsion():
    _check(verify.criterion_6)


def test_criterion_07_elimination():
    _check(verify.criterion_7)


def test_criterion_08_combinatorial_identities():
    _check(verify.criterion_8, budget=1)


@pytest.mark.xfail(strict=True, reason="cocycle t - u·z of the source is sent to zero in degree 4n+1")
def test_criterion_09_gr2_thom_quasi_iso():
    _check(verify.criterion_9, budget=300)


def test_criterion_10_characteristic():
    _check(verify.criterion_10)


def test_criterion_11_splitting_oracles():
    _check(verify.criterion_11)


def test_criterion_12_determinism():
    cmd = [sys.executable, "-m", "sullivan", "verify-all"]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and runs[0].returncode == runs[1].returncode
    lines = runs[0].stdout.decode().splitlines()
    failing = [ln.split()[1] for ln in lines if ln.startswith("FAIL")]
    line = f"{'PASS' if same else 'FAIL'} 12 determinism: verify-all twice, byte-identical={same}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert same
    assert len(lines) == 12
    # the log reports the two known failures and exits nonzero for them
    assert failing == ["3", "9"] and runs[0].returncode == 2
