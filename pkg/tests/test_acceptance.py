"""Acceptance gate: one test per criterion, with its stated time budget.

Each criterion runs the matching named battery (the same code behind the
``rht verify-paper`` command), asserts it passed, and asserts the measured
time is inside the budget.  A pass/fail line is printed per criterion so a
verbose run reads as a checklist.
"""

from rht import verify

BUDGETS = {
    "cdga-laws": 5.0,
    "integration": 2.0,
    "s2-model": 1.0,
    "wedge-table": 60.0,
    "whitehead": 5.0,
    "signatures": 30.0,
    "hopf": 1.0,
    "massey": 10.0,
    "classification": 30.0,
    "obstruction": 5.0,
}


def _run(name):
    result = verify.BATTERIES[name]()
    budget = BUDGETS[name]
    status = "PASS" if result.passed and result.seconds < budget else "FAIL"
    print(f"[{status}] criterion {result.criterion} ({name}): "
          f"{result.seconds:.2f}s of {budget:.0f}s budget - {result.detail}")
    assert result.passed, result.detail
    assert result.seconds < budget, (
        f"{name} took {result.seconds:.2f}s, budget {budget}s")
    return result


def test_criterion_01_algebra_law_suite():
    _run("cdga-laws")


def test_criterion_02_integration_identities():
    _run("integration")


def test_criterion_03_sphere_model():
    _run("s2-model")


def test_criterion_04_wedge_table():
    _run("wedge-table")


def test_criterion_05_whitehead_pairing():
    _run("whitehead")


def test_criterion_06_signature_battery():
    _run("signatures")


def test_criterion_07_hopf_invariants():
    _run("hopf")


def test_criterion_08_massey_formality():
    _run("massey")


def test_criterion_09_classification():
    _run("classification")


def test_criterion_10_obstruction_round_trip():
    _run("obstruction")


def test_all_batteries_registered():
    assert set(BUDGETS) == set(verify.BATTERIES)
