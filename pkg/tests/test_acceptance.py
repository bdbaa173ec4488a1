"""Acceptance battery: one test per criterion, one pass/fail line each.

The battery itself lives in qpdense.report so the CLI paper-report and this
module run exactly the same checks.  Criterion 10 includes the q = 2 case
verbatim; no valuation obstruction exists there (nu_2 of f(6)/f(31) is 1),
so that single item fails by design with the witness in its detail.
"""

import pytest

from qpdense.report import run_battery


@pytest.fixture(scope="session")
def battery():
    return run_battery()


def _check(battery, criterion: str):
    items = [i for i in battery.items if i.criterion == criterion]
    assert items, f"criterion {criterion} produced no checks"
    for item in items:
        marker = "pass" if item.passed else "FAIL"
        print(f"[{marker}] criterion {criterion}: {item.name} {item.detail}")
    failures = [f"{i.name} ({i.detail})" for i in items if not i.passed]
    assert not failures, f"criterion {criterion}: " + "; ".join(failures)


def test_acceptance_01_discriminants(battery):
    _check(battery, "1")


def test_acceptance_02_scan_quintic(battery):
    _check(battery, "2")


def test_acceptance_03_scan_sextic_under_budget(battery):
    _check(battery, "3")


def test_acceptance_04_cubic_battery(battery):
    _check(battery, "4")


def test_acceptance_05_quartic_battery(battery):
    _check(battery, "5")


def test_acceptance_06_mod2_mod3_patterns(battery):
    _check(battery, "6")


def test_acceptance_07_cyclotomic_family(battery):
    _check(battery, "7")


def test_acceptance_08_composite_family(battery):
    _check(battery, "8")


def test_acceptance_09_finitely_dense_family(battery):
    _check(battery, "9")


def test_acceptance_10_valuation_obstruction_pattern(battery):
    _check(battery, "10")


def test_acceptance_11_property_suites(battery):
    _check(battery, "11")
