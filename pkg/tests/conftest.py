import pytest

import reports
from grickart.harness import DEFAULT_FAMILIES, generate_family

_CRITERIA = {}


@pytest.fixture(scope="session")
def catalogs():
    """Default families generated once per session."""
    return {fam.name: generate_family(fam) for fam in DEFAULT_FAMILIES}


@pytest.fixture(scope="session")
def theorem_report():
    """One full default-config theorem replay through the CLI."""
    return reports.theorem_report()


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_criterion_"):
        num = int(name.split("_")[2])
        _CRITERIA[num] = ("PASS" if report.passed else "FAIL", name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        status, name = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {status}  ({name})")
