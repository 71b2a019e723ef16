import pytest

from relkin import spectra


@pytest.fixture
def nucleon():
    """mc2 = 1 GeV, hbar c = 0.2 GeV fm: gives z = 0.04 for a 1 fm well."""
    return spectra.PhysicalConstants(1.0, 0.2, "GeV", "fm")


@pytest.fixture
def electron():
    return spectra.ELECTRON


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record and print one PASS/FAIL line for an acceptance criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(number, ok, detail):
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
