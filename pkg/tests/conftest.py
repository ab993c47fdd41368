import pytest

# lines reported by the acceptance checks, repeated in the terminal summary
CRITERIA = []


@pytest.fixture
def report_criterion(capsys):
    def report(number, passed, detail):
        line = f"CRITERION {number}: {'PASS' if passed else 'FAIL'} {detail}"
        CRITERIA.append(line)
        with capsys.disabled():
            print("\n" + line)
    return report


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA):
            terminalreporter.write_line(line)
