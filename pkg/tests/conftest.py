import pytest

_RESULTS = []


class CriterionLog:
    def __init__(self, number, name):
        self.number = number
        self.name = name

    def check(self, passed, detail):
        _RESULTS.append((self.number, self.name, bool(passed), detail))
        line = f"[{'PASS' if passed else 'FAIL'}] {self.number:>2} {self.name}: {detail}"
        print(line)
        assert passed, line


@pytest.fixture
def criterion():
    return CriterionLog


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(_RESULTS, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number:>2} {name}: {detail}")
