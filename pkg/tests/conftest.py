import pytest

# lines recorded by the acceptance tests, printed once at the end of the run
ACCEPTANCE_LINES: dict[str, list[tuple[bool, str]]] = {}


def record(criterion: str, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES.setdefault(criterion, []).append((bool(passed), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k.split()[0])):
        parts = ACCEPTANCE_LINES[key]
        ok = all(p for p, _ in parts)
        detail = "; ".join(d for _, d in parts)
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def record_criterion():
    return record
