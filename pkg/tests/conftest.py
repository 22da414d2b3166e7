import pytest

_VERDICTS: dict[str, tuple[str, str]] = {}


@pytest.fixture
def verdict(request):
    """Record a one-line acceptance verdict; printed in the terminal summary."""
    def record(label: str, ok: bool, detail: str = ""):
        line = f"{label}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
        _VERDICTS[request.node.nodeid] = (label, line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_VERDICTS.values(), key=lambda v: int(v[0].split()[1])):
        terminalreporter.write_line(line)
