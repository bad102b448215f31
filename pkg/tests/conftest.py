import pytest

# criterion number -> (description, passed)
ACCEPTANCE_RESULTS: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion: ``criterion(n, text)``."""
    recorded = []

    def record(number: int, text: str):
        recorded.append((number, text))

    yield record
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
    for number, text in recorded:
        ACCEPTANCE_RESULTS[number] = (text, not failed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        text, ok = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {text}")
