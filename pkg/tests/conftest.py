import pytest

ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_addoption(parser):
    parser.addoption("--skip-extended", action="store_true", default=False,
                     help="skip the tests marked 'extended' (larger plantri instances)")


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--skip-extended"):
        return
    skip = pytest.mark.skip(reason="extended tests skipped by --skip-extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def acceptance(request):
    """Record one acceptance line; it is echoed now and again in the terminal summary."""
    lines = request.config.stash[ACCEPTANCE_KEY]

    def record(number, description, ok, tolerance, seconds, budget=None):
        timing = f"{seconds:.2f} s" + (f" of {budget}" if budget else "")
        line = (f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {description} "
                f"(tolerance: {tolerance}; time {timing})")
        lines.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash[ACCEPTANCE_KEY]
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)
