from importlib.resources import files

import pytest

from relsing.document import parse_document


def load_corpus(name):
    return parse_document((files("relsing") / "corpus" / f"{name}.germ").read_text())


def corpus_path(name):
    return str(files("relsing") / "corpus" / f"{name}.germ")


@pytest.fixture
def corpus():
    return load_corpus


ACCEPTANCE_LINES = []


def record_criterion(number, title, checks, elapsed, limit):
    """Print and remember one PASS/FAIL line; returns overall success."""
    failed = [name for name, ok in checks if not ok]
    in_time = elapsed < limit
    ok = not failed and in_time
    detail = f"{elapsed:.2f}s/{limit}s"
    if failed:
        detail += "; failed: " + "; ".join(failed)
    if not in_time:
        detail += "; over time limit"
    line = f"criterion {number} [{title}]: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
