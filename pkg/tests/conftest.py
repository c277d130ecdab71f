import pytest

from corpus import corpus
from folval.errors import UnsupportedFieldError
from folval.resolution import reduce


@pytest.fixture(scope="session")
def corpus_trees():
    trees = []
    for name, germ in corpus():
        try:
            trees.append((name, reduce(germ)))
        except UnsupportedFieldError:
            continue
    return trees


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 7):
        ok, detail = module.RESULTS.get(n, (False, "did not run to completion"))
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
