import pytest

from macgap.binom_core import BinomTable


@pytest.fixture(scope="session")
def criterion(request):
    """Collector for the numbered acceptance checks; prints one verdict
    line per criterion in the terminal summary."""
    lines = []

    def record(num: int, ok: bool, detail: str):
        lines.append(f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
        assert ok, f"criterion {num}: {detail}"

    yield record
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None and lines:
        reporter.section("acceptance criteria")
        for line in lines:
            reporter.write_line(line)


@pytest.fixture(scope="session")
def big_table():
    # Top indices stay near the represented values themselves, so bound 5001
    # covers round-trips of A <= 5000 at level 1 and the duality chain whose
    # intermediate value C(2001,2) decomposes with tops <= 2001.  Levels up
    # to 20 appear in the descent consistency sweeps.
    return BinomTable(5001, 24)
