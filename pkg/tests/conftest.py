import pytest

from exactbn import LocalScoreTable, gen_random_instance
from exactbn.nodeset import from_members


def make_table(families, names=None):
    """Table from ``[{(parents...): score, ...}, ...]``."""
    n = len(families)
    names = names or [chr(ord("A") + i) for i in range(n)]
    return LocalScoreTable(
        names, [{from_members(k): s for k, s in fam.items()} for fam in families]
    )


def random_cases(count, n_range=(3, 8), k_range=(1, 3), base_seed=0):
    """Deterministic ``(n, k, seed)`` triples spread over the given ranges."""
    out = []
    ns = list(range(n_range[0], n_range[1] + 1))
    ks = list(range(k_range[0], k_range[1] + 1))
    for i in range(count):
        n = ns[i % len(ns)]
        k = min(ks[(i // len(ns)) % len(ks)], n - 1)
        out.append((n, k, base_seed + i))
    return out


@pytest.fixture
def one_arc_table():
    # only attainable positive term: arc A -> B
    return make_table([{(): 0.0}, {(): 0.0, (0,): 5.0}, {(): 0.0}])


@pytest.fixture
def small_random():
    return gen_random_instance(6, 2, 11)


# -- acceptance reporting ------------------------------------------------
# Each acceptance test carries @pytest.mark.acceptance(number, title); the
# outcome of every one is listed at the end of the run, one line each.

_acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or not mark.args:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        status = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
        _acceptance[number] = (title, status, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, status, secs = _acceptance[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title} ({secs:.1f} s)")
