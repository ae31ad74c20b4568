import pytest

from milnor.polyring import Ring


@pytest.fixture(scope="session")
def R4():
    return Ring("x,y,z,w")


@pytest.fixture(scope="session")
def R3():
    return Ring("x,y,z")


@pytest.fixture(scope="session")
def R2():
    return Ring("x,y")


# -- acceptance reporting -------------------------------------------------------------

_CRITERIA = {}


def _record(item):
    m = item.get_closest_marker("criterion")
    number, title = m.args
    return _CRITERIA.setdefault(number, {"title": title, "outcomes": [], "seconds": 0.0,
                                         "notes": []})


@pytest.fixture
def note(request):
    """Attach a line of output to the criterion of the running test."""
    rec = _record(request.node)
    return rec["notes"].append


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.get_closest_marker("criterion") is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        rec = _record(item)
        rec["outcomes"].append(rep.outcome)
        rec["seconds"] += rep.duration


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance criteria")
    for number in sorted(_CRITERIA):
        rec = _CRITERIA[number]
        status = "PASS" if all(o == "passed" for o in rec["outcomes"]) else "FAIL"
        tr.write_line(f"criterion {number:>2}: {status}  {rec['title']} "
                      f"({len(rec['outcomes'])} checks, {rec['seconds']:.1f} s)")
        for line in rec["notes"]:
            tr.write_line(f"               {line}")
