import pytest

from pedcmp.pedigree import Gender, validate

M, F = Gender.MALE, Gender.FEMALE

# acceptance results, filled by test_acceptance and printed at the end
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}: {detail}")


@pytest.fixture
def figure1():
    """Two founding grandparents, their four children (married to each
    other), two inbred grandchildren and two inbred great-grandchildren."""
    inds = [
        ("gf", M, None), ("gm", F, None),
        ("c1", M, None), ("c2", F, None), ("c3", F, None), ("c4", M, None),
        ("g1", F, None), ("g2", M, None),
        ("gg1", M, 1), ("gg2", F, 2),
    ]
    edges = []
    for c in ("c1", "c2", "c3", "c4"):
        edges += [("gf", c), ("gm", c)]
    edges += [("c1", "g1"), ("c2", "g1"), ("c4", "g2"), ("c3", "g2")]
    edges += [("g2", "gg1"), ("g1", "gg1"), ("g2", "gg2"), ("g1", "gg2")]
    return validate(inds, edges)


@pytest.fixture
def trio():
    return validate([("fa", M, None), ("mo", F, None), ("kid", F, 1)],
                    [("fa", "kid"), ("mo", "kid")])
