import random

import pytest

from sigmadim import monoid, oracle
from sigmadim.diffterm import ADDITIVE, MULTIPLICATIVE, GroupDescriptor
from sigmadim.groups import Explicit, GeneralizedGroupSpec
from sigmadim.parsing import parse_generator

GROWTH_TEXT = "s1^2 s2(x) * s2^4(x) - 1"


def growth_group():
    g = parse_generator(GROWTH_TEXT, MULTIPLICATIVE, 2, ["x"])
    return GroupDescriptor(MULTIPLICATIVE, 2, ["x"], [g], "growth")


def trivial_group(n=2):
    return GroupDescriptor(ADDITIVE, n, ["x"], [parse_generator("x", ADDITIVE, n, ["x"])], "trivial")


def free_group(n, s):
    names = ["x", "y", "z"][:s]
    return GroupDescriptor(ADDITIVE, n, names, [], "free")


def random_explicit_spec(rng):
    """Random explicit chain, valid by construction: each level holds the
    previous one and all its shifts, plus a few new shifted generators."""
    base = oracle.random_descriptor(rng, max_n=rng.randint(1, 3), max_order=2)
    while not base.generators:
        base = oracle.random_descriptor(rng, max_n=base.n, max_order=2)
    n = base.n
    tail = rng.randint(0, 3)
    levels = []
    prev = set()
    for i in range(tail + 1):
        cur = set(prev)
        for k, m in prev:
            for j in range(n):
                cur.add((k, tuple(a + (j == t) for t, a in enumerate(m))))
        for _ in range(rng.randint(0, 2)):
            k = rng.randrange(len(base.generators))
            room = i - base.generators[k].order
            if room >= 0:
                cur.add((k, rng.choice(monoid.enumerate_shifts(n, room))))
        levels.append(tuple(sorted(cur)))
        prev = cur
    return GeneralizedGroupSpec(base, Explicit(tuple(levels), tail))


def random_corpus(seed=20261016, count=50):
    rng = random.Random(seed)
    return [oracle.random_descriptor(rng) for _ in range(count)]


@pytest.fixture
def growth():
    return growth_group()


@pytest.fixture
def trivial():
    return trivial_group()


# one summary line per acceptance criterion ------------------------------

_CRITERIA = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1][len("test_criterion_"):].split("[")[0]
    if report.when == "call" or report.outcome != "passed":
        if _CRITERIA.get(name) in (None, "passed"):
            _CRITERIA[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: int(s.split("_")[0])):
        num, _, title = name.partition("_")
        verdict = "PASS" if _CRITERIA[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num} ({title.replace('_', ' ')}): {verdict}")
