import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from sclat.scaled import ScaledBase

sys.path.insert(0, str(Path(__file__).parent))


def CH2():
    return ScaledBase.build(1, {"p": 0, "q": 1}, [("p", "q")])


def PT(D, d=None):
    return ScaledBase.build(D if d is None else d, {"y": D}, [])


def AC2():
    return ScaledBase.build(0, {"a1": 0, "a2": 0}, [])


def LP():
    return ScaledBase.build(1, {"y1": 1, "a": 0}, [])


def V():
    return ScaledBase.build(1, {"x0": 0, "y1": 1, "y2": 0}, [("x0", "y1")])


def TRIVIAL(d=0):
    return ScaledBase.build(d, {}, [])


@pytest.fixture
def ch2():
    return CH2()


@st.composite
def bases(draw, max_points=5, max_d=2):
    """Random strictly-labelled posets, built from a random linear extension."""
    n = draw(st.integers(0, max_points))
    d = draw(st.integers(0, max_d))
    labels = sorted(draw(st.lists(st.integers(0, d), min_size=n, max_size=n)))
    names = [f"x{i}" for i in range(n)]
    covers = []
    for j in range(n):
        for i in range(j):
            if labels[i] < labels[j] and draw(st.booleans()):
                covers.append((names[i], names[j]))
    return ScaledBase.build(d, dict(zip(names, labels)), covers)


@st.composite
def base_with_elements(draw, k=2, **kw):
    b = draw(bases(**kw))
    elems = b.elements()
    picks = [draw(st.sampled_from(elems)) for _ in range(k)]
    return b, picks


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.result_line(number))
