import random

import pytest
from hypothesis import strategies as st

from lchkit.data import FRONTS, load_front
from lchkit.diagram import parse_front
from lchkit.discs import differential
from lchkit.errors import TopologyError

ACCEPTANCE_LINES = []


def random_knot_plats(count, max_strands=4, max_len=8, seed=0):
    """Distinct random plat words that close up to knots."""
    rng = random.Random(seed)
    seen, out = set(), []
    while len(out) < count:
        n = rng.choice([s for s in (2, 4, 6) if s <= max_strands])
        word = [rng.randint(1, n - 1) for _ in range(rng.randint(0, max_len))]
        key = (n, tuple(word))
        if key in seen:
            continue
        seen.add(key)
        try:
            out.append(parse_front(f"strands={n}; {word}"))
        except TopologyError:
            continue
    return out


@st.composite
def knot_plats(draw, max_strands=4, max_len=8):
    n = draw(st.sampled_from([s for s in (2, 4, 6) if s <= max_strands]))
    word = draw(st.lists(st.integers(1, n - 1), max_size=max_len))
    try:
        return parse_front(f"strands={n}; {word}")
    except TopologyError:
        from hypothesis import assume

        assume(False)


@pytest.fixture(scope="session")
def fronts():
    return {name: load_front(name) for name in FRONTS}


@pytest.fixture(scope="session")
def dgas(fronts):
    return {name: differential(f) for name, f in fronts.items()}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
