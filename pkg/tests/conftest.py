import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from semigem.catalog import DATA_DIR, load_catalog
from semigem.core import build

HERE = Path(__file__).resolve().parent
GOLDEN = HERE / "golden"


def random_matching(rng: random.Random, n: int) -> list[int]:
    verts = list(range(1, n + 1))
    rng.shuffle(verts)
    table = [0] * (n + 1)
    for a, b in zip(verts[::2], verts[1::2]):
        table[a], table[b] = b, a
    return table[1:]


def random_gem(rng: random.Random, n: int, colors: int):
    return build(n, [random_matching(rng, n) for _ in range(colors)])


def random_bipartite_gem(rng: random.Random, n: int, colors: int):
    """Every color joins an odd vertex to an even one."""
    half = n // 2
    rows = []
    for _ in range(colors):
        evens = list(range(2, n + 1, 2))
        rng.shuffle(evens)
        table = [0] * (n + 1)
        for i, w in enumerate(evens):
            u = 2 * i + 1
            table[u], table[w] = w, u
        rows.append(table[1:])
    assert half * 2 == n
    return build(n, rows)


@st.composite
def gems(draw, min_n=2, max_n=16, min_colors=2, max_colors=5, bipartite=False):
    n = 2 * draw(st.integers(min_n // 2, max_n // 2))
    k = draw(st.integers(min_colors, max_colors))
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    return random_bipartite_gem(rng, n, k) if bipartite else random_gem(rng, n, k)


@pytest.fixture(scope="session")
def catalog():
    return {e.name: e for e in load_catalog()}


@pytest.fixture
def data_dir():
    return DATA_DIR
