import pytest

from tricub.generators import CATALOG_NAMES, generate, random_cubic, simple_cubic_graphs
from tricub.structure import bridges_mask, subdivide_attach

RANDOM_ORDERS = (4, 6, 8, 10, 12)
RANDOM_COUNT = 200


def random_corpus():
    return [
        random_cubic(RANDOM_ORDERS[i % len(RANDOM_ORDERS)], seed=i).with_name(f"random{i}")
        for i in range(RANDOM_COUNT)
    ]


@pytest.fixture(scope="session")
def simple_corpus():
    """Every connected simple cubic graph on at most 10 vertices, up to isomorphism."""
    out = []
    for n in (4, 6, 8, 10):
        out += [g.with_name(f"simple{n}_{i}") for i, g in enumerate(simple_cubic_graphs(n))]
    return out


@pytest.fixture(scope="session")
def multi_corpus():
    return random_corpus()


@pytest.fixture(scope="session")
def catalog():
    return {name: generate(name) for name in CATALOG_NAMES if name not in ("W", "Wprime")}


@pytest.fixture(scope="session")
def bridged_examples():
    """Cubic graphs with one and two bridges."""
    k4 = generate("K4")
    prism = generate("prism")
    return [
        subdivide_attach(k4, {0}, "W").graph.with_name("K4+W"),
        subdivide_attach(k4, {0, 5}, "W").graph.with_name("K4+2W"),
        subdivide_attach(prism, {6}, "Wprime").graph.with_name("prism+Wprime"),
    ]


@pytest.fixture(scope="session")
def corpus(simple_corpus, multi_corpus, catalog, bridged_examples):
    return simple_corpus + multi_corpus + list(catalog.values()) + bridged_examples


@pytest.fixture(scope="session")
def bridgeless_corpus(corpus):
    return [g for g in corpus if not bridges_mask(g)]
