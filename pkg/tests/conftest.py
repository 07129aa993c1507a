import pytest

from exelgraph.corpus import exhaustive, random_corpus
from exelgraph.graph import parse_graph

G1_TEXT = "vertex v\nedge e r=v s=v\n"
G2_TEXT = "vertex v\nedge e r=v s=v\nedge f r=v s=v\n"
G3_TEXT = "vertex u\nvertex v\nedge a r=u s=v\nedge b r=v s=u\n"
G4_TEXT = """\
# loop at v, an edge into v from w, loop at w
vertex v
vertex w
edge e r=v s=v
edge h r=v s=w
edge k r=w s=w
"""

FIXTURE_TEXTS = {"G1": G1_TEXT, "G2": G2_TEXT, "G3": G3_TEXT, "G4": G4_TEXT}

RANDOM_SEED = 20240601


@pytest.fixture(scope="session")
def G1():
    return parse_graph(G1_TEXT)


@pytest.fixture(scope="session")
def G2():
    return parse_graph(G2_TEXT)


@pytest.fixture(scope="session")
def G3():
    return parse_graph(G3_TEXT)


@pytest.fixture(scope="session")
def G4():
    return parse_graph(G4_TEXT)


@pytest.fixture(scope="session")
def fixtures():
    return {name: parse_graph(t) for name, t in FIXTURE_TEXTS.items()}


@pytest.fixture(scope="session")
def small_corpus():
    return list(exhaustive(4, 6))


@pytest.fixture(scope="session")
def random_graphs():
    return random_corpus(200, RANDOM_SEED)
