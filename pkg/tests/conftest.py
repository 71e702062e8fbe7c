import pytest
from hypothesis import settings

from zacyclic.complex import SimplicialComplex

# fixed seed, at least 100 cases per property
settings.register_profile("repro", derandomize=True, max_examples=100, deadline=None)
settings.load_profile("repro")


def rp2():
    f = [[0, 1, 2], [0, 1, 5], [0, 2, 3], [0, 3, 4], [0, 4, 5],
         [1, 2, 4], [1, 3, 4], [1, 3, 5], [2, 3, 5], [2, 4, 5]]
    return SimplicialComplex([[f"v{i}" for i in t] for t in f])


def torus7():
    f = []
    for i in range(7):
        f.append([i, (i + 1) % 7, (i + 3) % 7])
        f.append([i, (i + 2) % 7, (i + 3) % 7])
    return SimplicialComplex([[f"v{i}" for i in t] for t in f])


def tetra_boundary():
    return SimplicialComplex([["a", "b", "c"], ["a", "b", "d"], ["a", "c", "d"], ["b", "c", "d"]])


@pytest.fixture
def RP2():
    return rp2()


@pytest.fixture
def T2():
    return torus7()
