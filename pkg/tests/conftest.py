"""Shared fixtures: catalog schemes reused across the suite (session-scoped
so cached eigen/tensor data is computed once)."""

import pytest

from schemepoly import catalog, crested_product


@pytest.fixture(scope="session")
def km32():
    return catalog.complete_multipartite(3, 2)


@pytest.fixture(scope="session")
def nbj323():
    return catalog.nonbinary_johnson(3, 2, 3)


@pytest.fixture(scope="session")
def q3():
    return catalog.graph_distance("hypercube", 3).scheme


@pytest.fixture(scope="session")
def q4():
    return catalog.graph_distance("hypercube", 4).scheme


@pytest.fixture(scope="session")
def c6():
    return catalog.graph_distance("cycle", 6).scheme


@pytest.fixture(scope="session")
def petersen():
    return catalog.graph_distance("petersen").scheme


@pytest.fixture(scope="session")
def h22():
    return catalog.hamming(2, 2).scheme


@pytest.fixture(scope="session")
def h32():
    return catalog.hamming(3, 2).scheme


@pytest.fixture(scope="session")
def k2():
    return catalog.complete(2).scheme


@pytest.fixture(scope="session")
def k3():
    return catalog.complete(3).scheme


@pytest.fixture(scope="session")
def k4():
    return catalog.complete(4).scheme


@pytest.fixture(scope="session")
def k5():
    return catalog.complete(5).scheme


@pytest.fixture(scope="session")
def z4():
    return catalog.cyclic_group(4).scheme


@pytest.fixture(scope="session")
def wreath(k2):
    """K2 wr K2 as a crested product (4 points, 2 classes + identity)."""
    return crested_product(k2, {0}, k2, {0, 1})


@pytest.fixture(scope="session")
def wreath3(k2, wreath):
    """Iterated wreath on 8 points."""
    return crested_product(k2, {0}, wreath.scheme, set(wreath.scheme.labels))
