import pytest

from graph_catalog import connected_catalog, masks_to_edges
from sawcount.graph import graph_from_edges


@pytest.fixture(scope="session")
def catalog6():
    """All connected graphs on <= 6 vertices (one per iso class)."""
    return [graph_from_edges(len(m), masks_to_edges(m)) for m in connected_catalog(6)]


@pytest.fixture(scope="session")
def catalog8():
    """All connected graphs on <= 8 vertices (one per iso class)."""
    return [graph_from_edges(len(m), masks_to_edges(m)) for m in connected_catalog(8)]
