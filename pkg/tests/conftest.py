import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from flowpoly.formats import load_graph

CORPUS = Path(__file__).parent.parent / "corpus"


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS


@pytest.fixture(scope="session")
def embedded_example():
    """The 2-vertex, 3-arc digraph together with its plane embedding."""
    parsed = load_graph(CORPUS / "example.g")
    return parsed.as_digraph(), parsed.rotation
