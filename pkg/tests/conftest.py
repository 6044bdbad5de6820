from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chaingraph import build_graph, enumerate_chain_graphs


@pytest.fixture
def ladder():
    """Two undirected pairs joined by parallel arrows: 1--2, 3--4, 1->3, 2->4."""
    return build_graph("1234", [("1", "3"), ("2", "4")], [("1", "2"), ("3", "4")])


@pytest.fixture
def flag_path():
    """a -> c -- b, the smallest graph where the two criteria disagree."""
    return build_graph("abc", [("a", "c")], [("c", "b")])


@pytest.fixture
def mixed_star():
    """One arrow and two lines into a hub: a -> d, b -- d, c -- d."""
    return build_graph("abcd", [("a", "d")], [("b", "d"), ("c", "d")])


@pytest.fixture
def bridged_pair():
    """Two arrows into the ends of a line: a -> c, c -- d, b -> d."""
    return build_graph("abcd", [("a", "c"), ("b", "d")], [("c", "d")])


@pytest.fixture
def immorality_graph():
    return build_graph("abc", [("a", "c"), ("b", "c")], [])


@pytest.fixture
def three_blocks():
    """Three chain components 12, 3, 45 with arrows 1->3, 2->4, 3->4."""
    return build_graph(
        "12345",
        [("1", "3"), ("2", "4"), ("3", "4")],
        [("1", "2"), ("4", "5")],
    )


@pytest.fixture(scope="session")
def graphs_upto_3():
    return [g for n in range(1, 4) for g in enumerate_chain_graphs(n)]


@pytest.fixture(scope="session")
def graphs_upto_4():
    return [g for n in range(1, 5) for g in enumerate_chain_graphs(n)]
