import os
import sys
from functools import lru_cache
from itertools import permutations

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import pytest

from polycay.graphs import Graph, enumerate_graphs
from polycay.posets import Poset, enumerate_posets


@lru_cache(maxsize=None)
def poset_corpus(d: int, mode: str = "up_to_iso") -> tuple[Poset, ...]:
    return tuple(enumerate_posets(d, mode))


@lru_cache(maxsize=None)
def graph_corpus(d: int, mode: str = "up_to_iso") -> tuple[Graph, ...]:
    return tuple(enumerate_graphs(d, mode))


def brute_canonical_poset(p: Poset) -> int:
    return min(p.relabel(s).encoding() for s in permutations(range(p.d)))


def brute_canonical_graph(g: Graph) -> int:
    return min(g.relabel(s).edge_mask() for s in permutations(range(g.d)))


extended = pytest.mark.skipif(
    not os.environ.get("POLYCAY_EXTENDED"),
    reason="extended acceptance runs only with POLYCAY_EXTENDED=1",
)
