import random
import sys
from itertools import combinations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sepcolor.hypergraphs import Hypergraph, HypergraphFamily


def random_hypergraph(rng: random.Random, n_max: int = 12, r_choices=(2, 3)) -> Hypergraph:
    """Random r-uniform hypergraph with at least one edge."""
    r = rng.choice(r_choices)
    n = rng.randint(r, n_max)
    pool = list(combinations(range(n), r))
    m = rng.randint(1, min(len(pool), 3 * n))
    edges = rng.sample(pool, m)
    return Hypergraph(n, tuple(sorted(edges)), r)


def random_nearly_disjoint_family(
    rng: random.Random, k: int, r: int, m: int, n: int
) -> HypergraphFamily:
    """k members of m edges each, rejection-sampled for near-disjointness."""
    members = []
    chosen: list[set] = []
    for _ in range(k):
        edges = []
        guard = 0
        while len(edges) < m:
            guard += 1
            if guard > 200_000:
                raise RuntimeError("rejection sampling stuck; loosen parameters")
            e = tuple(sorted(rng.sample(range(n), r)))
            if e in edges:
                continue
            eset = set(e)
            if any(len(eset & f) >= 2 for other in chosen for f in other):
                continue
            edges.append(e)
        members.append(Hypergraph(n, tuple(edges), r))
        chosen.append([set(e) for e in edges])
    return HypergraphFamily(n, tuple(members))


def random_list_instance(rng: random.Random, mode: str):
    """(part_lists, spec-style sizes) for the small equivalence suite.

    k <= 3 parts of size <= 3, lists of one size r <= 3 drawn from a color
    pool of size <= 6.
    """
    k = rng.randint(2, 3)
    sizes = [rng.randint(1, 3) for _ in range(k)]
    r = rng.randint(1, 3)
    pool_size = rng.randint(max(r, 2), 6)
    pool = list(range(pool_size))
    part_lists = [
        [tuple(sorted(rng.sample(pool, r))) for _ in range(sizes[i])] for i in range(k)
    ]
    return part_lists


@pytest.fixture
def rng():
    return random.Random(20240817)
