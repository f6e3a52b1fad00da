import random

import pytest
from hypothesis import strategies as st

from chibound.graph import Graph, build_graph


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [e for e, keep in zip(pairs, chosen) if keep])


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(12345)


def random_chain_instance(rng: random.Random, max_n: int = 60):
    """A graph, an ordered partition into pieces with common k, and the smallest valid d'."""
    from chibound._bits import mask_of
    from chibound.degen import DegenColouring, forward_degrees, later_neighbour_counts
    from chibound.graph import degeneracy_order

    n = rng.randint(1, max_n)
    g = random_graph(rng, n, rng.choice([0.05, 0.15, 0.3, 0.6]))
    verts = list(range(n))
    rng.shuffle(verts)
    cuts = sorted(rng.sample(range(1, n), min(n - 1, rng.randint(0, 4)))) if n > 1 else []
    blocks = [verts[a:b] for a, b in zip([0] + cuts, cuts + [n])]
    k = rng.randint(1, 4)
    pieces = []
    for block in blocks:
        parts = [[] for _ in range(k)]
        for v in block:
            parts[rng.randrange(k)].append(v)
        orders = [tuple(degeneracy_order(g, p)[0]) for p in parts]
        d = max((max(later_neighbour_counts(g, o), default=0) for o in orders), default=0)
        pieces.append(DegenColouring(k, d, tuple(orders)))
    fwd = forward_degrees(g, [mask_of(b) for b in blocks])
    d_prime = max((c for b in fwd[:-1] for c in b.values()), default=0)
    return g, pieces, d_prime


def planted_template(rng: random.Random, th, k: int | None = None, outside: int | None = None, inner_p: float = 0.3):
    """A graph holding a valid template for thresholds ``th`` plus random outside vertices."""
    from chibound.template import Template

    k = rng.randint(1, 3) if k is None else k
    sizes = [rng.randint(th.part_lower, min(th.part_upper, th.part_lower + 2)) for _ in range(k)]
    l0_size = rng.randint(0, 2)
    extra = rng.randint(0, 6) if outside is None else outside
    parts, nxt = [], 0
    for size in sizes:
        parts.append(list(range(nxt, nxt + size)))
        nxt += size
    l0 = list(range(nxt, nxt + l0_size))
    nxt += l0_size
    n = nxt + extra
    edges = set()
    for part in parts:
        for a in part:
            for b in part:
                if a < b and rng.random() < inner_p:
                    edges.add((a, b))
    for i in range(k):
        for j in range(i + 1, k):
            missing = set()
            if th.cross_cap >= 1:
                a_side, b_side = parts[i][:], parts[j][:]
                rng.shuffle(b_side)
                missing = {(a, b) for a, b in zip(a_side, b_side) if rng.random() < 0.5}
            for a in parts[i]:
                for b in parts[j]:
                    if (a, b) not in missing:
                        edges.add((a, b))
    body = [v for part in parts for v in part]
    for x in l0:
        for y in l0 + body:
            if x != y:
                edges.add((min(x, y), max(x, y)))
    for v in range(nxt, n):
        for u in range(v):
            if rng.random() < 0.5:
                edges.add((u, v))
    g = build_graph(n, sorted(edges))
    return g, Template.of(l0, parts)
