"""Simple undirected graphs on dense integer ids, stored as adjacency bitmasks."""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from ._bits import bits, iter_bits, mask_of
from .errors import GraphError

VertexSet = frozenset[int]


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``adj[v]`` is a bitmask of the neighbours of ``v``. Use :func:`build_graph`
    rather than the constructor; it validates and symmetrises the input.
    """

    n: int
    adj: tuple[int, ...]

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbours(self, v: int) -> VertexSet:
        return frozenset(iter_bits(self.adj[v]))

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise GraphError(f"vertex {v!r} not in 0..{self.n - 1}")

    def mask(self, x: Iterable[int]) -> int:
        """Validate ``x`` against this graph and return it as a bitmask."""
        m = 0
        for v in x:
            self.check_vertex(v)
            m |= 1 << v
        return m

    def is_clique(self, x: Iterable[int]) -> bool:
        xs = list(x)
        m = mask_of(xs)
        return all((self.adj[v] | (1 << v)) & m == m for v in xs)

    def is_stable(self, x: Iterable[int]) -> bool:
        m = mask_of(x)
        return all(not (self.adj[v] & m) for v in iter_bits(m))

    def complement(self) -> Graph:
        full = self.full_mask
        return Graph(self.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(self.adj)))


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    adj = [0] * n
    for e in edges:
        u, v = e
        for w in (u, v):
            if not (isinstance(w, int) and 0 <= w < n):
                raise GraphError(f"edge {tuple(e)!r} has endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"loop edge at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def induced_subgraph(g: Graph, x: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``(G[x], ids)``; new vertex ``i`` corresponds to ``ids[i]`` in ``g``."""
    ids = tuple(bits(g.mask(x)))
    return _induced_from_ids(g, ids), ids


def induced_subgraph_mask(g: Graph, mask: int) -> tuple[Graph, tuple[int, ...]]:
    ids = tuple(bits(mask))
    return _induced_from_ids(g, ids), ids


def _induced_from_ids(g: Graph, ids: tuple[int, ...]) -> Graph:
    pos = {v: i for i, v in enumerate(ids)}
    adj = []
    for v in ids:
        row = 0
        for w in iter_bits(g.adj[v]):
            i = pos.get(w)
            if i is not None:
                row |= 1 << i
        adj.append(row)
    return Graph(len(ids), tuple(adj))


def neighbours_in(g: Graph, v: int, x: Iterable[int]) -> VertexSet:
    g.check_vertex(v)
    return frozenset(iter_bits(g.adj[v] & g.mask(x)))


def non_neighbours_in(g: Graph, v: int, x: Iterable[int]) -> VertexSet:
    g.check_vertex(v)
    return frozenset(iter_bits(g.mask(x) & ~g.adj[v] & ~(1 << v)))


def degeneracy_order(g: Graph, within: Iterable[int] | None = None) -> tuple[list[int], int]:
    """Smallest-last elimination order of ``G[within]`` and its degeneracy.

    Vertices are listed in removal order (minimum current degree, lowest id on
    ties), so every vertex has at most ``degeneracy`` neighbours *later* in the
    returned list. Greedy colouring should walk the list backwards.
    """
    mask = g.full_mask if within is None else g.mask(within)
    return degeneracy_order_mask(g, mask)


def degeneracy_order_mask(g: Graph, mask: int) -> tuple[list[int], int]:
    alive = bits(mask)
    if not alive:
        return [], 0
    deg = {v: (g.adj[v] & mask).bit_count() for v in alive}
    remaining = mask
    order: list[int] = []
    best = 0
    while deg:
        v = min(deg, key=lambda u: (deg[u], u))
        best = max(best, deg.pop(v))
        order.append(v)
        remaining &= ~(1 << v)
        for w in iter_bits(g.adj[v] & remaining):
            deg[w] -= 1
    return order, best


# --- file format -----------------------------------------------------------

def parse_graph(text: str) -> Graph:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line.split())
    if not rows:
        raise GraphError("empty graph file")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(r[0]), int(r[1])) for r in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise GraphError(f"malformed graph file: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header declares {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def read_graph(path: str | os.PathLike[str]) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def format_graph(g: Graph, comment: str | None = None) -> str:
    out = io.StringIO()
    if comment:
        for line in comment.splitlines():
            out.write(f"# {line}\n")
    edges = g.edges()
    out.write(f"{g.n} {len(edges)}\n")
    for u, v in edges:
        out.write(f"{u} {v}\n")
    return out.getvalue()


def write_graph(g: Graph, path: str | os.PathLike[str], comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g, comment))


# --- named families --------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return build_graph(n, [])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """Complete multipartite graph; part ``i`` gets consecutive ids."""
    starts = []
    total = 0
    for size in sizes:
        starts.append(total)
        total += size
    label = [i for i, size in enumerate(sizes) for _ in range(size)]
    return build_graph(total, [(u, v) for u in range(total) for v in range(u + 1, total) if label[u] != label[v]])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def double_star(s: int) -> Graph:
    """H_s: centres 0 and 1, leaves 2..s+1 on 0 and s+2..2s+1 on 1."""
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(s)]
    edges += [(1, 2 + s + i) for i in range(s)]
    return build_graph(2 * s + 2, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges += [(u + offset, v + offset) for u, v in h.edges()]
        offset += h.n
    return build_graph(offset, edges)


def join(*graphs: Graph) -> Graph:
    """Disjoint union plus every edge between different summands."""
    base = disjoint_union(*graphs)
    owner = [i for i, h in enumerate(graphs) for _ in range(h.n)]
    extra = [(u, v) for u in range(base.n) for v in range(u + 1, base.n) if owner[u] != owner[v]]
    return build_graph(base.n, base.edges() + extra)
