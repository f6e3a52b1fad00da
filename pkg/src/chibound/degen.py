"""(k, d)-colourings: partitions whose parts each have degeneracy at most d.

A colouring carries one elimination order per part. The certificate condition is
that every vertex has at most ``d`` neighbours occurring *later* in its part's
order, which is checked directly instead of recomputing degeneracy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ._bits import iter_bits
from .errors import GraphError, PreconditionError
from .graph import Graph, degeneracy_order_mask


@dataclass(frozen=True)
class DegenColouring:
    k: int
    d: int
    orders: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.k < 0 or self.d < 0:
            raise ValueError("k and d must be non-negative")
        if len(self.orders) > self.k:
            raise ValueError(f"{len(self.orders)} parts exceed declared capacity k = {self.k}")
        if len(self.orders) < self.k:
            object.__setattr__(self, "orders", tuple(self.orders) + ((),) * (self.k - len(self.orders)))

    @classmethod
    def build(cls, k: int, d: int, orders: Iterable[Sequence[int]]) -> DegenColouring:
        return cls(k, d, tuple(tuple(o) for o in orders))

    @property
    def parts(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(o) for o in self.orders)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for o in self.orders for v in o)

    @property
    def size(self) -> int:
        return sum(len(o) for o in self.orders)

    @property
    def nonempty_parts(self) -> int:
        return sum(1 for o in self.orders if o)

    def padded(self, k: int) -> DegenColouring:
        if k < self.k:
            raise ValueError("cannot pad to a smaller k")
        return DegenColouring(k, self.d, self.orders)

    def restricted(self, keep: frozenset[int] | set[int]) -> DegenColouring:
        """Drop vertices outside ``keep``; later-neighbour counts can only shrink."""
        return DegenColouring(self.k, self.d, tuple(tuple(v for v in o if v in keep) for o in self.orders))

    def relabelled(self, ids: Sequence[int]) -> DegenColouring:
        return DegenColouring(self.k, self.d, tuple(tuple(ids[v] for v in o) for o in self.orders))

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "d": self.d,
            "parts": [sorted(o) for o in self.orders],
            "orders": [list(o) for o in self.orders],
        }

    @classmethod
    def from_dict(cls, data: dict) -> DegenColouring:
        orders = [tuple(o) for o in data["orders"]]
        if "parts" in data:
            if [sorted(p) for p in data["parts"]] != [sorted(o) for o in orders]:
                raise ValueError("parts and orders disagree")
        return cls(int(data["k"]), int(data["d"]), tuple(orders))


@dataclass(frozen=True)
class KdCheck:
    ok: bool
    reason: str | None = None
    vertex: int | None = None
    later_neighbours: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def later_neighbour_counts(g: Graph, order: Sequence[int]) -> list[int]:
    counts = [0] * len(order)
    later = 0
    for i in range(len(order) - 1, -1, -1):
        v = order[i]
        counts[i] = (g.adj[v] & later).bit_count()
        later |= 1 << v
    return counts


def verify_kd(g: Graph, c: DegenColouring, d: int | None = None) -> KdCheck:
    """Check disjointness, vertex validity and the later-neighbour certificate."""
    budget = c.d if d is None else d
    seen: set[int] = set()
    for order in c.orders:
        for v in order:
            if not (isinstance(v, int) and 0 <= v < g.n):
                return KdCheck(False, "invalid vertex", v)
            if v in seen:
                return KdCheck(False, "vertex in two parts", v)
            seen.add(v)
    for order in c.orders:
        for v, count in zip(order, later_neighbour_counts(g, order)):
            if count > budget:
                return KdCheck(False, "later-neighbour overflow", v, count)
    return KdCheck(True)


def degeneracy_colouring(g: Graph, mask: int) -> DegenColouring:
    """The (1, degeneracy) colouring of ``G[mask]`` given by a smallest-last order."""
    order, d = degeneracy_order_mask(g, mask)
    return DegenColouring(1, d, (tuple(order),))


def greedy_classes(g: Graph, mask: int) -> DegenColouring:
    """A (c, 0)-colouring of ``G[mask]``: greedy colour classes along the reversed smallest-last order."""
    order, _ = degeneracy_order_mask(g, mask)
    colour: dict[int, int] = {}
    for v in reversed(order):
        used = {colour[w] for w in iter_bits(g.adj[v]) if w in colour}
        c = 0
        while c in used:
            c += 1
        colour[v] = c
    classes: list[list[int]] = [[] for _ in range(max(colour.values(), default=-1) + 1)]
    for v in sorted(colour):
        classes[colour[v]].append(v)
    return DegenColouring(max(1, len(classes)), 0, tuple(tuple(c) for c in classes))


def singletons(vertices: Iterable[int]) -> DegenColouring:
    vs = sorted(vertices)
    return DegenColouring(len(vs), 0, tuple((v,) for v in vs))


def juxtapose(colourings: Iterable[DegenColouring]) -> DegenColouring:
    """Colourings of disjoint vertex sets placed side by side: parts concatenate, d is the max."""
    orders: list[tuple[int, ...]] = []
    d = 0
    for c in colourings:
        orders.extend(o for o in c.orders if o)
        d = max(d, c.d)
    return DegenColouring(len(orders), d, tuple(orders))


def forward_degrees(g: Graph, blocks: Sequence[int]) -> list[dict[int, int]]:
    """For each block mask, the number of neighbours each of its vertices has in later blocks."""
    out: list[dict[int, int]] = [{} for _ in blocks]
    later = 0
    for i in range(len(blocks) - 1, -1, -1):
        out[i] = {v: (g.adj[v] & later).bit_count() for v in iter_bits(blocks[i])}
        later |= blocks[i]
    return out


def chain(g: Graph, pieces: Sequence[DegenColouring], d_prime: int) -> DegenColouring:
    """Combine (k, d)-colourings of an ordered partition into a (k, d + d')-colouring.

    Part ``j`` of the result is the union of part ``j`` over the pieces, ordered
    piece 1 first and the last piece last, so a vertex's later neighbours are its
    later neighbours inside its piece plus its neighbours in later pieces.
    """
    if not pieces:
        raise ValueError("chain needs at least one piece")
    k = pieces[0].k
    for p in pieces:
        if p.k != k:
            raise PreconditionError(f"pieces disagree on k: {p.k} != {k}")
    masks = []
    covered = 0
    for p in pieces:
        m = 0
        for v in p.vertices:
            m |= 1 << v
        if m & covered:
            raise PreconditionError("pieces overlap", m & covered)
        covered |= m
        masks.append(m)
    for block in forward_degrees(g, masks)[:-1]:
        for v, count in block.items():
            if count > d_prime:
                raise PreconditionError(f"vertex {v} has {count} > {d_prime} neighbours in later pieces", v)
    d = max(p.d for p in pieces)
    orders = tuple(tuple(v for p in pieces for v in p.orders[j]) for j in range(k))
    return DegenColouring(k, d + d_prime, orders)


def to_proper(g: Graph, c: DegenColouring) -> dict[int, int]:
    """Proper colouring with at most ``k(d+1)`` colours, numbered consecutively from 0."""
    check = verify_kd(g, c)
    if not check:
        raise PreconditionError(f"invalid (k,d) certificate: {check.reason} at vertex {check.vertex}", check)
    raw: dict[int, int] = {}
    for j, order in enumerate(c.orders):
        base = j * (c.d + 1)
        for v in reversed(order):
            used = {raw[w] for w in iter_bits(g.adj[v]) if w in raw}
            colour = base
            while colour in used:
                colour += 1
            if colour > base + c.d:
                raise GraphError(f"palette overflow at vertex {v}")
            raw[v] = colour
    relabel = {old: i for i, old in enumerate(sorted(set(raw.values())))}
    return {v: relabel[raw[v]] for v in sorted(raw)}


def is_proper(g: Graph, colouring: dict[int, int]) -> bool:
    return all(colouring[u] != colouring[v] for u, v in g.edges() if u in colouring and v in colouring)
