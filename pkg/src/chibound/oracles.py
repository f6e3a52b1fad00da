"""Exact decision procedures: cliques, colourings, stable sets, double stars, bicliques.

All searches run on adjacency bitmasks and break ties towards the lowest vertex
id, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from ._bits import bits, first_k, frozen, iter_bits
from .errors import DoubleStarFound, OracleSizeError
from .graph import Graph, VertexSet, degeneracy_order

DEFAULT_CHI_LIMIT = 18


# --- cliques ---------------------------------------------------------------

def _colour_classes(adj: tuple[int, ...] | list[int], p: int) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of ``p``; vertices listed by colour, with colour numbers."""
    order: list[int] = []
    cols: list[int] = []
    colour = 0
    while p:
        colour += 1
        q = p
        while q:
            low = q & -q
            v = low.bit_length() - 1
            p &= ~low
            q &= ~low & ~adj[v]
            order.append(v)
            cols.append(colour)
    return order, cols


def _clique_search(adj, p: int, floor: int = 0, target: int | None = None) -> tuple[int, int]:
    """Branch and bound for a clique inside ``p`` larger than ``floor``.

    Returns ``(size, mask)`` of the best clique found (``(floor, 0)`` if none beats
    the floor). Stops early once a clique of size ``target`` is found.
    """
    best_size = floor
    best_mask = 0

    def expand(r: int, rsize: int, p: int) -> bool:
        nonlocal best_size, best_mask
        order, cols = _colour_classes(adj, p)
        for i in range(len(order) - 1, -1, -1):
            if rsize + cols[i] <= best_size:
                return False
            v = order[i]
            bit = 1 << v
            np_ = p & adj[v]
            if np_:
                if expand(r | bit, rsize + 1, np_):
                    return True
            elif rsize + 1 > best_size:
                best_size, best_mask = rsize + 1, r | bit
                if target is not None and best_size >= target:
                    return True
            p &= ~bit
        return False

    if p:
        expand(0, 0, p)
    return best_size, best_mask


def clique_number(g: Graph, within: Iterable[int] | None = None) -> tuple[int, VertexSet]:
    """Size of a maximum clique and one maximum clique."""
    mask = g.full_mask if within is None else g.mask(within)
    size, witness = _clique_search(g.adj, mask)
    return size, frozen(witness)


def clique_number_mask(g: Graph, mask: int) -> int:
    return _clique_search(g.adj, mask)[0]


def has_clique_of_size(g: Graph, mask: int, size: int) -> bool:
    if size <= 0:
        return True
    return _clique_search(g.adj, mask, size - 1, size)[0] >= size


def max_clique_lexmin(g: Graph, mask: int) -> int:
    """The lexicographically smallest maximum clique inside ``mask`` (as a bitmask)."""
    need = _clique_search(g.adj, mask)[0]
    chosen = 0
    p = mask
    for v in bits(mask):
        if need == 0:
            break
        if not p >> v & 1:
            continue
        sub = p & g.adj[v]
        if has_clique_of_size(g, sub, need - 1):
            chosen |= 1 << v
            p = sub
            need -= 1
    return chosen


# --- colouring -------------------------------------------------------------

def _dsatur(g: Graph) -> list[int]:
    n = g.n
    colour = [-1] * n
    forbidden = [0] * n
    for _ in range(n):
        v = max(
            (u for u in range(n) if colour[u] < 0),
            key=lambda u: (forbidden[u].bit_count(), g.degree(u), -u),
        )
        c = 0
        while forbidden[v] >> c & 1:
            c += 1
        colour[v] = c
        for w in iter_bits(g.adj[v]):
            forbidden[w] |= 1 << c
    return colour


def _k_colouring(g: Graph, k: int) -> list[int] | None:
    n = g.n
    colour = [-1] * n
    forbidden = [0] * n

    def pick() -> int:
        best, key = -1, None
        for u in range(n):
            if colour[u] < 0:
                kk = (forbidden[u].bit_count(), g.degree(u), -u)
                if key is None or kk > key:
                    best, key = u, kk
        return best

    def solve(done: int, used: int) -> bool:
        if done == n:
            return True
        v = pick()
        for c in range(min(k, used + 1)):
            if forbidden[v] >> c & 1:
                continue
            colour[v] = c
            touched = [w for w in iter_bits(g.adj[v]) if colour[w] < 0 and not forbidden[w] >> c & 1]
            for w in touched:
                forbidden[w] |= 1 << c
            if solve(done + 1, max(used, c + 1)):
                return True
            for w in touched:
                forbidden[w] &= ~(1 << c)
            colour[v] = -1
        return False

    return colour if solve(0, 0) else None


def chromatic_number_exact(g: Graph, limit: int = DEFAULT_CHI_LIMIT) -> tuple[int, list[int]]:
    """Minimum number of colours and a witness colouring (``colour[v]``)."""
    if g.n > limit:
        raise OracleSizeError(f"exact chromatic number limited to n <= {limit}, got n = {g.n}")
    if g.n == 0:
        return 0, []
    lower = clique_number(g)[0]
    best = _dsatur(g)
    upper = max(best) + 1
    for k in range(lower, upper):
        found = _k_colouring(g, k)
        if found is not None:
            return k, found
    return upper, best


# --- stable sets -----------------------------------------------------------

def _stable_extend(adj, cand: int, size: int) -> int | None:
    """A stable set of exactly ``size`` vertices inside ``cand``, lexicographically first."""
    if size == 0:
        return 0
    while cand.bit_count() >= size:
        low = cand & -cand
        cand ^= low
        sub = _stable_extend(adj, cand & ~adj[low.bit_length() - 1], size - 1)
        if sub is not None:
            return sub | low
    return None


def stable_of_size(g: Graph, mask: int, size: int) -> int | None:
    if size <= 3:
        return _stable_extend(g.adj, mask, size)
    cadj = [mask & ~a & ~(1 << v) for v, a in enumerate(g.adj)]
    found, witness = _clique_search(cadj, mask, size - 1, size)
    if found < size:
        return None
    return first_k(witness, size)


def find_stable_set(g: Graph, x: Iterable[int], size: int) -> VertexSet | None:
    """A stable subset of ``x`` with exactly ``size`` vertices, or ``None``."""
    if size < 0:
        raise ValueError("size must be non-negative")
    found = stable_of_size(g, g.mask(x), size)
    return None if found is None else frozen(found)


def independence_number(g: Graph, mask: int | None = None) -> int:
    mask = g.full_mask if mask is None else mask
    cadj = [mask & ~a & ~(1 << v) for v, a in enumerate(g.adj)]
    return _clique_search(cadj, mask)[0]


@dataclass(frozen=True)
class RamseyReport:
    s: int
    n: int
    omega: int
    applicable: bool
    sum_bound: int
    sum_holds: bool | None
    strict_applicable: bool
    strict_holds: bool | None

    @property
    def holds(self) -> bool:
        return self.sum_holds is not False and self.strict_holds is not False


def check_ramsey_bound(g: Graph, s: int) -> RamseyReport:
    """If ``g`` has no stable set of size ``s``, check ``n <= w + ... + w^(s-1)`` and ``n < w^s``."""
    omega = clique_number(g)[0]
    sum_bound = sum(omega**i for i in range(1, s))
    applicable = s >= 0 and stable_of_size(g, g.full_mask, s) is None
    strict_applicable = applicable and omega > 1
    return RamseyReport(
        s=s,
        n=g.n,
        omega=omega,
        applicable=applicable,
        sum_bound=sum_bound,
        sum_holds=(g.n <= sum_bound) if applicable else None,
        strict_applicable=strict_applicable,
        strict_holds=(g.n < omega**s) if strict_applicable else None,
    )


# --- double stars ----------------------------------------------------------

@dataclass(frozen=True)
class DoubleStarWitness:
    centers: tuple[int, int]
    leaves_u: tuple[int, ...]
    leaves_x: tuple[int, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.centers + self.leaves_u + self.leaves_x))

    def expected_edges(self) -> set[frozenset[int]]:
        u, x = self.centers
        out = {frozenset((u, x))}
        out |= {frozenset((u, a)) for a in self.leaves_u}
        out |= {frozenset((x, b)) for b in self.leaves_x}
        return out

    def verify(self, g: Graph) -> bool:
        vs = self.vertices
        if len(set(vs)) != len(vs):
            return False
        induced = {frozenset((a, b)) for i, a in enumerate(vs) for b in vs[i + 1:] if g.has_edge(a, b)}
        return induced == self.expected_edges()

    def to_dict(self) -> dict:
        return {"centers": list(self.centers), "leaves_u": list(self.leaves_u), "leaves_x": list(self.leaves_x)}


def find_cross_stable(g: Graph, a: int, b: int, s: int) -> tuple[int, int] | None:
    """Stable ``S`` in ``a`` and ``T`` in ``b`` with ``|S| = |T| = s`` and ``S | T`` stable."""
    if s == 0:
        return 0, 0
    adj = g.adj
    if a.bit_count() < s or b.bit_count() < s:
        return None

    def over_a(cand: int, chosen: int, need: int, b_left: int) -> tuple[int, int] | None:
        if need == 0:
            t = _stable_extend(adj, b_left, s)
            return None if t is None else (chosen, t)
        while cand.bit_count() >= need:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            rest = b_left & ~adj[v]
            if rest.bit_count() < s:
                continue
            hit = over_a(cand & ~adj[v], chosen | low, need - 1, rest)
            if hit is not None:
                return hit
        return None

    return over_a(a, 0, s, b)


def find_induced_double_star(g: Graph, s: int) -> DoubleStarWitness | None:
    """An induced H_s (two adjacent centres with ``s`` private leaves each), or ``None``."""
    if s < 1:
        raise ValueError("double star parameter s must be >= 1")
    adj = g.adj
    for u in range(g.n):
        for x in iter_bits(adj[u] >> (u + 1) << (u + 1)):
            side_u = adj[u] & ~adj[x] & ~(1 << x)
            side_x = adj[x] & ~adj[u] & ~(1 << u)
            hit = find_cross_stable(g, side_u, side_x, s)
            if hit is not None:
                return DoubleStarWitness((u, x), tuple(bits(hit[0])), tuple(bits(hit[1])))
    return None


def require_hfree(g: Graph, s: int) -> None:
    witness = find_induced_double_star(g, s)
    if witness is not None:
        raise DoubleStarFound(f"graph contains an induced H_{s}: {witness.to_dict()}", witness)


# --- bicliques -------------------------------------------------------------

def iter_bicliques(g: Graph, t: int, within: int | None = None) -> Iterator[tuple[int, int]]:
    """Yield ``(A, B)`` masks of disjoint ``t``-sets with every A-B pair adjacent.

    ``A`` runs over ``t``-subsets in lexicographic order; ``B`` is the ``t`` lowest
    common neighbours of ``A``. Edges inside a side are allowed.
    """
    mask = g.full_mask if within is None else within
    adj = g.adj
    if t <= 0:
        yield 0, 0
        return
    cand = [v for v in bits(mask) if (adj[v] & mask).bit_count() >= t]

    def rec(start: int, chosen: int, common: int, size: int) -> Iterator[tuple[int, int]]:
        if size == t:
            yield chosen, first_k(common, t)
            return
        for idx in range(start, len(cand) - (t - size) + 1):
            v = cand[idx]
            nxt = common & adj[v]
            if nxt.bit_count() >= t:
                yield from rec(idx + 1, chosen | (1 << v), nxt, size + 1)

    yield from rec(0, 0, mask, 0)


def find_biclique_subgraph(g: Graph, t: int) -> tuple[VertexSet, VertexSet] | None:
    if t < 1:
        raise ValueError("t must be >= 1")
    for a, b in iter_bicliques(g, t):
        return frozen(a), frozen(b)
    return None


@dataclass(frozen=True)
class DichotomyReport:
    t: int
    c: float
    degeneracy: int
    bound: float
    biclique: tuple[VertexSet, VertexSet] | None = field(default=None)

    @property
    def biclique_branch(self) -> bool:
        return self.biclique is not None

    @property
    def degeneracy_branch(self) -> bool:
        return self.degeneracy < self.bound

    @property
    def holds(self) -> bool:
        return self.biclique_branch or self.degeneracy_branch


def check_kst_dichotomy(g: Graph, s: int, t: int, c: float) -> DichotomyReport:
    """Falsification harness: an H_s-free graph has K_{t,t} as a subgraph or degeneracy < t^c."""
    require_hfree(g, s)
    _, degeneracy = degeneracy_order(g)
    return DichotomyReport(
        t=t,
        c=c,
        degeneracy=degeneracy,
        bound=t**c,
        biclique=find_biclique_subgraph(g, t) if t >= 1 else (frozenset(), frozenset()),
    )
