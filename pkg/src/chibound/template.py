"""s-templates: a clique L0 joined to large, almost mutually complete parts.

Search is local: seeds come from K_{t,t} subgraphs, are grown greedily, then
improved with four exchange moves (absorb, promote, split, append) until no move
raises the value. The result is a high-value template, not a certified optimum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from ._bits import bits, frozen, iter_bits, mask_of
from .errors import InvariantViolation
from .graph import Graph, VertexSet
from .oracles import iter_bicliques
from .profiles import ThresholdProfile, Thresholds

MOVE_FAMILIES = ("absorb", "promote", "split", "append")


@dataclass(frozen=True)
class Template:
    l0: VertexSet
    parts: tuple[VertexSet, ...]
    origin: str = field(default="", compare=False)

    @classmethod
    def of(cls, l0: Iterable[int], parts: Iterable[Iterable[int]], origin: str = "") -> Template:
        return cls(frozenset(l0), tuple(frozenset(p) for p in parts), origin)

    @classmethod
    def from_masks(cls, l0: int, parts: Sequence[int], origin: str = "") -> Template:
        return cls(frozen(l0), tuple(frozen(p) for p in parts), origin)

    @property
    def k(self) -> int:
        return len(self.parts)

    @cached_property
    def l0_mask(self) -> int:
        return mask_of(self.l0)

    @cached_property
    def part_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(p) for p in self.parts)

    @cached_property
    def union_mask(self) -> int:
        out = 0
        for m in self.part_masks:
            out |= m
        return out

    @cached_property
    def vertex_mask(self) -> int:
        return self.union_mask | self.l0_mask

    @property
    def vertices(self) -> VertexSet:
        return frozen(self.vertex_mask)

    def to_dict(self) -> dict:
        return {"L0": sorted(self.l0), "parts": [sorted(p) for p in self.parts]}

    @classmethod
    def from_dict(cls, data: dict) -> Template:
        return cls.of(data["L0"], data["parts"])


@dataclass(frozen=True)
class TemplateCheck:
    ok: bool
    clause: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _non_nbrs(g: Graph, v: int, mask: int) -> int:
    return (mask & ~g.adj[v] & ~(1 << v)).bit_count()


def _check(g: Graph, th: Thresholds, l0: int, parts: Sequence[int]) -> TemplateCheck:
    seen = l0
    for i, p in enumerate(parts):
        if p & seen:
            return TemplateCheck(False, "disjoint", f"part {i + 1} overlaps an earlier set")
        seen |= p
    for v in iter_bits(l0):
        if (g.adj[v] | (1 << v)) & l0 != l0:
            return TemplateCheck(False, "L0 clique", f"vertex {v} misses part of L0")
    union = seen & ~l0
    for v in iter_bits(l0):
        if g.adj[v] & union != union:
            return TemplateCheck(False, "L0 join", f"L0 vertex {v} is not complete to the parts")
    for i, p in enumerate(parts):
        size = p.bit_count()
        if not th.part_lower <= size <= th.part_upper:
            return TemplateCheck(False, "part size", f"|L{i + 1}| = {size} outside [{th.part_lower}, {th.part_upper}]")
    for i, p in enumerate(parts):
        for j, q in enumerate(parts):
            if i == j:
                continue
            for v in iter_bits(p):
                if _non_nbrs(g, v, q) > th.cross_cap:
                    return TemplateCheck(
                        False, "cross cap", f"vertex {v} of L{i + 1} has > {th.cross_cap} non-neighbours in L{j + 1}"
                    )
    return TemplateCheck(True)


def validate_template(g: Graph, t: Template, p: ThresholdProfile, omega: int) -> TemplateCheck:
    for v in t.vertices:
        if not 0 <= v < g.n:
            return TemplateCheck(False, "vertex ids", f"vertex {v} not in graph")
    return _check(g, p.at(omega), t.l0_mask, t.part_masks)


def _value(th: Thresholds, l0: int, parts: Sequence[int]) -> int:
    return sum(q.bit_count() for q in parts) + th.l0_weight * l0.bit_count() + th.part_bonus * len(parts)


def template_value(t: Template, p: ThresholdProfile, omega: int) -> int:
    return _value(p.at(omega), t.l0_mask, t.part_masks)


def transversal_clique(g: Graph, t: Template, omega: int | None = None) -> VertexSet:
    """One vertex from each part, pairwise adjacent, chosen greedily by lowest id."""
    chosen = 0
    common = g.full_mask
    for i, part in enumerate(t.part_masks):
        options = part & common
        if not options:
            raise InvariantViolation(f"no vertex of L{i + 1} is adjacent to all earlier picks", bits(chosen))
        low = options & -options
        chosen |= low
        common &= g.adj[low.bit_length() - 1]
    if omega is not None and t.k + len(t.l0) > omega:
        raise InvariantViolation(f"k + |L0| = {t.k + len(t.l0)} exceeds omega = {omega}")
    return frozen(chosen)


def optimality_floors(th: Thresholds, k: int) -> dict[str, int]:
    """Lower bounds a locally optimal template must meet, from the absorb and promote inequalities.

    ``absorb``: any part whose single-part absorption is feasible has at least this many vertices.
    ``promote``: any vertex whose promotion into L0 is feasible has at least this many
    non-neighbours inside its own part.
    """
    slack = max(k - 1, 0) * th.cross_cap
    return {
        "absorb": th.l0_weight - th.part_bonus - slack,
        "promote": th.l0_weight - 1 - slack,
    }


# --- moves -----------------------------------------------------------------

@dataclass
class _State:
    g: Graph
    th: Thresholds
    l0: int
    parts: list[int]
    universe: int

    @property
    def value(self) -> int:
        return _value(self.th, self.l0, self.parts)

    @property
    def used(self) -> int:
        out = self.l0
        for q in self.parts:
            out |= q
        return out


def _candidate(st: _State, l0: int, parts: list[int]) -> tuple[int, list[int]] | None:
    if not parts or not _check(st.g, st.th, l0, parts):
        return None
    if _value(st.th, l0, parts) <= st.value:
        return None
    return l0, parts


def absorb_options(st: _State) -> list[tuple[int, ...]]:
    k = len(st.parts)
    floor = optimality_floors(st.th, k)["absorb"]
    small = tuple(i for i, q in enumerate(st.parts) if q.bit_count() < floor)
    options: list[tuple[int, ...]] = []
    if small and len(small) < k:
        options.append(small)
    for i in sorted(range(k), key=lambda i: (st.parts[i].bit_count(), i)):
        if (i,) not in options:
            options.append((i,))
    return options


def move_absorb(st: _State) -> tuple[int, list[int]] | None:
    """Replace some parts by one vertex each (a clique) added to L0; shrink the rest to their common neighbourhood."""
    g = st.g
    k = len(st.parts)
    for group in absorb_options(st):
        keep = [i for i in range(k) if i not in group]
        if not keep:
            continue
        if len(group) == 1:
            best = None
            for x in iter_bits(st.parts[group[0]]):
                parts = [st.parts[i] & g.adj[x] for i in keep]
                got = _candidate(st, st.l0 | (1 << x), parts)
                if got is not None and (best is None or _value(st.th, *got) > _value(st.th, *best)):
                    best = got
            if best is not None:
                return best
            continue
        common = g.full_mask
        chosen = 0
        for i in group:
            opts = st.parts[i] & common
            if not opts:
                break
            pick = max(
                iter_bits(opts),
                key=lambda x: (sum((st.parts[j] & common & g.adj[x]).bit_count() for j in keep), -x),
            )
            chosen |= 1 << pick
            common &= g.adj[pick]
        else:
            got = _candidate(st, st.l0 | chosen, [st.parts[i] & common for i in keep])
            if got is not None:
                return got
    return None


def move_promote(st: _State) -> tuple[int, list[int]] | None:
    """Move one part vertex into L0, keeping only its neighbours in every part."""
    g = st.g
    for i, part in enumerate(st.parts):
        for v in iter_bits(part):
            parts = [q & g.adj[v] for q in st.parts]
            got = _candidate(st, st.l0 | (1 << v), parts)
            if got is not None:
                return got
    return None


def _split_part(g: Graph, th: Thresholds, part: int, seed: int) -> tuple[int, int]:
    a = part & ~g.adj[seed]
    b = part & g.adj[seed]
    while True:
        b2 = mask_of(v for v in iter_bits(b) if _non_nbrs(g, v, a) <= th.cross_cap)
        a2 = mask_of(v for v in iter_bits(a) if _non_nbrs(g, v, b2) <= th.cross_cap)
        if (a2, b2) == (a, b):
            return a, b
        a, b = a2, b2


def move_split(st: _State) -> tuple[int, list[int]] | None:
    """Split a part into two sides that are almost complete to each other."""
    g = st.g
    for i, part in enumerate(st.parts):
        tried: set[tuple[int, int]] = set()
        for seed in iter_bits(part):
            a, b = _split_part(g, st.th, part, seed)
            if (a, b) in tried:
                continue
            tried.add((a, b))
            parts = st.parts[:i] + [a, b] + st.parts[i + 1:]
            got = _candidate(st, st.l0, parts)
            if got is not None:
                return got
    return None


def move_append(st: _State) -> tuple[int, list[int]] | None:
    """Append a new part of outside vertices that are almost complete to every part; L0 is cleared."""
    g, th = st.g, st.th
    outside = st.universe & ~st.used
    m = mask_of(v for v in iter_bits(outside) if all(_non_nbrs(g, v, q) <= th.z_cap for q in st.parts))
    if m.bit_count() < th.part_lower:
        return None
    ranked = sorted(iter_bits(m), key=lambda v: (sum(_non_nbrs(g, v, q) for q in st.parts), v))
    m = mask_of(ranked[: th.part_upper])
    parts = list(st.parts)
    for _ in range(len(ranked) + 2):
        parts = [mask_of(x for x in iter_bits(q) if _non_nbrs(g, x, m) <= th.cross_cap) for q in st.parts]
        m2 = mask_of(v for v in iter_bits(m) if all(_non_nbrs(g, v, q) <= th.cross_cap for q in parts))
        if m2 == m:
            break
        m = m2
    return _candidate(st, 0, parts + [m])


_MOVES = {"absorb": move_absorb, "promote": move_promote, "split": move_split, "append": move_append}


def improve_template(
    g: Graph,
    t: Template,
    p: ThresholdProfile,
    omega: int,
    universe: Iterable[int] | None = None,
    families: Sequence[str] = MOVE_FAMILIES,
) -> Template | None:
    """First strictly better valid template from the move families in order, else ``None`` (locally optimal)."""
    uni = g.full_mask if universe is None else g.mask(universe)
    st = _State(g, p.at(omega), t.l0_mask, list(t.part_masks), uni | t.vertex_mask)
    for name in families:
        got = _MOVES[name](st)
        if got is not None:
            return Template.from_masks(got[0], got[1], origin=name)
    return None


def grow_template(g: Graph, t: Template, p: ThresholdProfile, omega: int, universe: Iterable[int] | None = None) -> Template:
    """Greedily add outside vertices to L0 or to parts while the template stays valid."""
    uni = g.full_mask if universe is None else g.mask(universe)
    l0, parts = _grow(g, p.at(omega), t.l0_mask, list(t.part_masks), uni)
    return Template.from_masks(l0, parts, origin=t.origin)


def _grow(g: Graph, th: Thresholds, l0: int, parts: list[int], universe: int) -> tuple[int, list[int]]:
    adj = g.adj
    changed = True
    while changed:
        changed = False
        used = l0
        for q in parts:
            used |= q
        union = used & ~l0
        for v in iter_bits(universe & ~used):
            if adj[v] & l0 == l0 and adj[v] & union == union and parts:
                l0 |= 1 << v
                used |= 1 << v
                changed = True
                continue
            if adj[v] & l0 != l0:
                continue
            for i, q in enumerate(parts):
                if q.bit_count() >= th.part_upper:
                    continue
                if any(_non_nbrs(g, v, r) > th.cross_cap for j, r in enumerate(parts) if j != i):
                    continue
                ok = True
                for j, r in enumerate(parts):
                    if j == i:
                        continue
                    for x in iter_bits(r & ~adj[v]):
                        if _non_nbrs(g, x, q) + 1 > th.cross_cap:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    parts[i] = q | (1 << v)
                    used |= 1 << v
                    union |= 1 << v
                    changed = True
                    break
    return l0, parts


def local_search(
    g: Graph, t: Template, p: ThresholdProfile, omega: int, universe: Iterable[int] | None = None
) -> tuple[Template, int]:
    """Alternate growth and improvement to a fixed point; returns the template and the number of improving steps."""
    th = p.at(omega)
    uni = g.full_mask if universe is None else g.mask(universe)
    limit = g.n + omega * (th.l0_weight + th.part_bonus) + 1
    steps = 0
    current = grow_template(g, t, p, omega, bits(uni))
    while True:
        nxt = improve_template(g, current, p, omega, bits(uni))
        if nxt is None:
            return current, steps
        steps += 1
        if steps > limit:
            raise InvariantViolation(f"template improvement did not terminate within {limit} steps")
        current = grow_template(g, nxt, p, omega, bits(uni))


def _exhaustive_pairs(g: Graph, th: Thresholds, universe: int) -> list[tuple[int, int]]:
    vs = bits(universe)
    lo = th.part_lower
    if lo <= 0:
        return []
    out = []
    for a in combinations(vs, lo):
        am = mask_of(a)
        rest = [v for v in vs if v > a[0] and not am >> v & 1]
        for b in combinations(rest, lo):
            bm = mask_of(b)
            if _check(g, th, 0, [am, bm]):
                out.append((am, bm))
    return out


def find_max_template(
    g: Graph,
    universe: Iterable[int] | None,
    p: ThresholdProfile,
    omega: int,
    exhaustive_limit: int = 14,
    max_seeds: int = 8,
    scan_limit: int = 4000,
) -> Template | None:
    """Best template found from biclique seeds (and every minimal pair on small universes).

    Returns ``None`` when nothing reaches ``min_value``. Not guaranteed optimal.
    """
    th = p.at(omega)
    uni = g.full_mask if universe is None else g.mask(universe)
    if th.part_lower < 1 or uni.bit_count() < 2 * th.part_lower:
        return None
    seeds: list[tuple[int, int]] = []
    covered = 0
    if uni.bit_count() <= exhaustive_limit:
        seeds = _exhaustive_pairs(g, th, uni)
    else:
        for scanned, (a, b) in enumerate(iter_bicliques(g, th.part_lower, uni)):
            if scanned >= scan_limit or len(seeds) >= max_seeds:
                break
            if (a | b) & ~covered == 0:
                continue
            if not _check(g, th, 0, [a, b]):
                continue
            seeds.append((a, b))
            _, grown = _grow(g, th, 0, [a, b], uni)
            for q in grown:
                covered |= q
    best: Template | None = None
    best_value = -1
    tried: set[tuple[int, tuple[int, ...]]] = set()
    for a, b in seeds:
        l0, parts = _grow(g, th, 0, [a, b], uni)
        key = (l0, tuple(sorted(parts)))
        if key in tried:
            continue
        tried.add(key)
        t, _ = local_search(g, Template.from_masks(l0, parts, origin="biclique"), p, omega, bits(uni))
        if t.k < 1:
            continue
        value = _value(th, t.l0_mask, t.part_masks)
        if value >= th.min_value and value > best_value:
            best, best_value = t, value
    return best


__all__ = [
    "MOVE_FAMILIES",
    "Template",
    "TemplateCheck",
    "find_max_template",
    "grow_template",
    "improve_template",
    "local_search",
    "optimality_floors",
    "template_value",
    "transversal_clique",
    "validate_template",
]
