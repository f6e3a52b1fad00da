"""Neighbourhood classification around a template and the pure-vertex colourings.

Part indices are 0-based throughout. Labels are sets: at desk scale a vertex may
be pendant and dense at once, or carry no label at all.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from ._bits import bits, frozen, iter_bits, mask_of
from .degen import DegenColouring, juxtapose, singletons
from .errors import PreconditionError
from .graph import Graph
from .oracles import (
    _stable_extend,
    clique_number_mask,
    find_cross_stable,
    iter_bicliques,
    max_clique_lexmin,
    require_hfree,
)
from .profiles import ThresholdProfile, Thresholds
from .template import Template

Recurse = Callable[[int], DegenColouring]


@dataclass(frozen=True)
class PendantWitness:
    i: int
    j: int
    u: int
    stable: tuple[int, ...]


@dataclass(frozen=True)
class Labels:
    pendant: PendantWitness | None = None
    dense: tuple[int, int] | None = None
    pure: frozenset[int] | None = None

    @property
    def names(self) -> tuple[str, ...]:
        out = []
        if self.pendant is not None:
            out.append("pendant")
        if self.dense is not None:
            out.append("dense")
        if self.pure is not None:
            out.append("pure")
        return tuple(out)


@dataclass
class ClassifiedNeighbourhood:
    template: Template
    omega: int
    thresholds: Thresholds
    universe: int
    neighbourhood: int
    labels: dict[int, Labels]
    m_partition: dict[frozenset[int], frozenset[int]] = field(default_factory=dict)

    def with_label(self, name: str) -> list[int]:
        return [v for v, lab in sorted(self.labels.items()) if name in lab.names]

    @property
    def unlabelled(self) -> list[int]:
        return [v for v, lab in sorted(self.labels.items()) if not lab.names]

    def large_sets(self) -> list[frozenset[int]]:
        m = self.thresholds.small_cutoff
        return sorted((I for I, M in self.m_partition.items() if len(M) > m), key=_index_key)

    def small_sets(self) -> list[frozenset[int]]:
        m = self.thresholds.small_cutoff
        return sorted((I for I, M in self.m_partition.items() if len(M) <= m), key=_index_key)

    def restricted(self, keep: int) -> ClassifiedNeighbourhood:
        """The same classification with labels and M_I cut down to the vertex mask ``keep``."""
        labels = {v: lab for v, lab in self.labels.items() if keep >> v & 1}
        parts = {}
        for I, M in self.m_partition.items():
            M2 = frozenset(v for v in M if keep >> v & 1)
            if M2:
                parts[I] = M2
        return ClassifiedNeighbourhood(
            self.template, self.omega, self.thresholds, self.universe, self.neighbourhood & keep, labels, parts
        )

    def to_dict(self) -> dict:
        rows = {}
        for v, lab in sorted(self.labels.items()):
            row: dict = {"labels": list(lab.names)}
            if lab.pendant is not None:
                w = lab.pendant
                row["pendant"] = {"i": w.i, "j": w.j, "u": w.u, "S": list(w.stable)}
            if lab.dense is not None:
                row["dense"] = {"j": lab.dense[0], "u": lab.dense[1]}
            if lab.pure is not None:
                row["pure"] = sorted(lab.pure)
            rows[str(v)] = row
        return {
            "template": self.template.to_dict(),
            "omega": self.omega,
            "vertices": rows,
            "M_sizes": {",".join(map(str, sorted(I))): len(M) for I, M in sorted(self.m_partition.items(), key=lambda kv: _index_key(kv[0]))},
        }


def _index_key(I: frozenset[int]) -> tuple:
    return (len(I), tuple(sorted(I)))


# --- label predicates -------------------------------------------------------

def pendant_witness(g: Graph, th: Thresholds, parts: tuple[int, ...], v: int) -> PendantWitness | None:
    adj = g.adj
    s = th.s
    for j, lj in enumerate(parts):
        for u in iter_bits(lj & ~adj[v]):
            for i, li in enumerate(parts):
                if i == j:
                    continue
                cand = li & adj[u]
                for w in iter_bits(cand & adj[v]):
                    rest = cand & ~adj[v] & ~adj[w] & ~(1 << w)
                    more = _stable_extend(adj, rest, s)
                    if more is not None:
                        return PendantWitness(i, j, u, tuple(sorted(bits(more) + [w])))
    return None


def dense_witness(g: Graph, th: Thresholds, parts: tuple[int, ...], v: int) -> tuple[int, int] | None:
    adj = g.adj
    for j, lj in enumerate(parts):
        for u in iter_bits(lj):
            if all(
                (li & adj[u] & ~adj[v]).bit_count() < th.dense_cap for i, li in enumerate(parts) if i != j
            ):
                return j, u
    return None


def pure_index_set(g: Graph, th: Thresholds, parts: tuple[int, ...], v: int) -> frozenset[int] | None:
    adj = g.adj
    seen = []
    for i, li in enumerate(parts):
        nbrs = (li & adj[v]).bit_count()
        if nbrs and li.bit_count() - nbrs > th.pure_cap:
            return None
        if nbrs:
            seen.append(i)
    if len(parts) - len(seen) < 2:
        return None
    return frozenset(seen)


def classify(
    g: Graph, t: Template, p: ThresholdProfile, omega: int, universe: Iterable[int] | None = None
) -> ClassifiedNeighbourhood:
    """Label every vertex of N(L) (inside ``universe``) with all applicable categories."""
    th = p.at(omega)
    uni = g.full_mask if universe is None else g.mask(universe)
    parts = t.part_masks
    union = t.union_mask
    nbhd = mask_of(v for v in iter_bits(uni & ~t.vertex_mask) if g.adj[v] & union)
    labels: dict[int, Labels] = {}
    groups: dict[frozenset[int], set[int]] = {}
    for v in iter_bits(nbhd):
        pure = pure_index_set(g, th, parts, v)
        labels[v] = Labels(
            pendant=pendant_witness(g, th, parts, v),
            dense=dense_witness(g, th, parts, v),
            pure=pure,
        )
        if pure is not None:
            groups.setdefault(pure, set()).add(v)
    return ClassifiedNeighbourhood(
        template=t,
        omega=omega,
        thresholds=th,
        universe=uni,
        neighbourhood=nbhd,
        labels=labels,
        m_partition={I: frozenset(M) for I, M in groups.items()},
    )


def verify_labels(g: Graph, cn: ClassifiedNeighbourhood) -> list[str]:
    """Re-check each witness against its definition; returns problems found."""
    th = cn.thresholds
    parts = cn.template.part_masks
    adj = g.adj
    problems = []
    for v, lab in cn.labels.items():
        if v in cn.template.vertices or not adj[v] & cn.template.union_mask:
            problems.append(f"{v}: not in N(L)")
        w = lab.pendant
        if w is not None:
            S = mask_of(w.stable)
            ok = (
                w.i != w.j
                and parts[w.j] >> w.u & 1
                and S & parts[w.i] == S
                and len(w.stable) == th.s + 1
                and g.is_stable(w.stable)
                and adj[w.u] & S == S
                and not adj[v] >> w.u & 1
                and (adj[v] & S).bit_count() == 1
            )
            if not ok:
                problems.append(f"{v}: bad pendant witness {w}")
        if lab.dense is not None:
            j, u = lab.dense
            if not (parts[j] >> u & 1) or any(
                (li & adj[u] & ~adj[v]).bit_count() >= th.dense_cap for i, li in enumerate(parts) if i != j
            ):
                problems.append(f"{v}: bad dense witness {lab.dense}")
        if lab.pure is not None and lab.pure != pure_index_set(g, th, parts, v):
            problems.append(f"{v}: bad pure index set")
    covered = set()
    for I, M in cn.m_partition.items():
        covered |= M
        for v in M:
            if cn.labels[v].pure != I:
                problems.append(f"{v}: in M_{sorted(I)} but I_v = {cn.labels[v].pure}")
    if covered != set(cn.with_label("pure")):
        problems.append("M partition does not cover exactly the pure vertices")
    return problems


# --- pendant count ----------------------------------------------------------

@dataclass(frozen=True)
class PendantBound:
    count: int
    bound: int
    formula: str

    @property
    def holds(self) -> bool:
        return self.count <= self.bound


def pendant_bound_value(p: ThresholdProfile, omega: int, k: int) -> tuple[int, str]:
    s = p.s
    if p.kind == "paper":
        return 14 ** (s + 2) * omega ** (s * s + 9 * s + 14), "14^(s+2) w^(s^2+9s+14)"
    th = p.at(omega)
    return k * k * th.part_upper ** (s + 2) * (s + 1) * omega**s, "k^2 partUpper^(s+2) (s+1) w^s"


def count_pendant_bound(g: Graph, cn: ClassifiedNeighbourhood, p: ThresholdProfile, omega: int) -> PendantBound:
    require_hfree(g, p.s)
    bound, formula = pendant_bound_value(p, omega, cn.template.k)
    return PendantBound(len(cn.with_label("pendant")), bound, formula)


# --- m-small sets -----------------------------------------------------------

@dataclass
class SmallUnionResult:
    colouring: DegenColouring
    outdegree_cap: int
    max_outdegree: int
    violations: list[tuple[int, int, int]]

    @property
    def ok(self) -> bool:
        return not self.violations


def small_union_colouring(g: Graph, cn: ClassifiedNeighbourhood, p: ThresholdProfile, omega: int) -> SmallUnionResult:
    """Colour the union of the m-small M_I, one part per missing template index.

    Edges inside each class are oriented from larger index sets to smaller ones
    (lower id first on ties); that orientation order is the elimination order,
    so out-degree is the later-neighbour count.
    """
    th = cn.thresholds
    k = cn.template.k
    cap = th.small_cutoff + omega ** (th.s + 1)
    index_of: dict[int, frozenset[int]] = {}
    for I in cn.small_sets():
        for v in cn.m_partition[I]:
            index_of[v] = I

    def key(v: int) -> tuple[int, int]:
        return (-len(index_of[v]), v)

    violations = []
    max_out = 0
    for j in range(k):
        vj = sorted((v for v, I in index_of.items() if j not in I), key=key)
        later = 0
        for u in reversed(vj):
            out = (g.adj[u] & later).bit_count()
            max_out = max(max_out, out)
            if out >= cap:
                violations.append((u, j, out))
            later |= 1 << u
    violations.sort()
    classes: list[list[int]] = [[] for _ in range(max(k, 1))]
    for v, I in index_of.items():
        j = min(i for i in range(k) if i not in I)
        classes[j].append(v)
    orders = []
    d = 0
    for members in classes:
        order = sorted(members, key=key)
        later = 0
        for v in reversed(order):
            d = max(d, (g.adj[v] & later).bit_count())
            later |= 1 << v
        orders.append(tuple(order))
    return SmallUnionResult(DegenColouring(len(orders), d, tuple(orders)), cap, max_out, violations)


# --- m-large sets -----------------------------------------------------------

def is_s_crowded(g: Graph, a: Iterable[int], b: Iterable[int], s: int) -> bool:
    """True iff no stable set meets ``a`` and ``b`` in exactly ``s`` vertices each."""
    am, bm = g.mask(a), g.mask(b)
    if am & bm:
        raise PreconditionError("sets must be disjoint", frozen(am & bm))
    return find_cross_stable(g, am, bm, s) is None


def _max_nbrs_into(g: Graph, src: frozenset[int], dst: frozenset[int]) -> int:
    dm = mask_of(dst)
    return max(((g.adj[v] & dm).bit_count() for v in src), default=0)


@dataclass
class LargeSetsReport:
    large: list[frozenset[int]]
    k: int
    pairs: list[tuple[frozenset[int], frozenset[int], str | None]]

    @property
    def count_ok(self) -> bool:
        return len(self.large) <= max(self.k - 1, 0)

    @property
    def failures(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        return [(I, J) for I, J, branch in self.pairs if branch is None]

    @property
    def ok(self) -> bool:
        return self.count_ok and not self.failures


def trichotomy_branch(g: Graph, cn: ClassifiedNeighbourhood, I: frozenset[int], J: frozenset[int]) -> str | None:
    cap = cn.omega**cn.thresholds.s
    MI, MJ = cn.m_partition[I], cn.m_partition[J]
    if J <= I and _max_nbrs_into(g, MI, MJ) < cap:
        return "J in I"
    if I <= J and _max_nbrs_into(g, MJ, MI) < cap:
        return "I in J"
    if I | J == frozenset(range(cn.template.k)) and is_s_crowded(g, MI, MJ, cn.thresholds.s):
        return "crowded"
    return None


def large_sets_structure(g: Graph, cn: ClassifiedNeighbourhood, p: ThresholdProfile, omega: int) -> LargeSetsReport:
    large = cn.large_sets()
    pairs = []
    for a in range(len(large)):
        for b in range(a + 1, len(large)):
            pairs.append((large[a], large[b], trichotomy_branch(g, cn, large[a], large[b])))
    return LargeSetsReport(large, cn.template.k, pairs)


@dataclass
class LargeUnionResult:
    colouring: DegenColouring
    branch: str
    flags: list[str] = field(default_factory=list)
    peeled: list[tuple[int, ...]] = field(default_factory=list)
    excluded: tuple[int, ...] = ()


def _union(cn: ClassifiedNeighbourhood, family: Iterable[frozenset[int]]) -> int:
    out = 0
    for I in family:
        out |= mask_of(cn.m_partition[I])
    return out


def large_union_colouring(
    g: Graph, cn: ClassifiedNeighbourhood, p: ThresholdProfile, omega: int, recurse: Recurse
) -> LargeUnionResult:
    """Colour the union of the m-large M_I by clique peeling plus recursion on smaller clique number."""
    th = cn.thresholds
    large = cn.large_sets()
    if not large:
        return LargeUnionResult(DegenColouring(0, 0, ()), "empty")
    flags: list[str] = []
    minimal = [J for J in large if not any(I < J for I in large)]
    J = min(minimal, key=_index_key)
    fam_a = [I for I in large if J <= I]
    fam_b = [I for I in large if not J <= I]
    a_mask = _union(cn, fam_a)
    b_mask = _union(cn, fam_b)
    for name, m in (("A", a_mask), ("B", b_mask)):
        if m and clique_number_mask(g, m) >= omega:
            flags.append(f"clique bound (2) fails on {name}")
    n_peel = th.peel_count
    if a_mask.bit_count() <= n_peel * omega:
        col = juxtapose([singletons(iter_bits(a_mask)), recurse(b_mask)])
        return LargeUnionResult(col, "small-A", flags)
    peeled: list[int] = []
    rest = a_mask
    for _ in range(n_peel):
        x = max_clique_lexmin(g, rest)
        if not x:
            break
        peeled.append(x)
        rest &= ~x
    t = peeled[-1].bit_count() if peeled else 0
    x_mask = 0
    for x in peeled:
        x_mask |= x
    cap = omega**th.s
    c_mask = 0
    for v in iter_bits(b_mask):
        for I in fam_a:
            inside = mask_of(cn.m_partition[I]) & x_mask
            if (inside & ~g.adj[v]).bit_count() >= cap:
                c_mask |= 1 << v
                break
    a_rest = a_mask & ~x_mask
    b_rest = b_mask & ~c_mask
    if a_rest and clique_number_mask(g, a_rest) > t:
        flags.append("clique bound on A\\X fails")
    if b_rest and clique_number_mask(g, b_rest) > omega - t:
        flags.append("clique bound on B\\C fails")
    col = juxtapose(
        [
            singletons(iter_bits(x_mask)),
            singletons(iter_bits(c_mask)),
            recurse(a_rest),
            recurse(b_rest),
        ]
    )
    return LargeUnionResult(col, "peel", flags, [tuple(bits(x)) for x in peeled], tuple(bits(c_mask)))


# --- dense vertices ---------------------------------------------------------

@dataclass
class DenseResult:
    colouring: DegenColouring
    groups: dict[tuple[int, int], tuple[int, ...]]
    flags: list[str] = field(default_factory=list)


def dense_colouring(
    g: Graph, cn: ClassifiedNeighbourhood, vertices: Iterable[int], p: ThresholdProfile, omega: int, recurse: Recurse
) -> DenseResult:
    """Group dense vertices by witness (j, u) and colour each group through ``recurse``."""
    th = cn.thresholds
    groups: dict[tuple[int, int], list[int]] = {}
    for v in sorted(vertices):
        wit = cn.labels[v].dense
        if wit is None:
            raise PreconditionError(f"vertex {v} is not dense")
        groups.setdefault(wit, []).append(v)
    flags = []
    cols = []
    bound = th.part_upper**th.c_const
    for wit, members in sorted(groups.items()):
        col = recurse(mask_of(members))
        cols.append(col)
        if col.nonempty_parts * (col.d + 1) > bound:
            hit = next(iter_bicliques(g, th.part_upper, mask_of(members)), None)
            flags.append(
                f"dense group {wit} needs more than {bound} colours; "
                + ("K_{t,t} found" if hit is not None else "no K_{t,t} found")
            )
    return DenseResult(juxtapose(cols), {w: tuple(m) for w, m in groups.items()}, flags)
