"""Template peeling: colour an H_s-free graph layer by layer, recursing on smaller clique number.

Each round finds a high-value template inside the vertices still present,
removes its layer Y = (V(L) ∪ N(L)) minus Z(L), and colours that layer. The
layers are then chained, earliest first, with d' equal to the largest number
of neighbours any layer vertex has in later layers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ._bits import bits, iter_bits, mask_of
from .classify import (
    ClassifiedNeighbourhood,
    classify,
    dense_colouring,
    large_union_colouring,
    small_union_colouring,
)
from .degen import (
    DegenColouring,
    chain,
    degeneracy_colouring,
    forward_degrees,
    juxtapose,
    singletons,
    verify_kd,
)
from .errors import InvariantViolation, PreconditionError
from .graph import Graph, induced_subgraph_mask
from .oracles import clique_number, clique_number_mask, require_hfree
from .profiles import ThresholdProfile
from .template import Template, find_max_template, template_value, transversal_clique, validate_template

HFREE_CHECK_LIMIT = 200


def _non_nbr_count(g: Graph, v: int, mask: int) -> int:
    return (mask & ~g.adj[v]).bit_count()


def z_y_sets(g: Graph, t: Template, a: Iterable[int] | int, p: ThresholdProfile, omega: int) -> tuple[int, int, int]:
    """Return the masks ``(Z_A, N_A, Y_A)`` of a template relative to the vertex set ``a``."""
    a_mask = a if isinstance(a, int) else g.mask(a)
    vt = t.vertex_mask
    if vt & ~a_mask:
        raise PreconditionError("template vertices are not contained in the given set", bits(vt & ~a_mask))
    th = p.at(omega)
    parts = t.part_masks
    union = t.union_mask
    z = t.l0_mask
    n = 0
    for v in iter_bits(a_mask & ~vt):
        if g.adj[v] & union:
            n |= 1 << v
        if all(_non_nbr_count(g, v, q) <= th.z_cap for q in parts):
            z |= 1 << v
    y = (vt | n) & ~z
    return z, n, y


@dataclass
class PeelStep:
    template: Template
    value: int
    y: int
    z: int
    n: int
    colouring: DegenColouring
    labels: dict[str, int] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "template": self.template.to_dict(),
            "value": self.value,
            "Y": bits(self.y),
            "Z": bits(self.z),
            "N": bits(self.n),
            "labels": self.labels,
            "colouring": self.colouring.to_dict(),
            "flags": list(self.flags),
        }


@dataclass
class ForwardAudit:
    counts: dict[int, int]
    cap: int
    failures: list[tuple[int, int, int]]  # (step, vertex, forward neighbours)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def max_count(self) -> int:
        return max(self.counts.values(), default=0)

    def to_dict(self) -> dict:
        return {
            "cap": self.cap,
            "max": self.max_count,
            "failures": [{"step": i, "vertex": v, "count": c} for i, v, c in self.failures],
        }


@dataclass
class PeelTrace:
    n: int
    omega: int
    profile: str
    steps: list[PeelStep] = field(default_factory=list)
    residual: int = 0
    residual_colouring: DegenColouring | None = None
    audit: ForwardAudit | None = None
    moved_to_singletons: tuple[int, ...] = ()
    d_prime: int = 0
    final: DegenColouring | None = None
    base_case: bool = False
    subcalls: int = 0
    max_depth: int = 0
    flags: list[str] = field(default_factory=list)

    @property
    def blocks(self) -> list[int]:
        return [st.y for st in self.steps] + [self.residual]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "omega": self.omega,
            "profile": self.profile,
            "base_case": self.base_case,
            "steps": [st.to_dict() for st in self.steps],
            "residual": bits(self.residual),
            "residual_colouring": None if self.residual_colouring is None else self.residual_colouring.to_dict(),
            "forward_audit": None if self.audit is None else self.audit.to_dict(),
            "moved_to_singletons": list(self.moved_to_singletons),
            "d_prime": self.d_prime,
            "subcalls": self.subcalls,
            "max_depth": self.max_depth,
            "flags": list(self.flags),
            "final": None if self.final is None else self.final.to_dict(),
        }


def audit_forward_degrees(g: Graph, trace: PeelTrace, p: ThresholdProfile, omega: int) -> ForwardAudit:
    """Count, for every layer vertex, its neighbours in the vertices left after its layer."""
    cap = p.at(omega).out_nbr_cap
    blocks = trace.blocks
    per_block = forward_degrees(g, blocks)
    counts: dict[int, int] = {}
    failures = []
    for i, block in enumerate(per_block[:-1]):
        for v, c in block.items():
            counts[v] = c
            if c > cap:
                failures.append((i, v, c))
    return ForwardAudit(counts, cap, failures)


class _Colourer:
    def __init__(self, p: ThresholdProfile, top_omega: int, depth: int = 0):
        self.p = p
        self.top_omega = top_omega
        self.depth = depth
        self.subcalls = 0
        self.max_depth = depth

    def recurse_factory(self, g: Graph, omega: int, flags: list[str]):
        def recurse(mask: int) -> DegenColouring:
            if not mask:
                return DegenColouring(0, 0, ())
            sub_omega = clique_number_mask(g, mask)
            if sub_omega >= omega:
                flags.append(f"recursion on {mask.bit_count()} vertices did not lower omega; degeneracy fallback")
                return degeneracy_colouring(g, mask)
            sub, ids = induced_subgraph_mask(g, mask)
            child = _Colourer(self.p, self.top_omega, self.depth + 1)
            col, trace = child.run(sub, sub_omega)
            self.subcalls += 1 + trace.subcalls
            self.max_depth = max(self.max_depth, trace.max_depth)
            flags.extend(f"sub: {f}" for f in trace.flags)
            return col.relabelled(ids)

        return recurse

    def colour_layer(self, g: Graph, t: Template, a_mask: int, z: int, n: int, omega: int) -> PeelStep:
        p = self.p
        flags: list[str] = []
        check = validate_template(g, t, p, omega)
        if not check:
            raise InvariantViolation(f"search returned an invalid template: {check.clause} {check.detail}", t)
        if t.k + len(t.l0) > omega:
            raise InvariantViolation("template length plus |L0| exceeds omega", t)
        transversal_clique(g, t, omega)
        recurse = self.recurse_factory(g, omega, flags)
        cn: ClassifiedNeighbourhood = classify(g, t, p, omega, universe=bits(a_mask)).restricted(n & ~z)
        pieces = [singletons(iter_bits(t.union_mask))]

        pure = mask_of(cn.with_label("pure"))
        small = small_union_colouring(g, cn, p, omega)
        if not small.ok:
            flags.append(f"small-set orientation exceeds cap at {len(small.violations)} places")
        pieces.append(small.colouring)
        large = large_union_colouring(g, cn, p, omega, recurse)
        flags.extend(large.flags)
        pieces.append(large.colouring)

        dense = [v for v in cn.with_label("dense") if not pure >> v & 1]
        if dense:
            res = dense_colouring(g, cn, dense, p, omega, recurse)
            flags.extend(res.flags)
            pieces.append(res.colouring)
        labelled = pure | mask_of(dense)
        pendant = [v for v in cn.with_label("pendant") if not labelled >> v & 1]
        pieces.append(singletons(pendant))
        unlabelled = cn.unlabelled
        if unlabelled:
            flags.append(f"{len(unlabelled)} unlabelled neighbours; degeneracy fallback")
            pieces.append(degeneracy_colouring(g, mask_of(unlabelled)))

        col = juxtapose(pieces)
        y = (t.vertex_mask | n) & ~z
        if mask_of(col.vertices) != y:
            raise InvariantViolation("layer colouring does not cover the layer exactly", sorted(col.vertices ^ set(bits(y))))
        labels = {
            "pure": pure.bit_count(),
            "dense": len(dense),
            "pendant": len(pendant),
            "unlabelled": len(unlabelled),
        }
        return PeelStep(t, template_value(t, p, omega), y, z, n, col, labels, flags)

    def run(self, g: Graph, omega: int) -> tuple[DegenColouring, PeelTrace]:
        p = self.p
        if self.depth > self.top_omega:
            raise InvariantViolation(f"recursion depth {self.depth} exceeds omega {self.top_omega}")
        th = p.at(omega)
        trace = PeelTrace(g.n, omega, p.name)
        if omega <= th.base_omega:
            col = degeneracy_colouring(g, g.full_mask)
            trace.base_case = True
            trace.residual = g.full_mask
            trace.residual_colouring = col
            trace.final = col
            return col, trace

        remaining = g.full_mask
        while remaining:
            t = find_max_template(g, bits(remaining), p, omega)
            if t is None:
                break
            z, n, y = z_y_sets(g, t, remaining, p, omega)
            if not y:
                trace.flags.append("template layer is empty; stopping")
                break
            step = self.colour_layer(g, t, remaining, z, n, omega)
            trace.steps.append(step)
            trace.flags.extend(step.flags)
            remaining &= ~y
        trace.residual = remaining
        trace.residual_colouring = degeneracy_colouring(g, remaining)
        trace.audit = audit_forward_degrees(g, trace, p, omega)

        moved = mask_of(v for _, v, _ in trace.audit.failures)
        if moved:
            trace.flags.append(f"{moved.bit_count()} vertices over the forward-degree cap moved to singleton parts")
        keep = set(iter_bits(g.full_mask & ~moved))
        pieces = [st.colouring.restricted(keep) for st in trace.steps] + [trace.residual_colouring]
        blocks = [st.y & ~moved for st in trace.steps] + [remaining]
        fwd = forward_degrees(g, blocks)
        d_prime = max((c for block in fwd[:-1] for c in block.values()), default=0)
        k = max(pc.k for pc in pieces)
        chained = chain(g, [pc.padded(k) for pc in pieces], d_prime)
        col = juxtapose([chained, singletons(iter_bits(moved))])
        check = verify_kd(g, col)
        if not check:
            raise InvariantViolation(f"assembled colouring fails its certificate: {check.reason} at {check.vertex}", check)
        trace.moved_to_singletons = tuple(bits(moved))
        trace.d_prime = d_prime
        trace.final = col
        trace.subcalls = self.subcalls
        trace.max_depth = self.max_depth
        return col, trace


def colour_graph(
    g: Graph, p: ThresholdProfile, attest_hfree: bool = False, hfree_limit: int = HFREE_CHECK_LIMIT
) -> tuple[DegenColouring, PeelTrace]:
    """Certified (k, d)-colouring of an H_s-free graph plus the peeling trace.

    The H_s-free precondition is checked by the oracle when ``g.n <= hfree_limit``
    and ``attest_hfree`` is false; otherwise the caller's word is taken.
    """
    if not attest_hfree and g.n <= hfree_limit:
        require_hfree(g, p.s)
    omega, _ = clique_number(g)
    return _Colourer(p, omega).run(g, omega)


def colours_used(proper: dict[int, int]) -> int:
    return len(set(proper.values()))


__all__ = [
    "ForwardAudit",
    "PeelStep",
    "PeelTrace",
    "audit_forward_degrees",
    "colour_graph",
    "colours_used",
    "z_y_sets",
]
