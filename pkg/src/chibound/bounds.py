"""Exact evaluation of the inequalities the polynomial bound is chained from.

Every row is evaluated with Python integers and :class:`fractions.Fraction`;
free quantities (template length k, |L0|, peel size t, ...) are set to their
worst case, which is noted in the row label.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction

_OPS = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "==": operator.eq,
}


@dataclass(frozen=True)
class AuditRow:
    group: str
    label: str
    lhs: int | Fraction
    op: str
    rhs: int | Fraction

    @property
    def holds(self) -> bool:
        return _OPS[self.op](self.lhs, self.rhs)

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "label": self.label,
            "lhs": str(self.lhs),
            "op": self.op,
            "rhs": str(self.rhs),
            "holds": self.holds,
        }


@dataclass
class BoundAudit:
    s: int
    c: int
    omega: int
    d: int
    hypotheses: list[AuditRow] = field(default_factory=list)
    rows: list[AuditRow] = field(default_factory=list)

    @property
    def failures(self) -> list[AuditRow]:
        return [r for r in self.rows if not r.holds]

    @property
    def all_hold(self) -> bool:
        return not self.failures

    def by_group(self) -> dict[str, list[AuditRow]]:
        out: dict[str, list[AuditRow]] = {}
        for r in self.rows:
            out.setdefault(r.group, []).append(r)
        return out

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "c": self.c,
            "omega": self.omega,
            "d": self.d,
            "hypotheses": [h.to_dict() for h in self.hypotheses],
            "rows": [r.to_dict() for r in self.rows],
            "all_hold": self.all_hold,
        }

    def table(self) -> str:
        lines = []
        for r in self.hypotheses:
            lines.append(f"{'hypothesis':16} {'holds' if r.holds else 'FAILS':5}  {r.label}")
        for r in self.rows:
            lines.append(f"{r.group:16} {'holds' if r.holds else 'FAILS':5}  {r.label}")
        return "\n".join(lines)


def pure_colour_count(s: int, omega: int, d: int) -> int:
    w = omega
    return (w - 1) ** d + w ** (s * s + 4 * s + 2) + w ** (s + 3) + 1 + (2 * s + 2) * w ** (s + 1) + 2 * w ** (s + 2)


def neighbourhood_colour_count(s: int, c: int, omega: int, d: int) -> int:
    """The summed part count for V(L) and N(L): template, pendant, dense and pure vertices."""
    w = omega
    return (
        14 * w ** (s + 7)
        + 14 ** (s + 2) * w ** (s * s + 9 * s + 14)
        + (14 * w ** (s + 6)) ** (c + 1) * w
        + pure_colour_count(s, omega, d)
    )


def bound_audit(s: int, c: int, omega: int, d: int | None = None) -> BoundAudit:
    w = omega
    if d is None:
        d = (c + 1) * (s + 7) + 1
    F = Fraction
    m = (s + 1) * w**s
    n = w ** (s + 2)
    audit = BoundAudit(s, c, w, d)
    hyp = audit.hypotheses.append

    hyp(AuditRow("hypothesis", "w >= 200", w, ">=", 200))
    hyp(AuditRow("hypothesis", "w^2 > s+1", w**2, ">", s + 1))
    hyp(AuditRow("hypothesis", "w^3 > w + s/7", F(w**3), ">", w + F(s, 7)))
    hyp(AuditRow("hypothesis", "w >= 15", w, ">=", 15))
    hyp(AuditRow("hypothesis", "w >= 4", w, ">=", 4))
    hyp(AuditRow("hypothesis", "c >= 2s", c, ">=", 2 * s))
    hyp(AuditRow("hypothesis", "d >= (c+1)(s+7)+1", d, ">=", (c + 1) * (s + 7) + 1))

    rows: list[AuditRow] = []

    def row(group: str, label: str, lhs, op: str, rhs) -> None:
        rows.append(AuditRow(group, label, lhs, op, rhs))

    row("transversal", "w^(s+3) (i-1) <= w^(s+4) < w^(s+5), at i-1 = w", w ** (s + 3) * w, "<", w ** (s + 5))

    row("small-parts", "k=0: 7 w^(s+5) |L0| <= 7 w^(s+6) < 28 w^(s+6)", 7 * w ** (s + 6), "<", 28 * w ** (s + 6))
    row(
        "small-parts",
        "k=1: 14 w^(s+6) + 7 w^(s+5) (w-1) + w^(s+5) <= 21 w^(s+6)",
        14 * w ** (s + 6) + 7 * w ** (s + 5) * (w - 1) + w ** (s + 5),
        "<=",
        21 * w ** (s + 6),
    )
    row("small-parts", "21 w^(s+6) < 28 w^(s+6)", 21 * w ** (s + 6), "<", 28 * w ** (s + 6))
    row("small-parts", "5 w^(s+5) - w^(s+4) >= w^(s+5)", 5 * w ** (s + 5) - w ** (s + 4), ">=", w ** (s + 5))
    row(
        "small-parts",
        "absorbing one small part gains: 6 w^(s+5) > (w-1) w^(s+4) + 5 w^(s+5) - 1",
        6 * w ** (s + 5),
        ">",
        (w - 1) * w ** (s + 4) + 5 * w ** (s + 5) - 1,
    )
    row("small-parts", "h w^(s+4) <= w^(s+5), at h = w", w * w ** (s + 4), "<=", w ** (s + 5))
    row("small-parts", "(w^(s+5) + 1)(k-h) > w^(s+5) when k > h", w ** (s + 5) + 1, ">", w ** (s + 5))

    row("part-non-nbrs", "5 w^(s+5) - w^(s+3) >= w^(s+5)", 5 * w ** (s + 5) - w ** (s + 3), ">=", w ** (s + 5))
    row(
        "part-non-nbrs",
        "7 w^(s+5) - 1 - (k-1) w^(s+3) >= 4 w^(s+5), at k = w",
        7 * w ** (s + 5) - 1 - (w - 1) * w ** (s + 3),
        ">=",
        4 * w ** (s + 5),
    )

    row("linked-sets", "2 w^(s+5) - w^(s+3) >= w^(s+5)", 2 * w ** (s + 5) - w ** (s + 3), ">=", w ** (s + 5))
    row(
        "linked-sets",
        "non-edges w^(s+5) * 14 w^(s+1) >= |A| w^s, at |A| = 14 w^(s+6)",
        w ** (s + 5) * 14 * w ** (s + 1),
        ">=",
        14 * w ** (s + 6) * w**s,
    )
    row("linked-sets", "|A|/w^3 <= 14 w^(s+3) < w^(s+5)", 14 * w ** (s + 3), "<", w ** (s + 5))
    row("linked-sets", "w^(s+3) + 14 w^(s+3) < w^(s+5)", w ** (s + 3) + 14 * w ** (s + 3), "<", w ** (s + 5))
    row("linked-sets", "3 w^(s+5) - w^(s+3) >= w^s", 3 * w ** (s + 5) - w ** (s + 3), ">=", w**s)

    row(
        "almost-complete",
        "|M| w^(s+2)/4 = 7 w^(2s+8)/2, at |M| = 14 w^(s+6)",
        F(14 * w ** (s + 6) * w ** (s + 2), 4),
        "==",
        F(7 * w ** (2 * s + 8), 2),
    )
    row("almost-complete", "(7 w^(2s+8)/2) / w^(s+3) <= 7 w^(s+5)/2", F(7 * w ** (2 * s + 8), 2 * w ** (s + 3)), "<=", F(7 * w ** (s + 5), 2))
    row("almost-complete", "5 w^(s+5) - 7 w^(s+5)/2 >= w^(s+5)", F(5 * w ** (s + 5)) - F(7 * w ** (s + 5), 2), ">=", w ** (s + 5))
    row("almost-complete", "|L0| + k/2 <= w < 2w + 1/7, at |L0| + k <= w", F(w), "<", 2 * w + F(1, 7))

    row("trichotomy", "w^(s+2)/14 >= 14 w^(s+1)", F(w ** (s + 2), 14), ">=", 14 * w ** (s + 1))
    row("trichotomy", "w^(s+5) > 2 w^(s+3)", w ** (s + 5), ">", 2 * w ** (s + 3))
    row("trichotomy", "4 w^(s+5) - 2 w^(s+3) >= w^s", 4 * w ** (s + 5) - 2 * w ** (s + 3), ">=", w**s)
    row("trichotomy", "|L_j| >= w^(s+5) > 3 w^(s+3)", w ** (s + 5), ">", 3 * w ** (s + 3))

    row(
        "pendant-count",
        "k^2 (14 w^(s+6))^(s+2) w^s <= 14^(s+2) w^(s^2+9s+14), at k = w",
        w * w * (14 * w ** (s + 6)) ** (s + 2) * w**s,
        "<=",
        14 ** (s + 2) * w ** (s * s + 9 * s + 14),
    )

    row(
        "dense",
        "(w^(s+2)/14) 14 w^(s+6) / w^(s+3) <= w^(s+5)",
        F(w ** (s + 2) * 14 * w ** (s + 6), 14 * w ** (s + 3)),
        "<=",
        w ** (s + 5),
    )
    row(
        "dense",
        "5 w^(s+5) - w^(s+3) - 2 w^(s+5) >= w^(s+5)",
        5 * w ** (s + 5) - w ** (s + 3) - 2 * w ** (s + 5),
        ">=",
        w ** (s + 5),
    )
    worst = max(
        (w ** (s + 3) + 2 * w ** (s + 5)) * (k - 1) + 7 * w ** (s + 5) * (w - k) for k in (1, w)
    )
    row(
        "dense",
        "|L_k| + (w^(s+3) + 2 w^(s+5))(k-1) + 7 w^(s+5) |L0| <= 21 w^(s+6), worst k with |L0| + k <= w",
        14 * w ** (s + 6) + worst,
        "<=",
        21 * w ** (s + 6),
    )
    row("dense", "21 w^(s+6) < 28 w^(s+6)", 21 * w ** (s + 6), "<", 28 * w ** (s + 6))
    row(
        "dense",
        "k (14 w^(s+6))^(c+1) <= (14 w^(s+6))^(c+1) w, at k = w",
        w * (14 * w ** (s + 6)) ** (c + 1),
        "<=",
        (14 * w ** (s + 6)) ** (c + 1) * w,
    )

    row("incomparable", "w^(s+5) >= w^(s+3) + w^s", w ** (s + 5), ">=", w ** (s + 3) + w**s)
    row("incomparable", "|I| w^s <= w^(s+1), at |I| = w", w * w**s, "<=", w ** (s + 1))

    row(
        "small-sets",
        "2 w (m + w^(s+1)) = (2s+2) w^(s+1) + 2 w^(s+2), at m = (s+1) w^s",
        2 * w * (m + w ** (s + 1)),
        "==",
        (2 * s + 2) * w ** (s + 1) + 2 * w ** (s + 2),
    )

    row("nested-large", "s w^(s+2)/7 < w^(s+5)", F(s * w ** (s + 2), 7), "<", w ** (s + 5))
    row("nested-large", "w^(s+3) + s w^(s+2)/7 < w^(s+5)", w ** (s + 3) + F(s * w ** (s + 2), 7), "<", w ** (s + 5))
    row("nested-large", "m >= w^s", m, ">=", w**s)
    row("nested-large", "(m - w^s)/s >= w^s", F(m - w**s, s), ">=", w**s)

    row("large-sets", "(w^(s+2)/7) w < w^(s+5)", F(w ** (s + 2) * w, 7), "<", w ** (s + 5))
    row("large-sets", "n > k w^s |Y|, at k = w, |Y| = w-1", n, ">", w * w**s * (w - 1))
    row("large-sets", "(k w^s)(n^s w^s) k <= n^s w^(2s+2), at k = w", (w * w**s) * (n**s * w**s) * w, "<=", n**s * w ** (2 * s + 2))
    worst_t = max(t**d + (w - t) ** d for t in range(1, w)) if w >= 2 else 0
    row("large-sets", "t^d + (w-t)^d <= (w-1)^d + 1 for 1 <= t <= w-1", worst_t, "<=", (w - 1) ** d + 1)
    row(
        "large-sets",
        "n w + n^s w^(2s+2) = w^(s+3) + w^(s^2+4s+2)",
        n * w + n**s * w ** (2 * s + 2),
        "==",
        w ** (s + 3) + w ** (s * s + 4 * s + 2),
    )

    row("neighbourhood", "|V(L)| <= 14 w^(s+6) w = 14 w^(s+7)", 14 * w ** (s + 6) * w, "<=", 14 * w ** (s + 7))
    row(
        "neighbourhood",
        "K (summed part count) <= (w-1)^d + w^((c+1)(s+7))",
        neighbourhood_colour_count(s, c, w, d),
        "<=",
        (w - 1) ** d + w ** ((c + 1) * (s + 7)),
    )

    row("out-nbrs", "w + 14 w^(s+6) + w^s < w^(s+7)", w + 14 * w ** (s + 6) + w**s, "<", w ** (s + 7))
    row("out-nbrs", "w^(s+5) >= w^(s+2)/4", w ** (s + 5), ">=", F(w ** (s + 2), 4))
    row("out-nbrs", "w^(s+2)/4 >= w^s", F(w ** (s + 2), 4), ">=", w**s)
    row(
        "out-nbrs",
        "s w^(s+3) + w^s + w^(s+3) < w^(s+5)",
        s * w ** (s + 3) + w**s + w ** (s + 3),
        "<",
        w ** (s + 5),
    )

    row("restricted", "template value 28 w^(s+6) exceeds w (added clique never used)", 28 * w ** (s + 6), ">", w)

    row("recursion", "d >= (c+1)(s+7) + 1", d, ">=", (c + 1) * (s + 7) + 1)
    row("recursion", "(w-1)^d + w^((c+1)(s+7)) <= w^d", (w - 1) ** d + w ** ((c + 1) * (s + 7)), "<=", w**d)
    row("recursion", "(14 w^(s+6))^c <= w^d", (14 * w ** (s + 6)) ** c, "<=", w**d)
    row("recursion", "(w-1)^(s+8) <= w^(s+7) (w-1)", (w - 1) ** (s + 8), "<=", w ** (s + 7) * (w - 1))
    row("recursion", "w^(s+7) (w-1) + w^(s+7) = w^(s+8)", w ** (s + 7) * (w - 1) + w ** (s + 7), "==", w ** (s + 8))

    audit.rows = rows
    return audit
