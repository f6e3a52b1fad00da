"""Threshold profiles: every numeric cap used by templates and classification.

A profile is either the asymptotic formula family (functions of omega) or a
fixed set of small constants for desk-scale runs. :meth:`ThresholdProfile.at`
freezes one profile at a concrete clique number. Fractional caps are kept as
:class:`fractions.Fraction` so comparisons stay exact.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction

FIELDS = (
    "part_lower",
    "part_upper",
    "cross_cap",
    "l0_weight",
    "part_bonus",
    "min_value",
    "dense_cap",
    "pure_cap",
    "z_cap",
    "small_cutoff",
    "peel_count",
    "out_nbr_cap",
    "c_const",
    "d_const",
    "base_omega",
)

_CAMEL = {
    "partLower": "part_lower",
    "partUpper": "part_upper",
    "crossCap": "cross_cap",
    "l0Weight": "l0_weight",
    "partBonus": "part_bonus",
    "minValue": "min_value",
    "denseCap": "dense_cap",
    "pureCap": "pure_cap",
    "zCap": "z_cap",
    "smallCutoff": "small_cutoff",
    "peelCount": "peel_count",
    "outNbrCap": "out_nbr_cap",
    "cConst": "c_const",
    "dConst": "d_const",
    "baseOmega": "base_omega",
}


@dataclass(frozen=True)
class Thresholds:
    """A profile evaluated at one value of omega."""

    s: int
    omega: int
    part_lower: int
    part_upper: int
    cross_cap: int
    l0_weight: int
    part_bonus: int
    min_value: int
    dense_cap: Fraction
    pure_cap: Fraction
    z_cap: Fraction
    small_cutoff: int
    peel_count: int
    out_nbr_cap: int
    c_const: int
    d_const: int
    base_omega: int

    @property
    def ramsey_cap(self) -> int:
        # omega^s bounds any set with no stable s-subset at every scale
        return self.omega**self.s

    def problems(self) -> list[str]:
        out = []
        if self.part_lower > self.part_upper:
            out.append("part_lower > part_upper")
        if self.cross_cap * max(self.omega - 1, 0) >= self.part_lower:
            out.append("cross_cap * (omega - 1) >= part_lower")
        for name in FIELDS:
            if getattr(self, name) < 0:
                out.append(f"{name} < 0")
        return out


@dataclass(frozen=True)
class ThresholdProfile:
    name: str
    s: int
    kind: str = "constant"
    c: int = 2
    constants: dict = field(default_factory=dict, compare=False, hash=False)

    def at(self, omega: int) -> Thresholds:
        s = self.s
        if self.kind == "paper":
            w = omega
            return Thresholds(
                s=s,
                omega=w,
                part_lower=w ** (s + 5),
                part_upper=14 * w ** (s + 6),
                cross_cap=w ** (s + 3),
                l0_weight=7 * w ** (s + 5),
                part_bonus=w ** (s + 5),
                min_value=28 * w ** (s + 6),
                dense_cap=Fraction(w ** (s + 2), 14),
                pure_cap=Fraction(w ** (s + 2), 7),
                z_cap=Fraction(w ** (s + 2), 4),
                small_cutoff=(s + 1) * w**s,
                peel_count=w ** (s + 2),
                out_nbr_cap=w ** (s + 7),
                c_const=self.c,
                d_const=(self.c + 1) * (s + 7) + 1,
                base_omega=max(200, math.isqrt(s + 1)),
            )
        if self.kind != "constant":
            raise ValueError(f"unknown profile kind {self.kind!r}")
        values = dict(self.constants)
        for frac in ("dense_cap", "pure_cap", "z_cap"):
            values[frac] = Fraction(values[frac])
        return Thresholds(s=s, omega=omega, **values)

    def with_constants(self, **overrides) -> ThresholdProfile:
        if self.kind != "constant":
            raise ValueError("only constant profiles can be overridden field by field")
        merged = dict(self.constants)
        merged.update(overrides)
        return replace(self, constants=merged)

    def to_dict(self) -> dict:
        if self.kind == "paper":
            return {"kind": "paper", "s": self.s, "c": self.c}
        out = {"kind": "constant", "s": self.s}
        for key, value in self.constants.items():
            out[key] = str(value) if isinstance(value, Fraction) else value
        return out

    @classmethod
    def from_dict(cls, name: str, data: dict) -> ThresholdProfile:
        kind = data.get("kind", "constant")
        s = int(data["s"])
        if kind == "paper":
            return paper_profile(s, int(data.get("c", 2)), name=name)
        values = {}
        for key, value in data.items():
            if key in ("kind", "s"):
                continue
            key = _CAMEL.get(key, key)
            if key not in FIELDS:
                raise ValueError(f"unknown profile field {key!r}")
            values[key] = value
        base = dict(DESK1.constants)
        base.update(values)
        base.setdefault("d_const", (int(base["c_const"]) + 1) * (s + 7) + 1)
        return cls(name=name, s=s, kind="constant", c=int(base["c_const"]), constants=base)


def paper_profile(s: int, c: int, name: str | None = None) -> ThresholdProfile:
    return ThresholdProfile(name=name or f"PAPER(s={s},c={c})", s=s, kind="paper", c=c)


def desk_profile(name: str, s: int, **values) -> ThresholdProfile:
    base = dict(_DESK1_VALUES)
    base.update(values)
    base["d_const"] = values.get("d_const", (int(base["c_const"]) + 1) * (s + 7) + 1)
    return ThresholdProfile(name=name, s=s, kind="constant", c=int(base["c_const"]), constants=base)


_DESK1_VALUES = {
    "part_lower": 2,
    "part_upper": 6,
    "cross_cap": 0,
    "l0_weight": 3,
    "part_bonus": 2,
    "min_value": 8,
    "dense_cap": 1,
    "pure_cap": 1,
    "z_cap": 1,
    "small_cutoff": 2,
    "peel_count": 2,
    "out_nbr_cap": 4,
    "c_const": 2,
    "base_omega": 2,
}

DESK1 = desk_profile("DESK1", 1)
DESK2 = desk_profile("DESK2", 2)
PAPER1 = paper_profile(1, 2, name="PAPER")

BUILTIN = {p.name: p for p in (DESK1, DESK2, PAPER1)}


def load_profiles(path: str | os.PathLike[str]) -> dict[str, ThresholdProfile]:
    """Read ``{"profiles": {name: {...}}}`` (or a bare name-to-profile map)."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    table = data.get("profiles", data)
    return {name: ThresholdProfile.from_dict(name, body) for name, body in table.items()}


def resolve_profile(name: str, path: str | os.PathLike[str] | None = None) -> ThresholdProfile:
    if path is not None:
        table = load_profiles(path)
        if name in table:
            return table[name]
    if name in BUILTIN:
        return BUILTIN[name]
    raise KeyError(f"unknown profile {name!r}")


def thresholds_dict(t: Thresholds) -> dict:
    return {f.name: (str(v) if isinstance(v := getattr(t, f.name), Fraction) else v) for f in fields(t)}


__all__ = [
    "BUILTIN",
    "DESK1",
    "DESK2",
    "PAPER1",
    "ThresholdProfile",
    "Thresholds",
    "desk_profile",
    "load_profiles",
    "paper_profile",
    "resolve_profile",
    "thresholds_dict",
]
