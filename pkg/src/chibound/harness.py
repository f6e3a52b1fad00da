"""Instance generators and the experiment runner behind ``chibound bench``.

Config format (JSON)::

    {
      "seed": 7,                      # default seed for instances without one
      "profiles": "profiles.json",    # optional extra profile file
      "chi_limit": 18,                # exact chromatic number up to this n
      "workers": 1,
      "trace": false,                 # embed full traces in report.json
      "timing": false,                # fill the ms column (breaks bitwise reproducibility)
      "instances": [
        {"kind": "cotree", "params": {"n": 40, "s": 1}, "seed": 3, "count": 5, "profile": "DESK1"}
      ]
    }

``count`` expands one entry into instances with seeds ``seed, seed+1, ...``.
All randomness comes from :class:`random.Random` (Mersenne Twister) seeded per instance.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .degen import to_proper
from .errors import DoubleStarFound, InvariantViolation, PreconditionError
from .graph import Graph, build_graph, complete_multipartite, disjoint_union, empty_graph, join
from .oracles import chromatic_number_exact, find_induced_double_star
from .pipeline import colour_graph
from .profiles import ThresholdProfile, resolve_profile

RNG_NAME = "python-mt19937"
CSV_HEADER = ["n", "m", "s", "profile", "omega", "chi_exact", "k", "d", "colours", "ms", "flags"]
GENERATOR_KINDS = ("gnp", "multipartite-blowup", "hfree-rejection", "cotree")


class GenerationError(RuntimeError):
    pass


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    if n < 0 or not 0.0 <= p <= 1.0:
        raise ValueError("gnp needs n >= 0 and 0 <= p <= 1")
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def hfree_rejection(n: int, p: float, s: int, rng: random.Random, max_tries: int = 1000) -> Graph:
    for _ in range(max_tries):
        g = gnp(n, p, rng)
        if find_induced_double_star(g, s) is None:
            return g
    raise GenerationError(f"no H_{s}-free G({n}, {p}) sample in {max_tries} tries")


def cotree(n: int, s: int, rng: random.Random, join_p: float = 0.6, atom_max: int = 5, atom_p: float = 0.5) -> Graph:
    """Random H_s-free graph built by joins and disjoint unions of small H_s-free atoms.

    Both operations preserve H_s-freeness: H_s is connected and so is its
    complement, so an induced copy cannot straddle either operation.
    """
    if n < 1:
        return empty_graph(max(n, 0))
    if n <= atom_max and (n == 1 or rng.random() < 0.5):
        return hfree_rejection(n, atom_p, s, rng, max_tries=200) if n > 1 else empty_graph(1)
    k = rng.randint(1, n - 1)
    a = cotree(k, s, rng, join_p, atom_max, atom_p)
    b = cotree(n - k, s, rng, join_p, atom_max, atom_p)
    return join(a, b) if rng.random() < join_p else disjoint_union(a, b)


def generate(kind: str, params: dict, seed: int) -> Graph:
    rng = random.Random(seed)
    if kind == "gnp":
        return gnp(int(params["n"]), float(params["p"]), rng)
    if kind == "multipartite-blowup":
        return complete_multipartite([int(x) for x in params["sizes"]])
    if kind == "hfree-rejection":
        return hfree_rejection(
            int(params["n"]), float(params["p"]), int(params["s"]), rng, int(params.get("max_tries", 1000))
        )
    if kind == "cotree":
        return cotree(
            int(params["n"]),
            int(params.get("s", 1)),
            rng,
            float(params.get("join_p", 0.6)),
            int(params.get("atom_max", 5)),
            float(params.get("atom_p", 0.5)),
        )
    raise ValueError(f"unknown generator kind {kind!r}; expected one of {GENERATOR_KINDS}")


@dataclass
class InstanceSpec:
    index: int
    kind: str
    params: dict
    seed: int
    profile: str


@dataclass
class ReportRow:
    n: int
    m: int
    s: int
    profile: str
    omega: int | None = None
    chi_exact: int | None = None
    k: int | None = None
    d: int | None = None
    colours: int | None = None
    ms: int | None = None
    flags: list[str] = field(default_factory=list)

    def csv_fields(self) -> list[str]:
        vals = [self.n, self.m, self.s, self.profile, self.omega, self.chi_exact, self.k, self.d, self.colours, self.ms]
        return ["" if v is None else str(v) for v in vals] + [";".join(self.flags)]

    def problems(self) -> list[str]:
        out = []
        if self.chi_exact is not None and self.colours is not None and self.colours < self.chi_exact:
            out.append("colours below exact chi")
        if self.colours is not None and self.k is not None and self.colours > self.k * (self.d + 1):
            out.append("colours above k(d+1)")
        return out


@dataclass
class ExperimentReport:
    seed: int | None
    rows: list[ReportRow]
    traces: list[dict | None] = field(default_factory=list)
    rng: str = RNG_NAME

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow(r.csv_fields())
        return buf.getvalue()

    def to_dict(self, config: dict | None = None) -> dict:
        out = {"rng": self.rng, "seed": self.seed, "rows": [asdict(r) for r in self.rows]}
        if config is not None:
            out["config"] = config
        if any(t is not None for t in self.traces):
            out["traces"] = self.traces
        return out


def _flag_tags(flags: list[str]) -> list[str]:
    tags = []
    table = (
        ("forward-degree cap", "forward-cap"),
        ("unlabelled", "unlabelled"),
        ("dense group", "dense-bound"),
        ("did not lower omega", "recursion-fallback"),
        ("clique bound", "clique-bound"),
        ("small-set orientation", "small-orientation"),
    )
    for needle, tag in table:
        if any(needle in f for f in flags):
            tags.append(tag)
    return tags


def _run_one(args: tuple[InstanceSpec, ThresholdProfile, int, bool, bool]) -> tuple[ReportRow, dict | None]:
    spec, profile, chi_limit, want_trace, timing = args
    g = generate(spec.kind, spec.params, spec.seed)
    row = ReportRow(g.n, g.m, profile.s, profile.name)
    start = time.perf_counter()
    try:
        col, trace = colour_graph(g, profile)
    except DoubleStarFound:
        row.flags.append("hfree-violation")
        return row, None
    except (InvariantViolation, PreconditionError) as exc:
        row.flags.append(f"error:{type(exc).__name__}")
        return row, None
    proper = to_proper(g, col)
    if timing:
        row.ms = round((time.perf_counter() - start) * 1000)
    row.omega = trace.omega
    row.k = col.k
    row.d = col.d
    row.colours = len(set(proper.values()))
    if g.n <= chi_limit:
        row.chi_exact, _ = chromatic_number_exact(g, limit=chi_limit)
    row.flags.extend(_flag_tags(trace.flags))
    row.flags.extend(row.problems())
    return row, (trace.to_dict() if want_trace else None)


def expand_instances(config: dict) -> list[InstanceSpec]:
    default_seed = int(config.get("seed", 0))
    out: list[InstanceSpec] = []
    for entry in config.get("instances", []):
        base = int(entry.get("seed", default_seed))
        for j in range(int(entry.get("count", 1))):
            out.append(
                InstanceSpec(len(out), entry["kind"], dict(entry.get("params", {})), base + j, entry.get("profile", "DESK1"))
            )
    return out


def run_experiment(config: dict, out_dir: str | os.PathLike[str] | None = None, base_dir: str | os.PathLike[str] = ".") -> ExperimentReport:
    profiles_path = config.get("profiles")
    if profiles_path is not None:
        profiles_path = Path(base_dir) / profiles_path
    specs = expand_instances(config)
    resolved = {name: resolve_profile(name, profiles_path) for name in {s.profile for s in specs}}
    chi_limit = int(config.get("chi_limit", 18))
    want_trace = bool(config.get("trace", False))
    timing = bool(config.get("timing", False))
    jobs = [(s, resolved[s.profile], chi_limit, want_trace, timing) for s in specs]
    workers = int(config.get("workers", 1))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    report = ExperimentReport(config.get("seed"), [r for r, _ in results], [t for _, t in results])
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.csv").write_text(report.csv_text(), encoding="utf-8")
        with open(out / "report.json", "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(config), fh, indent=1, sort_keys=True)
            fh.write("\n")
    return report


def load_config(path: str | os.PathLike[str]) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


__all__ = [
    "CSV_HEADER",
    "ExperimentReport",
    "GENERATOR_KINDS",
    "GenerationError",
    "InstanceSpec",
    "RNG_NAME",
    "ReportRow",
    "cotree",
    "expand_instances",
    "generate",
    "gnp",
    "hfree_rejection",
    "load_config",
    "run_experiment",
]
