"""Acceptance criteria, one test each. Every test prints a single PASS/FAIL line."""

import random
import time

import pytest

from chibound.bounds import bound_audit
from chibound.degen import chain, is_proper, to_proper, verify_kd
from chibound.graph import Graph, build_graph
from chibound.harness import generate, run_experiment
from chibound.oracles import (
    check_ramsey_bound,
    chromatic_number_exact,
    clique_number,
    find_biclique_subgraph,
    find_induced_double_star,
    find_stable_set,
)
from chibound.pipeline import colour_graph
from chibound.profiles import DESK1, DESK2
from chibound.template import Template, improve_template, local_search, template_value, transversal_clique, validate_template

from conftest import planted_template, random_chain_instance, random_graph
import naive

nx = pytest.importorskip("networkx")


def report(capsys, name: str, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


def atlas(max_n: int) -> list[Graph]:
    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() <= max_n:
            out.append(build_graph(h.number_of_nodes(), list(h.edges())))
    return out


def oracle_mismatches(g: Graph) -> list[str]:
    bad = []
    size, witness = clique_number(g) if g.n else (0, frozenset())
    if size != naive.clique_number(g) or len(witness) != size or not g.is_clique(witness):
        bad.append("clique_number")
    chi, col = chromatic_number_exact(g)
    if chi != naive.chromatic_number(g) or any(col[u] == col[v] for u, v in g.edges()) or len(set(col)) != chi:
        bad.append("chromatic_number_exact")
    for size in range(g.n + 2):
        found = find_stable_set(g, range(g.n), size)
        if (found is not None) != naive.has_stable(g, range(g.n), size) or (
            found is not None and (len(found) != size or not g.is_stable(found))
        ):
            bad.append(f"find_stable_set({size})")
    for s in (1, 2):
        w = find_induced_double_star(g, s)
        if (w is not None) != naive.has_induced_double_star(g, s) or (w is not None and not w.verify(g)):
            bad.append(f"find_induced_double_star({s})")
    for t in (1, 2, 3):
        hit = find_biclique_subgraph(g, t)
        ok = (hit is not None) == naive.has_biclique(g, t)
        if hit is not None:
            a, b = hit
            ok = ok and len(a) == len(b) == t and not a & b and all(g.has_edge(u, v) for u in a for v in b)
        if not ok:
            bad.append(f"find_biclique_subgraph({t})")
    return bad


def test_oracle_equivalence(capsys):
    start = time.perf_counter()
    rng = random.Random(2024)
    corpus = atlas(7)
    n_atlas = len(corpus)
    # labelled samples on 7 vertices on top of the isomorphism classes
    corpus += [random_graph(rng, 7, rng.random()) for _ in range(1000)]
    corpus += [random_graph(rng, rng.randint(1, 12), rng.random()) for _ in range(200)]
    mismatches = []
    for g in corpus:
        for name in oracle_mismatches(g):
            mismatches.append((name, g.n, g.edges()))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed <= 300
    report(
        capsys,
        "oracle equivalence",
        ok,
        f"{len(corpus)} graphs ({n_atlas} iso classes n<=7, 1000 labelled n=7, 200 random n<=12), "
        f"{len(mismatches)} mismatches, {elapsed:.1f}s (limit 300s)",
    )
    assert not mismatches, mismatches[:5]
    assert elapsed <= 300


def test_ramsey_bound(capsys):
    start = time.perf_counter()
    small = atlas(7)
    corpus = list(small)
    # every 8-vertex graph is a 7-vertex graph plus one vertex with some neighbourhood
    for h in small:
        if h.n != 7:
            continue
        for nbhd in range(128):
            corpus.append(build_graph(8, h.edges() + [(v, 7) for v in range(7) if nbhd >> v & 1]))
    applicable = 0
    violations = []
    for g in corpus:
        for s in (2, 3):
            r = check_ramsey_bound(g, s)
            if r.applicable:
                applicable += 1
                if not r.holds:
                    violations.append((s, g.edges()))
    elapsed = time.perf_counter() - start
    report(
        capsys,
        "Ramsey bound",
        not violations,
        f"{len(corpus)} graphs (all n<=8 up to isomorphism), {applicable} applicable (graph, s) pairs, "
        f"{len(violations)} violations, {elapsed:.1f}s",
    )
    assert not violations


def test_chaining(capsys):
    rng = random.Random(7)
    failures = 0
    for _ in range(500):
        g, pieces, d_prime = random_chain_instance(rng)
        out = chain(g, pieces, d_prime)
        d = max(p.d for p in pieces)
        if not (out.k == pieces[0].k and out.d == d + d_prime and verify_kd(g, out, d + d_prime)):
            failures += 1
    report(capsys, "chaining", failures == 0, f"500 instances, {failures} failures of verify_kd(k, d+d')")
    assert failures == 0


def test_transversal_clique(capsys):
    rng = random.Random(31)
    loose = DESK1.with_constants(cross_cap=1, part_lower=4, part_upper=8)
    failures = []
    for i in range(200):
        profile = DESK1 if i % 2 else loose
        g, t = planted_template(rng, profile.at(8), k=rng.randint(1, 4))
        omega = clique_number(g)[0]
        if not validate_template(g, t, profile, omega):
            failures.append((i, "invalid template generated"))
            continue
        x = transversal_clique(g, t, omega)
        if not (len(x) == t.k and g.is_clique(x) and all(len(x & p) == 1 for p in t.parts) and t.k + len(t.l0) <= omega):
            failures.append((i, sorted(x)))
    report(capsys, "transversal clique", not failures, f"200 valid templates, {len(failures)} failures")
    assert not failures


def _move_instances():
    from chibound.graph import complete_multipartite

    absorb_profile = DESK1.with_constants(l0_weight=6)
    promote_g = build_graph(9, complete_multipartite([3, 6]).edges() + [(0, 1), (0, 2)])
    split_g = build_graph(6, [(0, 2), (0, 3), (1, 2), (1, 3)] + [(a, b) for a in range(4) for b in (4, 5)])
    return {
        "absorb": (complete_multipartite([6, 6, 2]), Template.of([], [range(6), range(6, 12), [12, 13]]), absorb_profile),
        "promote": (promote_g, Template.of([], [[0, 1, 2], range(3, 9)]), DESK1),
        "split": (split_g, Template.of([], [[0, 1, 2, 3], [4, 5]]), DESK1),
        "append": (complete_multipartite([2, 2, 2]), Template.of([], [[0, 1], [2, 3]]), DESK1),
    }


def test_improvement_moves(capsys):
    problems = []
    for family, (g, t, profile) in _move_instances().items():
        omega = clique_number(g)[0]
        out = improve_template(g, t, profile, omega, families=(family,))
        if out is None or not validate_template(g, out, profile, omega) or template_value(out, profile, omega) <= template_value(t, profile, omega):
            problems.append(f"{family} did not fire")
        _, steps = local_search(g, t, profile, omega)
        th = profile.at(omega)
        if steps > g.n + omega * (th.l0_weight + th.part_bonus):
            problems.append(f"{family} instance: {steps} steps")
    rng = random.Random(5)
    worst = 0.0
    for _ in range(100):
        g, t = planted_template(rng, DESK1.at(6), outside=rng.randint(0, 10))
        omega = clique_number(g)[0]
        th = DESK1.at(omega)
        _, steps = local_search(g, t, DESK1, omega)
        limit = g.n + omega * (th.l0_weight + th.part_bonus)
        worst = max(worst, steps / limit)
        if steps > limit:
            problems.append(f"random instance: {steps} > {limit}")
    report(
        capsys,
        "improvement moves",
        not problems,
        f"4 families fire with strict value gain; 104 searches, worst steps/limit = {worst:.2f}; problems: {problems or 'none'}",
    )
    assert not problems


def test_end_to_end_validity(capsys):
    start = time.perf_counter()
    rng = random.Random(99)
    jobs = [(1, DESK1)] * 200 + [(2, DESK2)] * 100
    failures = []
    small = 0
    for idx, (s, profile) in enumerate(jobs):
        n = rng.randint(5, 18) if idx % 3 == 0 else rng.randint(19, 120)
        g = generate("cotree", {"n": n, "s": s}, rng.randrange(10**9))
        col, _ = colour_graph(g, profile)
        if not verify_kd(g, col):
            failures.append((idx, "verify_kd"))
            continue
        pc = to_proper(g, col)
        colours = len(set(pc.values()))
        if not is_proper(g, pc) or len(pc) != g.n:
            failures.append((idx, "improper"))
        if colours > col.k * (col.d + 1):
            failures.append((idx, "colours > k(d+1)"))
        if g.n <= 18:
            small += 1
            if colours < chromatic_number_exact(g)[0]:
                failures.append((idx, "colours < chi"))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed <= 600
    report(
        capsys,
        "end-to-end validity",
        ok,
        f"200 H_1-free + 100 H_2-free instances (n<=120, {small} with n<=18), {len(failures)} failures, "
        f"{elapsed:.1f}s (limit 600s)",
    )
    assert not failures, failures[:5]
    assert elapsed <= 600


def test_bound_audit(capsys):
    start = time.perf_counter()
    audit = bound_audit(1, 2, 200, d=(2 + 1) * (1 + 7) + 1)
    elapsed = time.perf_counter() - start
    hyp = ", ".join(f"{h.label}: {'holds' if h.holds else 'fails'}" for h in audit.hypotheses[:3])
    failed = "; ".join(f"{r.group} {r.label}" for r in audit.failures) or "none"
    ok = audit.all_hold and elapsed <= 1.0
    report(
        capsys,
        "bound audit (s=1, c=2, w=200, d=25)",
        ok,
        f"{len(audit.rows)} inequalities, {len(audit.failures)} fail [{failed}]; {hyp}; {elapsed * 1000:.1f}ms",
    )
    assert [h.label for h in audit.hypotheses[:3]] == ["w >= 200", "w^2 > s+1", "w^3 > w + s/7"]
    assert elapsed <= 1.0
    assert audit.all_hold, failed


def test_determinism(capsys, tmp_path):
    config = {
        "seed": 11,
        "instances": [
            {"kind": "cotree", "params": {"n": 40, "s": 1}, "count": 4},
            {"kind": "cotree", "params": {"n": 16, "s": 2}, "count": 3, "profile": "DESK2"},
            {"kind": "multipartite-blowup", "params": {"sizes": [3, 3, 3]}},
            {"kind": "gnp", "params": {"n": 12, "p": 0.4}, "seed": 5},
        ],
    }
    run_experiment(config, tmp_path / "one")
    run_experiment(config, tmp_path / "two")
    a = (tmp_path / "one" / "report.csv").read_bytes()
    b = (tmp_path / "two" / "report.csv").read_bytes()
    report(capsys, "determinism", a == b, f"two runs, {len(a)} bytes each, identical = {a == b}")
    assert a == b
