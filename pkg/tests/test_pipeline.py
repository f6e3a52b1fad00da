import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chibound.degen import DegenColouring, is_proper, singletons, to_proper, verify_kd
from chibound.errors import DoubleStarFound, PreconditionError
from chibound.graph import build_graph, complete_graph, complete_multipartite, empty_graph, path_graph
from chibound.harness import generate
from chibound.oracles import chromatic_number_exact
from chibound.pipeline import PeelStep, PeelTrace, audit_forward_degrees, colour_graph, z_y_sets
from chibound.profiles import DESK1, DESK2
from chibound.template import Template


def test_z_y_whole_template():
    g = build_graph(5, [(a, b) for a in range(5) for b in range(a + 1, 5) if not (a < 2 and b < 2) and not (2 <= a < 4 and 2 <= b < 4)])
    t = Template.of([4], [[0, 1], [2, 3]])
    z, n, y = z_y_sets(g, t, t.vertices, DESK1, 3)
    assert (z, n, y) == (1 << 4, 0, 0b1111)


def test_z_y_apex_and_loose_vertex():
    base = complete_multipartite([3, 3]).edges()
    apex = [(6, x) for x in range(6)]
    loose = [(7, 0), (7, 3), (7, 4), (7, 5)]  # two non-neighbours in L1 = {0, 1, 2}
    g = build_graph(8, base + apex + loose)
    t = Template.of([], [[0, 1, 2], [3, 4, 5]])
    z, n, y = z_y_sets(g, t, range(8), DESK1, 3)
    assert z >> 6 & 1 and not y >> 6 & 1
    assert y >> 7 & 1 and n >> 7 & 1 and not z >> 7 & 1
    assert y == (0b111111 | 1 << 7)
    with pytest.raises(PreconditionError):
        z_y_sets(g, t, range(4), DESK1, 3)


def _step(y, col):
    return PeelStep(Template.of([], []), 0, y, 0, 0, col)


def test_forward_audit_cases():
    g = path_graph(4)
    one = PeelTrace(4, 2, "DESK1", steps=[_step(0b1111, singletons(range(4)))], residual=0)
    assert audit_forward_degrees(g, one, DESK1, 2).ok
    h = build_graph(4, [(0, 1), (2, 3)])
    two = PeelTrace(4, 2, "DESK1", steps=[_step(0b0011, singletons([0, 1]))], residual=0b1100)
    audit = audit_forward_degrees(h, two, DESK1, 2)
    assert audit.ok and audit.counts == {0: 0, 1: 0}
    star = build_graph(6, [(0, x) for x in range(1, 6)])
    bad = PeelTrace(6, 2, "DESK1", steps=[_step(1, singletons([0]))], residual=0b111110)
    audit = audit_forward_degrees(star, bad, DESK1, 2)
    assert not audit.ok and audit.failures == [(0, 0, 5)]


def test_edgeless():
    col, trace = colour_graph(empty_graph(7), DESK1)
    assert (col.k, col.d) == (1, 0)
    assert len(set(to_proper(empty_graph(7), col).values())) == 1
    assert trace.base_case


def test_empty_graph_zero_vertices():
    col, _ = colour_graph(empty_graph(0), DESK1)
    assert verify_kd(empty_graph(0), col) and col.size == 0


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_complete(n):
    g = complete_graph(n)
    col, _ = colour_graph(g, DESK1)
    pc = to_proper(g, col)
    assert is_proper(g, pc) and len(set(pc.values())) == n


def test_rejects_double_star_unless_attested():
    p4 = path_graph(4)
    with pytest.raises(DoubleStarFound):
        colour_graph(p4, DESK1)
    col, _ = colour_graph(p4, DESK1, attest_hfree=True)
    assert verify_kd(p4, col)


def _check_run(g, profile):
    col, trace = colour_graph(g, profile)
    assert verify_kd(g, col)
    pc = to_proper(g, col)
    assert is_proper(g, pc) and sorted(pc) == list(range(g.n))
    colours = len(set(pc.values()))
    assert colours <= col.k * (col.d + 1)
    # layers partition the vertex set
    union = 0
    for block in trace.blocks:
        assert not union & block
        union |= block
    assert union == g.full_mask
    if not trace.base_case:
        assert all(st.value >= profile.at(trace.omega).min_value for st in trace.steps)
        piece_d = max([st.colouring.d for st in trace.steps] + [trace.residual_colouring.d])
        assert col.d == piece_d + trace.d_prime
    return col, trace, colours


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9), st.integers(5, 60), st.sampled_from([DESK1, DESK2]))
def test_random_hfree_instances(seed, n, profile):
    g = generate("cotree", {"n": n, "s": profile.s}, seed)
    _, _, colours = _check_run(g, profile)
    if g.n <= 18:
        assert colours >= chromatic_number_exact(g)[0]


def test_multipartite_blowup():
    g = complete_multipartite([4, 4, 4, 4])
    _, trace, colours = _check_run(g, DESK1)
    assert colours >= 4 and trace.steps


def test_recursion_lowers_omega():
    rng = random.Random(21)
    seen_sub = False
    for i in range(30):
        g = generate("cotree", {"n": 70, "s": 1}, rng.randrange(10**6))
        _, trace, _ = _check_run(g, DESK1)
        assert trace.max_depth <= trace.omega
        assert not any("did not lower omega" in f for f in trace.flags)
        seen_sub |= trace.subcalls > 0
    assert seen_sub


def test_trace_json_shape():
    g = complete_multipartite([3, 3, 3])
    _, trace = colour_graph(g, DESK1)
    d = trace.to_dict()
    assert {"steps", "residual", "final", "forward_audit", "flags"} <= set(d)
    assert DegenColouring.from_dict(d["final"]).size == 9
