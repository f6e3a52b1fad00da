import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chibound.degen import (
    DegenColouring,
    chain,
    degeneracy_colouring,
    greedy_classes,
    is_proper,
    juxtapose,
    singletons,
    to_proper,
    verify_kd,
)
from chibound.errors import PreconditionError
from chibound.graph import build_graph, complete_graph, path_graph, petersen_graph

from conftest import graphs, random_chain_instance, random_graph

TREE10 = build_graph(10, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 7), (4, 8), (6, 9)])


def test_verify_examples():
    k4 = complete_graph(4)
    assert verify_kd(k4, singletons(range(4)))
    bad = verify_kd(k4, DegenColouring(1, 2, ((0, 1, 2, 3),)))
    assert not bad and bad.reason == "later-neighbour overflow" and bad.vertex == 0
    leaf_first = (7, 8, 9, 3, 4, 5, 6, 1, 2, 0)
    assert verify_kd(TREE10, DegenColouring(1, 1, (leaf_first,)))


def test_verify_detects_overlap_and_bad_ids():
    k4 = complete_graph(4)
    c = verify_kd(k4, DegenColouring(2, 3, ((0, 1), (1, 2))))
    assert not c and c.reason == "vertex in two parts" and c.vertex == 1
    assert verify_kd(k4, DegenColouring(1, 0, ((7,),))).reason == "invalid vertex"


def test_colouring_padding_and_serialisation():
    c = DegenColouring(3, 1, ((0, 1),))
    assert c.orders == ((0, 1), (), ()) and c.nonempty_parts == 1
    assert DegenColouring.from_dict(c.to_dict()) == c
    with pytest.raises(ValueError):
        DegenColouring(1, 0, ((0,), (1,)))
    with pytest.raises(ValueError):
        DegenColouring.from_dict({"k": 1, "d": 0, "parts": [[1]], "orders": [[0]]})


def test_chain_identity():
    g = petersen_graph()
    c = degeneracy_colouring(g, g.full_mask)
    assert chain(g, [c], 0) == c


def test_chain_disjoint_pieces():
    g = build_graph(4, [(0, 1), (2, 3)])
    a = DegenColouring(2, 0, ((0,), (1,)))
    b = DegenColouring(2, 0, ((2,), (3,)))
    out = chain(g, [a, b], 0)
    assert out.k == 2 and out.d == 0 and verify_kd(g, out)


def test_chain_path_example():
    g = path_graph(6)
    a = DegenColouring(1, 1, ((0, 1, 2),))
    b = DegenColouring(1, 1, ((3, 4, 5),))
    out = chain(g, [a, b], 1)
    assert (out.k, out.d) == (1, 2)
    assert verify_kd(g, out)
    assert out.orders == ((0, 1, 2, 3, 4, 5),)


def test_chain_errors():
    g = path_graph(6)
    with pytest.raises(PreconditionError):
        chain(g, [DegenColouring(1, 1, ((0, 1, 2),)), DegenColouring(2, 1, ((3, 4, 5),))], 1)
    with pytest.raises(PreconditionError):
        chain(g, [DegenColouring(1, 1, ((0, 1, 2),)), DegenColouring(1, 1, ((2, 3),))], 1)
    k = complete_graph(4)
    with pytest.raises(PreconditionError) as info:
        chain(k, [DegenColouring(1, 0, ((0,),)), DegenColouring(1, 2, ((1, 2, 3),))], 2)
    assert info.value.witness == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_chain_random(seed):
    rng = random.Random(seed)
    g, pieces, d_prime = random_chain_instance(rng)
    out = chain(g, pieces, d_prime)
    d = max(p.d for p in pieces)
    assert verify_kd(g, out, d + d_prime)
    # relaxing the budgets never breaks anything
    assert verify_kd(g, chain(g, pieces, d_prime + 1), d + d_prime + 1)
    assert verify_kd(g, out, d + d_prime + 3)


def test_to_proper_examples():
    k4 = complete_graph(4)
    assert len(set(to_proper(k4, singletons(range(4))).values())) == 4
    order = (7, 8, 9, 3, 4, 5, 6, 1, 2, 0)
    pc = to_proper(TREE10, DegenColouring(1, 1, (order,)))
    assert is_proper(TREE10, pc) and len(set(pc.values())) <= 2
    pet = petersen_graph()
    c = degeneracy_colouring(pet, pet.full_mask)
    assert c.d == 3
    pc = to_proper(pet, c)
    assert is_proper(pet, pc) and len(set(pc.values())) <= 4


def test_to_proper_rejects_bad_certificate():
    with pytest.raises(PreconditionError):
        to_proper(complete_graph(3), DegenColouring(1, 0, ((0, 1, 2),)))


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=14))
def test_to_proper_bounds(g):
    for c in (degeneracy_colouring(g, g.full_mask), greedy_classes(g, g.full_mask)):
        assert verify_kd(g, c)
        pc = to_proper(g, c)
        assert is_proper(g, pc)
        assert sorted(pc) == list(range(g.n))
        assert len(set(pc.values())) <= c.k * (c.d + 1)


def test_juxtapose():
    rng = random.Random(2)
    g = random_graph(rng, 20, 0.4)
    a = degeneracy_colouring(g, (1 << 10) - 1)
    b = greedy_classes(g, g.full_mask & ~((1 << 10) - 1))
    j = juxtapose([a, b])
    assert j.k == a.nonempty_parts + b.nonempty_parts and j.d == max(a.d, b.d)
    assert verify_kd(g, j) and j.vertices == frozenset(range(20))
