"""Pair-flip generation of acyclic orientations of hypergraphs."""

import random

import pytest

from orientgen.chordal import generate as generate_graph
from orientgen.errors import InputError
from orientgen.graphs import Graph, complete_graph, cycle_graph, path_graph
from orientgen.hypergen import (
    HyperRun,
    decode,
    encode,
    generate,
    generate_elim_forests,
)
from orientgen.hypergraphs import (
    Hypergraph,
    find_heo,
    graphical_building_set,
    pair_flip,
    poset_of,
    relabel_hypergraph,
)
from orientgen.jumps import LanguageOracle, algorithm_J, is_zigzag_language
from orientgen.oracle import (
    build_flip_graph,
    certify_hamilton_path,
    enumerate_ao_hyper,
    pair_flip_relation,
)

PREFIX_H = Hypergraph(4, [(1, 2), (1, 2, 3), (1, 2, 3, 4)])


def stanley_pitman(n):
    edges = [tuple(range(1, k + 1)) for k in range(1, n + 1)]
    edges += [(v,) for v in range(2, n + 1)]
    return Hypergraph(n, edges)


def two_uniform(g):
    return Hypergraph(g.n, g.edges)


def random_heo_hypergraph(rng):
    """Random hypergraph relabeled so the identity is a hyperfect
    elimination order, or None when none exists."""
    n = rng.randint(2, 5)
    pool = []
    for _ in range(rng.randint(1, 5)):
        size = rng.randint(1, n)
        pool.append(tuple(sorted(rng.sample(range(1, n + 1), size))))
    h = Hypergraph(n, sorted(set(pool)))
    order = find_heo(h)
    if order is None:
        return None
    return relabel_hypergraph(h, order)


def collect(h, order=None):
    run = generate(h, order)
    flips, states = [], []
    for flip in run:
        flips.append(flip)
        states.append(run.heads())
    return run, flips, states


def test_decode_identity():
    assert decode(PREFIX_H, (1, 2, 3, 4)) == (2, 3, 4)
    assert decode(PREFIX_H, (4, 3, 2, 1)) == (1, 1, 1)


def test_encode_examples():
    n = PREFIX_H.n
    assert encode(PREFIX_H, (2, 3, 4)) == (1, 2, 3, 4)
    assert encode(PREFIX_H, (1, 1, 4)) == (3, 2, 1, 4)
    with pytest.raises(InputError):
        encode(PREFIX_H, (9, 1, 1))
    # cyclic orientation of a triangle hypergraph
    tri = two_uniform(complete_graph(3))
    with pytest.raises(InputError):
        encode(tri, (2, 1, 3))
    # hypergraph without a hyperfect elimination order in this labeling
    square = two_uniform(cycle_graph(4))
    with pytest.raises(InputError):
        encode(square, (2, 3, 4, 4))


def test_encode_decode_roundtrip():
    rng = random.Random(17)
    cases = [PREFIX_H, stanley_pitman(3), stanley_pitman(4), stanley_pitman(5),
             two_uniform(complete_graph(4)), two_uniform(path_graph(5))]
    for _ in range(20):
        h = random_heo_hypergraph(rng)
        if h is not None:
            cases.append(h)
    for h in cases:
        seen = set()
        for o in enumerate_ao_hyper(h):
            pi = encode(h, o)
            assert decode(h, pi) == o
            seen.add(pi)
        assert len(seen) == len(enumerate_ao_hyper(h))


def test_encode_is_linear_extension():
    for o in enumerate_ao_hyper(PREFIX_H):
        pi = encode(PREFIX_H, o)
        poset = poset_of(PREFIX_H, o)
        pos = {v: k for k, v in enumerate(pi)}
        for a, b in poset.covers:
            assert pos[a] < pos[b]


def test_run_visits_every_orientation():
    rng = random.Random(19)
    cases = [PREFIX_H, stanley_pitman(4), two_uniform(complete_graph(4))]
    for _ in range(15):
        h = random_heo_hypergraph(rng)
        if h is not None:
            cases.append(h)
    for h in cases:
        run, flips, states = collect(h)
        oracle = enumerate_ao_hyper(h)
        assert len(states) == len(set(states)) == len(oracle)
        assert set(states) == set(oracle)
        assert run.visits == len(states) and run.flips == len(states) - 1


def test_first_visit_heads_maxima():
    run, flips, states = collect(PREFIX_H)
    assert flips[0] is None
    assert states[0] == (2, 3, 4)


def test_flips_are_valid_pair_flips():
    run, flips, states = collect(stanley_pitman(4))
    for k in range(1, len(states)):
        i, j = flips[k]
        assert pair_flip(stanley_pitman(4), states[k - 1], i, j) == states[k]


def test_trace_matches_greedy_jump_engine():
    rng = random.Random(23)
    cases = [PREFIX_H, stanley_pitman(4)]
    for _ in range(10):
        h = random_heo_hypergraph(rng)
        if h is not None:
            cases.append(h)
    for h in cases:
        member = lambda p, h=h: encode(h, decode(h, p)) == p
        expected = algorithm_J(LanguageOracle(h.n, member))
        run = generate(h)
        got = []
        for _ in run:
            got.append(encode(h, run.heads()))
            assert got[-1] == run.permutation()
        assert got == expected


def test_encoding_language_is_zigzag():
    rng = random.Random(29)
    cases = [PREFIX_H, stanley_pitman(4)]
    for _ in range(6):
        h = random_heo_hypergraph(rng)
        if h is not None:
            cases.append(h)
    for h in cases:
        lang = {encode(h, o) for o in enumerate_ao_hyper(h)}
        assert is_zigzag_language(lang)


def test_two_uniform_equals_chordal_sequence():
    rng = random.Random(31)
    graphs = [complete_graph(4), path_graph(5), complete_graph(5)]
    for _ in range(8):
        n = rng.randint(2, 6)
        edges = []
        smaller = [set() for _ in range(n + 1)]
        for i in range(2, n + 1):
            u = rng.randint(1, i - 1)
            clique = {u} | {v for v in smaller[u] if rng.random() < 0.5}
            for v in clique:
                smaller[i].add(v)
                edges.append((v, i))
        graphs.append(Graph(n, edges))
    identity = lambda n: tuple(range(1, n + 1))
    for g in graphs:
        hrun = generate(two_uniform(g), identity(g.n))
        grun = generate_graph(g, identity(g.n))
        while True:
            ha = next(hrun, StopIteration)
            ga = next(grun, StopIteration)
            assert (ha is StopIteration) == (ga is StopIteration)
            if ha is StopIteration:
                break
            assert hrun.heads() == tuple(a[1] for a in grun.digraph().arcs)


def test_stanley_pitman_certified():
    for n in (3, 4, 5):
        h = stanley_pitman(n)
        run, flips, states = collect(h)
        fg = build_flip_graph(enumerate_ao_hyper(h), pair_flip_relation(h))
        assert certify_hamilton_path(fg, states)


def test_prefix_chain_certified():
    run, flips, states = collect(PREFIX_H)
    fg = build_flip_graph(enumerate_ao_hyper(PREFIX_H), pair_flip_relation(PREFIX_H))
    assert certify_hamilton_path(fg, states)


def test_generate_rejects_bad_input():
    square = two_uniform(cycle_graph(4))
    with pytest.raises(InputError):
        generate(square)
    with pytest.raises(InputError):
        generate(PREFIX_H, (4, 3, 2, 1))


def test_singletons_only():
    h = Hypergraph(3, [(1,), (2,), (3,)])
    run, flips, states = collect(h)
    assert states == [(1, 2, 3)]
    assert flips == [None]


def catalan(n):
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


def test_elim_forests_paths():
    for n in range(1, 6):
        forests = list(generate_elim_forests(path_graph(n)))
        assert len(forests) == len(set(forests)) == catalan(n)


def test_elim_forests_complete_graph_are_paths():
    forests = list(generate_elim_forests(complete_graph(4)))
    assert len(forests) == 24
    for parent in forests:
        # a path: one root, every other vertex has a distinct parent
        roots = [v for v in range(1, 5) if parent[v - 1] == 0]
        assert len(roots) == 1
        assert sorted(p for p in parent if p) == sorted(
            set(p for p in parent if p))


def test_elim_forests_single_vertex():
    assert list(generate_elim_forests(Graph(1, []))) == [(0,)]


def test_elim_forests_rejects_non_chordal():
    with pytest.raises(InputError):
        next(generate_elim_forests(cycle_graph(4)))


def test_consecutive_forests_differ_by_rotation():
    g = path_graph(4)
    bg = graphical_building_set(g)
    run = generate(bg)
    from orientgen.hypergraphs import orientation_to_elim_forest
    prev = None
    prev_flip = None
    for flip in run:
        parent = orientation_to_elim_forest(bg, run.heads())
        if prev is not None:
            a, b = flip
            assert prev[a - 1] == b and parent[b - 1] == a
            for v in range(1, g.n + 1):
                if v in (a, b):
                    continue
                if prev[v - 1] != parent[v - 1]:
                    assert {prev[v - 1], parent[v - 1]} <= {a, b}
        prev = parent
        prev_flip = flip
