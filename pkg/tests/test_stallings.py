from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from subtorus.errors import InputError, NotMember, ResourceExceeded
from subtorus.stallings import (
    AGraph,
    add_words,
    basis_of,
    canonical_form,
    contains,
    core,
    express,
    fold,
    from_words,
    image_graph,
    is_cover,
    rank,
    read_labels,
    replay,
    wedge,
)
from subtorus.words import Basis, free_reduce

AB = Basis.of("ab")
ABCDE = Basis.of("abcde")

short_words = st.text(alphabet="aAbB", min_size=1, max_size=6).map(free_reduce).filter(bool)


def random_connected_graph(rng: random.Random, basis: Basis, n: int, extra: int) -> AGraph:
    edges = []
    for v in range(1, n):
        u = rng.randrange(v)
        a = rng.choice(basis.letters)
        edges.append((u, a, v) if rng.random() < 0.5 else (v, a, u))
    for _ in range(extra):
        edges.append((rng.randrange(n), rng.choice(basis.letters), rng.randrange(n)))
    rng.shuffle(edges)
    return AGraph(basis, n, tuple(edges))


# --- examples ---------------------------------------------------------------------

def test_single_loop():
    g = from_words(AB, ["a"])
    assert g.num_vertices == 1 and g.edges == ((0, "a", 0),)
    assert rank(g) == 1


def test_ab_ba_matches_enumeration():
    g = from_words(AB, ["ab", "ba"])
    assert rank(g) == 2
    members = oracles.members_up_to(["ab", "ba"], 6)
    for w in oracles.all_reduced_words("ab", 6):
        assert contains(g, w) == (w in members)


def test_free_factor_rose():
    g = from_words(ABCDE, ["a", "b", "c"])
    assert g.num_vertices == 1 and rank(g) == 3
    assert contains(g, "abbcc")
    assert not contains(g, "d") and not contains(g, "e")


def test_fold_examples():
    g, trace = fold(AGraph(AB, 1, ((0, "a", 0), (0, "a", 0))))
    assert g.edges == ((0, "a", 0),) and len(trace.events) == 1
    g = from_words(AB, ["aa", "a"])
    assert canonical_form(g) == canonical_form(from_words(AB, ["a"]))


def test_contains_examples():
    assert contains(from_words(AB, ["aa", "b"]), "")
    assert not contains(from_words(AB, ["aa", "b"]), "a")


def test_rank_and_basis_examples():
    rose = from_words(AB, ["a", "b"])
    assert rank(rose) == 2 and basis_of(rose).loops == ("a", "b")
    g = from_words(AB, ["aa", "b", "abA"])
    assert rank(g) == 3
    # Euler characteristic of the 2-vertex double cover: 1 - (2 - 4) = 3
    assert g.num_vertices == 2 and len(g.edges) == 4


def test_express_examples():
    assert express(from_words(AB, ["a", "b"]), "ab") == (1, 2)
    g = from_words(AB, ["aa", "b"])
    assert basis_of(g).loops == ("aa", "b")
    assert express(g, "aabaa") == (1, 2, 1)
    assert express(from_words(ABCDE, ["a", "b", "c"]), "abbcc") == (1, 2, 2, 3, 3)
    with pytest.raises(NotMember):
        express(g, "a")


def test_is_cover_examples():
    assert is_cover(from_words(AB, ["a", "b"])) == 1
    g = from_words(AB, ["aa", "b", "abA"])
    assert is_cover(g, AB) == 2 == oracles.coset_index("ab", ["aa", "b", "abA"])
    assert is_cover(from_words(AB, ["a"])) is None


def test_canonical_form_examples():
    rose = canonical_form(from_words(AB, ["a", "b"]))
    assert rose == (("a", "b"), 1, ((0, "a", 0), (0, "b", 0)))
    assert canonical_form(from_words(AB, ["a"])) != canonical_form(from_words(AB, ["b"]))


def test_canonical_form_rejects_unfolded():
    with pytest.raises(InputError):
        canonical_form(AGraph(AB, 1, ((0, "a", 0), (0, "a", 0))))


def test_core_keeps_basepoint():
    # a hanging edge at the basepoint followed by a loop
    g = AGraph(AB, 3, ((0, "a", 1), (1, "b", 1), (1, "a", 2)))
    c = core(g)
    assert c.num_vertices == 2 and c.basepoint == 0
    assert contains(c, "abA")


def test_resource_cap():
    with pytest.raises(ResourceExceeded):
        from_words(AB, ["ab" * 40], max_cells=50)


def test_replay_reproduces_fold():
    rng = random.Random(5)
    for _ in range(20):
        g = random_connected_graph(rng, AB, 8, 6)
        folded, trace = fold(g)
        assert replay(g, trace) == folded
        assert len(trace.vertex_map) == g.num_vertices
        assert len(trace.edge_map) == len(g.edges)


def test_to_dot_mentions_every_edge():
    dot = from_words(AB, ["aa", "b"]).to_dot()
    assert dot.startswith("digraph") and dot.count("->") == 3


def test_image_graph_readback():
    # a -> b, b -> ab is injective; labels read back preimages
    g, labels, ok = image_graph(AB, ["b", "ab"])
    assert ok
    assert read_labels(g, labels, "b") == "a"
    assert read_labels(g, labels, "a") == "bA"
    assert read_labels(g, labels, "abb") == "ba"


def test_image_graph_detects_dependency():
    _, _, ok = image_graph(AB, ["a", "a"])
    assert not ok


# --- properties -----------------------------------------------------------------

def test_fold_confluence_random_orders():
    rng = random.Random(11)
    B = Basis.of("abc")
    for _ in range(100):
        g = random_connected_graph(rng, B, rng.randint(2, 9), rng.randint(1, 8))
        h1, _ = fold(g, rng=random.Random(rng.random()))
        h2, _ = fold(g, rng=random.Random(rng.random()))
        h0, _ = fold(g)
        assert canonical_form(h1) == canonical_form(h2) == canonical_form(h0)


@settings(max_examples=60, deadline=None)
@given(st.lists(short_words, min_size=1, max_size=3))
def test_membership_matches_enumeration(gens):
    g = from_words(AB, gens)
    members = oracles.members_up_to(gens, 6)
    for w in oracles.all_reduced_words("ab", 6):
        assert contains(g, w) == (w in members)


@settings(max_examples=80, deadline=None)
@given(st.lists(short_words, min_size=1, max_size=4), st.lists(short_words, max_size=4))
def test_express_round_trip(gens, probes):
    g = from_words(AB, gens)
    gb = basis_of(g)
    candidates = list(gens) + [free_reduce(p + q) for p in gens for q in gens] + probes
    for w in candidates:
        if contains(g, w):
            assert gb.expand(express(g, w, gb)) == w
        else:
            with pytest.raises(NotMember):
                express(g, w, gb)


@settings(max_examples=80, deadline=None)
@given(st.lists(short_words, min_size=1, max_size=4))
def test_rank_bounded_by_generators(gens):
    assert rank(from_words(AB, gens)) <= len(gens)


@settings(max_examples=80, deadline=None)
@given(st.lists(short_words, min_size=1, max_size=4))
def test_basis_generates_and_is_free(gens):
    g = from_words(AB, gens)
    loops = basis_of(g).loops
    assert len(loops) == rank(g)
    assert canonical_form(from_words(AB, loops)) == canonical_form(g)
    # basis order does not depend on how the graph was built
    assert basis_of(from_words(AB, list(reversed(gens)))).loops == loops


@settings(max_examples=60, deadline=None)
@given(st.lists(short_words, min_size=2, max_size=4))
def test_add_words_matches_batch_fold(gens):
    g = from_words(AB, gens[:1])
    for w in gens[1:]:
        h = add_words(g, [w])
        assert (h is g) == contains(g, w)
        g = h
    assert canonical_form(g) == canonical_form(from_words(AB, gens))


@settings(max_examples=40, deadline=None)
@given(st.lists(short_words, min_size=2, max_size=3))
def test_cover_index_matches_coset_enumeration(gens):
    g = from_words(AB, gens)
    index = is_cover(g)
    if index is not None:
        assert index == oracles.coset_index("ab", gens)
        # each coset has a representative of length <= index - 1
        reps = {g.read(w) for w in oracles.all_reduced_words("ab", index + 2)}
        assert len(reps) == index


def test_wedge_shape():
    n, edges, owner = wedge(AB, ["ab", "B"])
    assert n == 2 and len(edges) == 3 and owner == [0, 0, 1]
