import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freefold.stallings import (
    StallingsGraph,
    VertexCensus,
    basis,
    build_bouquet,
    canonical_form,
    census,
    chi0,
    core,
    fold,
    membership,
    rank,
    subgroup_graph,
    to_dot,
)
from freefold.words import Alphabet, Word, concat_reduce, invert, parse_word, parse_words
from oracles import all_reduced_words, naive_fold, products_of_generators
from strategies import gen_lists

F2 = Alphabet(2)


def W(text):
    return parse_word(text, F2)


def G(text, keep_base=True):
    return core(fold(build_bouquet(parse_words(text, F2), F2)), keep_base=keep_base)


def edge_set(g):
    return sorted(g.edges())


def test_bouquet_examples():
    g = build_bouquet([W("a")], F2)
    assert (g.num_vertices, g.edges) == (1, [(0, 0, 0)])
    g = build_bouquet([W("aa")], F2)
    assert (g.num_vertices, len(g.edges)) == (2, 2)
    g = build_bouquet([W("aa"), W("ab")], F2)
    assert (g.num_vertices, len(g.edges)) == (3, 4)
    g = build_bouquet([W("aB")], F2)
    assert g.edges == [(0, 0, 1), (0, 1, 1)]


def test_bouquet_rejects_empty_generator():
    with pytest.raises(ValueError):
        build_bouquet([Word()], F2)
    with pytest.raises(ValueError):
        build_bouquet([parse_word("c", Alphabet(3))], F2)


def test_fold_a2_ab():
    g = fold(build_bouquet([W("aa"), W("ab")], F2))
    assert g.num_vertices == 2 and g.base == 0
    # base -a-> v, v -a-> base, v -b-> base
    assert edge_set(g) == [(0, 0, 1), (1, 0, 0), (1, 1, 0)]


def test_fold_duplicate_generator():
    g = fold(build_bouquet([W("a"), W("a")], F2))
    assert g.num_vertices == 1 and edge_set(g) == [(0, 0, 0)]


def test_fold_ab_aB():
    g = fold(build_bouquet([W("ab"), W("aB")], F2))
    # base -a-> v, then b-edges v -> base and base -> v
    assert edge_set(g) == [(0, 0, 1), (0, 1, 1), (1, 1, 0)]
    assert rank(g) == 2
    assert membership(g, W("ab")) and membership(g, W("aB"))


def test_core_removes_hair():
    g = G("abA", keep_base=False)
    assert g.num_vertices == 1 and edge_set(g) == [(0, 1, 0)]
    based = G("abA")
    assert based.num_vertices == 2 and membership(based, W("abA"))


def test_core_unchanged_without_leaves():
    g = G("a")
    assert core(g, True) == g and core(g, False) == g


def test_core_of_tree_is_single_vertex():
    pre = build_bouquet([W("ab")], F2)
    pre.edges.append((0, 0, pre.num_vertices))
    pre.num_vertices += 1
    pre.edges.append((pre.num_vertices - 1, 1, pre.num_vertices))
    pre.num_vertices += 1
    g = fold(pre)
    c = core(g, keep_base=False)
    assert rank(c) == 1 and c.num_vertices == 2
    # a graph that is only hair
    tree = fold(type(pre)(F2, 3, 0, [(0, 0, 1), (1, 1, 2)]))
    for keep in (True, False):
        t = core(tree, keep)
        assert t.num_vertices == 1 and t.num_edges == 0


def test_rank_chi0():
    assert (rank(G("a,b")), chi0(G("a,b"))) == (2, 1)
    g = G("aa,ab")
    assert (g.num_vertices, g.num_edges, rank(g), chi0(g)) == (2, 3, 2, 1)
    t = StallingsGraph.trivial(F2)
    assert (rank(t), chi0(t)) == (0, 0)
    assert G("") == t


def test_membership_examples():
    g = G("aa,ab")
    assert membership(g, W("aa"))
    assert not membership(g, W("a"))
    assert membership(g, W("abAA"))
    assert membership(g, Word())


def test_basis_examples():
    assert basis(G("a")) == [W("a")]
    assert basis(G("aa,ab")) == [W("aa"), W("ab")]
    assert basis(StallingsGraph.trivial(F2)) == []


def test_census_examples():
    c = census(G("aa,ab", keep_base=False))
    assert c.total == 2
    assert c.by_signature == {(2, 1): 1, (1, 2): 1}
    assert c.by_missing == {"a-out": 0, "a-in": 0, "b-out": 1, "b-in": 1}
    assert census(G("a,b", keep_base=False)).total == 0
    c = census(G("aa,b", keep_base=False))
    assert c.total == 0
    assert c.slots[0] == (True, True, True, True)
    assert c.spectrum == {(2, 2): 1, (1, 1): 1}


def test_census_rank_check():
    with pytest.raises(ValueError):
        census(core(fold(build_bouquet([], Alphabet(3)))))


def test_canonical_examples():
    g = G("aa,ab")
    assert canonical_form(canonical_form(g)) == canonical_form(g)
    assert canonical_form(G("ab,aa")) == canonical_form(g)


def test_to_dot():
    dot = to_dot(G("a"))
    assert dot.startswith("digraph")
    assert "doublecircle" in dot
    assert dot.count("->") == 1 and 'label="a"' in dot
    assert to_dot(G("aa,ab")).count("->") == 3
    dot = to_dot(StallingsGraph.trivial(F2))
    assert dot.count("->") == 0 and "0 [shape=doublecircle]" in dot


def test_graph_validation():
    with pytest.raises(ValueError):
        StallingsGraph(F2, 0, ((1, None, None, None), (None, None, None, None)))


@given(gen_lists, st.randoms(use_true_random=False))
def test_fold_confluence(gens, rnd):
    ref = canonical_form(subgroup_graph(gens, F2))
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    pre = build_bouquet(shuffled, F2)
    g = core(fold(pre, rng=random.Random(rnd.random())))
    assert canonical_form(g) == ref


@settings(max_examples=50)
@given(gen_lists)
def test_fold_matches_naive_oracle(gens):
    pre = build_bouquet(gens, F2)
    assert canonical_form(fold(pre)) == canonical_form(naive_fold(pre))


@settings(max_examples=40)
@given(gen_lists)
def test_membership_soundness(gens):
    g = subgroup_graph(gens, F2)
    for w in products_of_generators(gens, 3):
        assert membership(g, w)


@given(gen_lists, st.data())
def test_nielsen_invariance(gens, data):
    ref = canonical_form(subgroup_graph(gens, F2))
    moved = list(gens)
    i = data.draw(st.integers(0, len(gens) - 1))
    moved[i] = invert(moved[i])
    assert canonical_form(subgroup_graph(moved, F2)) == ref
    if len(gens) >= 2:
        moved = list(gens)
        w = concat_reduce(moved[0], moved[1])
        if w:
            moved[1] = w
            assert canonical_form(subgroup_graph(moved, F2)) == ref


@given(gen_lists)
def test_basis_rank_and_rebuild(gens):
    g = subgroup_graph(gens, F2)
    bs = basis(g)
    assert len(bs) == rank(g) == g.num_edges - g.num_vertices + 1
    assert all(membership(g, w) for w in bs)
    assert canonical_form(subgroup_graph(bs, F2)) == canonical_form(g)


@given(gen_lists)
def test_census_handshake(gens):
    g = subgroup_graph(gens, F2)
    c = core(g, keep_base=False)
    sig = [c.in_out(v) for v in range(c.num_vertices)]
    assert sum(i - o for i, o in sig) == 0
    cen = census(c)
    assert sum(cen.by_missing.values()) == cen.total
    assert cen.by_signature[(2, 1)] == cen.by_missing["a-out"] + cen.by_missing["b-out"]
    assert cen.by_signature[(1, 2)] == cen.by_missing["a-in"] + cen.by_missing["b-in"]
    if all(abs(i - o) <= 1 for i, o in sig):
        assert cen.by_signature[(2, 1)] == cen.by_signature[(1, 2)]


@settings(max_examples=30)
@given(gen_lists)
def test_core_preserves_euler_and_membership(gens):
    g = fold(build_bouquet(gens, F2))
    c = core(g, keep_base=True)
    assert g.num_edges - g.num_vertices == c.num_edges - c.num_vertices
    for w in all_reduced_words(2, 5):
        assert membership(g, w) == membership(c, w)
    cyc = core(g, keep_base=False)
    if rank(g):
        assert all(cyc.valence(v) >= 2 for v in range(cyc.num_vertices))
    assert rank(cyc) == rank(g)


def test_vertex_census_to_dict():
    d = census(G("aa,ab", keep_base=False)).to_dict()
    assert d["by_signature"] == {"(1,2)": 1, "(2,1)": 1}
    assert isinstance(VertexCensus, type)
