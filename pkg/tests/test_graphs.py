import random

import pytest
from hypothesis import given, settings, strategies as st

from fgr import graphs as G
from fgr.graphs import format_wedge, parse_wedge, wedge
from fgr.words import Letter, Word, parse_word

from conftest import brute_force_core, isomorphic, nontrivial_words, product_of, subgroups


def W(text):
    return parse_word(text)


def K():
    return G.subgroup_graph([W("b"), W("abA")])


def wh(g):
    return {format_wedge(p) for p in G.whitehead_graph(g)}


def pairs(*texts):
    return {format_wedge(parse_wedge(t)) for t in texts}


def test_graph_of_word():
    g = G.graph_of_word(W("ab"))
    assert len(g.vertices) == 3 and [x for _, _, x in g.edges.values()] == ["a", "b"]
    assert len(G.graph_of_word(Word()).vertices) == 1
    g = G.graph_of_word(W("bbabA"))
    assert (len(g.vertices), len(g.edges)) == (6, 5)


def test_bouquet():
    g = G.bouquet_of_subgroup([W("b"), W("abA")])
    assert len(g.edges) == 4 and g.degree(0) == 4
    assert len(G.bouquet_of_subgroup([W("bbabA")]).vertices) == 5
    assert len(G.bouquet_of_subgroup([]).vertices) == 1


def test_fold_step_merges_two_leaves():
    g = G.LabeledGraph([0, 1, 2], {0: (0, 1, "a"), 1: (0, 2, "a")}, 0)
    h = G.fold_step(g, (0, False), (1, False))
    assert len(h.edges) == 1 and len(h.vertices) == 2
    with pytest.raises(G.GraphError):
        G.fold_step(g, (0, False), (0, True))


def test_core_of_k():
    g = K()
    assert len(g.vertices) == 2 and len(g.edges) == 3
    assert isomorphic(g, brute_force_core(G.bouquet_of_subgroup([W("b"), W("abA")])))
    bp = g.basepoint
    labels = sorted((s == bp, d == bp, x) for s, d, x in g.edges.values())
    assert labels == [(False, False, "b"), (True, False, "a"), (True, True, "b")]


def test_core_of_cycles():
    g = G.subgroup_graph([W("bbabA")])
    assert len(g.vertices) == 5 and g.is_core()
    c = G.subgroup_graph([W("xyXY")])
    assert len(c.vertices) == 4
    assert G.contains(c, W("xyXY")) and not G.contains(c, W("xy"))


def test_trim_path():
    g = G.core(G.graph_of_word(W("ab")))
    assert len(g.vertices) == 1 and not g.edges


def test_core_by_folding_only():
    g = G.subgroup_graph([W("bbabA")])
    assert G.same_graph(G.core_by_folding_only(g), g)
    conj = G.attach_conjugator(G.bouquet_of_subgroup([W("bbabA")]), W("ab"))
    assert len(G.core_by_folding_only(conj).vertices) == 7
    with pytest.raises(G.GraphError):
        G.core_by_folding_only(G.graph_of_word(W("ab")))


def test_trace_and_membership():
    g = K()
    assert G.trace_word(g, W("bbabA")) == g.basepoint
    v = G.trace_word(g, W("a"))
    assert v is not None and v != g.basepoint
    assert G.trace_word(g, Word()) == g.basepoint
    assert G.trace_word(g, W("ba")) is not None and not G.contains(g, W("aa"))


def test_unique_morphism_and_surjectivity():
    h = G.subgroup_graph([W("bbabA")])
    m = G.unique_morphism(h, K())
    assert m is not None and G.is_surjective(m)
    assert G.unique_morphism(G.subgroup_graph([W("a")]), G.subgroup_graph([W("b")])) is None
    ident = G.unique_morphism(K(), K())
    assert all(k == v for k, v in ident.vertex_map.items())
    m = G.unique_morphism(G.subgroup_graph([W("a")]), G.subgroup_graph([W("a"), W("b")]))
    assert m is not None and not G.is_surjective(m)


def test_whitehead_examples():
    assert wh(G.subgroup_graph([W("bbabA")])) == pairs("b.~b", "b.~a", "a.~b", "b.a", "~a.~b")
    assert wh(G.subgroup_graph([W("xyXY")])) == pairs("x.~y", "x.y", "~x.y", "~y.~x")
    assert wh(G.graph_of_word(W("a"))) == set()
    assert wh(G.subgroup_graph([W("b"), W("abA")])) == {
        "a.b", "a.~b", "~a.b", "~a.~b", "b.~b"}


def test_wedge_text():
    p = parse_wedge("~y.x")
    assert p == wedge(Letter("x"), Letter("y", True)) and format_wedge(p) == "x.~y"
    assert parse_wedge(["a", "~b"]) == parse_wedge("a.~b")
    with pytest.raises(G.GraphError):
        wedge(Letter("a"), Letter("a"))


def test_attach_conjugator():
    g = G.subgroup_graph([W("b")])
    assert G.attach_conjugator(g, Word()) is g
    h = G.core(G.attach_conjugator(g, W("a")))
    assert G.same_graph(h, G.subgroup_graph([W("abA")]))


def test_canonical_forms():
    g1 = G.subgroup_graph([W("bbabA")])
    g2 = G.core(G.bouquet_of_subgroup([W("abAbb")]).rebased(0))
    assert G.canonical_key(g1) == G.canonical_key(G.subgroup_graph([W("bbabA")]))
    assert not G.same_graph(G.subgroup_graph([W("ab")]), G.subgroup_graph([W("ba")]))
    assert not G.same_graph(g1, g2)
    cf, vmap, emap = G.canonical_form(g1)
    assert cf.basepoint == 0 and G.canonical_key(cf) == G.canonical_key(g1)


def test_hair():
    g = G.subgroup_graph([W("abcBA")])
    u, v = G.hair(g)
    assert u == W("ab")
    assert g.degree(v) == 3  # the hair edge plus both ends of the c loop
    assert G.hair(G.subgroup_graph([W("abc")]))[0] == Word()


def test_json_round_trip():
    g = K()
    h = G.graph_from_json(G.graph_to_json(g))
    assert G.same_graph(g, h)
    flipped = G.graph_from_json({"vertices": [0, 1], "basepoint": 0,
                                 "edges": [{"id": 0, "from": 1, "to": 0, "label": "~a"},
                                           {"id": 1, "from": 1, "to": 1, "label": "b"}]})
    assert G.same_graph(G.core(flipped), G.subgroup_graph([W("abA")]))


def test_dot_and_describe():
    assert G.to_dot(K()).startswith("digraph")
    assert G.describe(G.subgroup_graph([W("bbabA")])) == "<bbabA>"


@settings(max_examples=150, deadline=None)
@given(subgroups(), st.integers(0, 2**32))
def test_fold_matches_brute_force(gens, seed):
    # any folding order reaches the same core graph
    bouquet = G.bouquet_of_subgroup(gens)
    fast = G.core(bouquet)
    slow = brute_force_core(bouquet, random.Random(seed))
    assert isomorphic(fast, slow)
    assert G.canonical_key(fast) == G.canonical_key(G.core(slow))
    assert fast.is_core()


@settings(max_examples=150, deadline=None)
@given(subgroups(), st.lists(st.tuples(st.integers(0, 2), st.booleans()), max_size=5))
def test_products_of_generators_are_members(gens, idx):
    g = G.subgroup_graph(gens)
    idx = [(i % len(gens), s) for i, s in idx]
    assert G.contains(g, product_of(gens, idx))


@settings(max_examples=150, deadline=None)
@given(subgroups(), nontrivial_words())
def test_membership_matches_enlarging(gens, w):
    # w lies in H exactly when adding it does not change the core graph
    g = G.subgroup_graph(gens)
    bigger = G.subgroup_graph(gens + [w])
    assert G.contains(g, w) == G.same_graph(g, bigger)


@settings(max_examples=100, deadline=None)
@given(subgroups(), nontrivial_words())
def test_canonical_key_agrees_with_isomorphism(gens, w):
    g = G.subgroup_graph(gens)
    h = G.subgroup_graph(gens[:1] + [w])
    assert (G.canonical_key(g) == G.canonical_key(h)) == isomorphic(g, h)


@settings(max_examples=100, deadline=None)
@given(subgroups(), nontrivial_words())
def test_conjugated_surjection_stays_onto(gens, u):
    # a subgroup containing a cyclically reduced word keeps surjectivity after conjugation
    h_gens = gens[:1]
    if not h_gens[0].is_cyclically_reduced():
        return
    H, Kg = G.subgroup_graph(h_gens), G.subgroup_graph(gens)
    m = G.unique_morphism(H, Kg)
    if not G.is_surjective(m):
        return
    uH = G.subgroup_graph([u * w * u.inverse() for w in h_gens])
    uK = G.subgroup_graph([u * w * u.inverse() for w in gens])
    assert G.is_surjective(G.unique_morphism(uH, uK))


@given(nontrivial_words())
def test_path_whitehead_pairs(w):
    pairs = G.path_whitehead(w)
    expected = {wedge(w[i], w[i + 1].inverse()) for i in range(len(w) - 1)}
    assert pairs == expected


@settings(max_examples=100, deadline=None)
@given(subgroups())
def test_basis_generates_same_subgroup(gens):
    g = G.subgroup_graph(gens)
    basis = G.fundamental_group_basis(g)
    assert len(basis) == g.rank()
    assert G.same_graph(G.subgroup_graph(basis), g) if basis else not g.edges
