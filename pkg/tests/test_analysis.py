import random

import pytest
from hypothesis import given, settings, strategies as st

from fgr import graphs as G
from fgr.analysis import (AnalysisError, explore_counterexample_classes, explore_stencil_classes,
                          is_primitive_rank2, rewrite_in_subgroup_basis)
from fgr.category import FgrObject, apply_functor
from fgr.graphs import parse_wedge
from fgr.words import Word, parse_word, substitute

from conftest import product_of, random_valid_images, subgroups

COMMUTATOR_OBJECT = FgrObject("xy", [parse_wedge(p) for p in ("x.~y", "~x.y", "~y.~x", "x.~x")])


def W(text):
    return parse_word(text)


def test_rewrite_examples():
    basis = [W("b"), W("abA")]
    assert rewrite_in_subgroup_basis(W("bbabA"), basis) == W("ααβ")
    assert rewrite_in_subgroup_basis(W("a"), basis) is None
    assert rewrite_in_subgroup_basis(W("b"), basis) == W("α")
    assert rewrite_in_subgroup_basis(Word(), basis) == Word()


def test_rewrite_rejects_dependent_basis():
    with pytest.raises(AnalysisError):
        rewrite_in_subgroup_basis(W("a"), [W("a"), W("aa")])


@settings(max_examples=200, deadline=None)
@given(subgroups("ab", 3, 4), st.lists(st.tuples(st.integers(0, 2), st.booleans()), max_size=6))
def test_rewrite_recomposes(gens, idx):
    basis = G.fundamental_group_basis(G.subgroup_graph(gens))
    if not basis:
        return
    w = product_of(basis, [(i % len(basis), s) for i, s in idx])
    r = rewrite_in_subgroup_basis(w, basis)
    names = {n: b for n, b in zip("αβγδεζηθ", basis)}
    assert r is not None and substitute(r, names) == w


@pytest.mark.parametrize("word,expected", [
    ("ααβ", True), ("α,β,~α,~β", False), ("α", True), ("ab", True), ("aabb", False),
    ("abAB", False), ("aab", True), ("abb", True), ("abab", False), ("aa", False),
    ("aabaB", False),
])
def test_primitive_examples(word, expected):
    assert is_primitive_rank2(parse_word(word)) == expected


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=6))
def test_primitive_images_of_a(moves):
    # applying Nielsen moves to a keeps it primitive
    auts = [{"a": W("ab"), "b": W("b")}, {"a": W("Ba"), "b": W("b")},
            {"a": W("a"), "b": W("ba")}, {"a": W("a"), "b": W("aB")},
            {"a": W("b"), "b": W("a")}, {"a": W("A"), "b": W("b")}]
    w = W("a")
    for m in moves:
        w = substitute(w, auts[m])
    assert is_primitive_rank2(w, "ab")


def test_commutator_classes():
    ex = explore_stencil_classes(G.subgroup_graph([W("xyXY")]), COMMUTATOR_OBJECT)
    assert ex.closed and len(ex.classes) == 2
    got = {G.canonical_key(c.graph) for c in ex.classes}
    want = {G.canonical_key(G.subgroup_graph([W(w)])) for w in ("yxYX", "ytxYTX")}
    assert got == want


def test_single_loop_has_one_class():
    ex = explore_stencil_classes(G.subgroup_graph([W("a")]), FgrObject("a"))
    assert ex.closed and len(ex.classes) == 1


def test_counterexample_classes():
    ex = explore_counterexample_classes()
    assert ex.closed and len(ex.classes) == 5
    labels = {c.label for c in ex.classes}
    assert {"1", "5.1.1", "5.1.2", "2.1.1"} <= labels


def test_classes_are_stencil_spaces():
    rng = random.Random(5)
    ex = explore_counterexample_classes()
    for c in ex.classes:
        assert G.whitehead_graph(c.graph) <= c.obj.restrictions
        for _ in range(20):
            images = random_valid_images(rng, c.obj, "ab", 3)
            if images is None:
                continue
            image = apply_functor(images, c.graph)
            assert image.is_folded()
        if c.node.parent is not None:
            assert c.provenance()


def test_free_object_commutator_adds_trivial_image():
    # without the example's restrictions the word can also map to 1
    ex = explore_stencil_classes(G.subgroup_graph([W("xyXY")]), FgrObject("xy"))
    assert ex.closed
    trivial = [c for c in ex.classes if not c.graph.edges]
    assert len(trivial) == 1 and len(ex.classes) == 3


def test_budget_leaves_exploration_open():
    ex = explore_stencil_classes(G.subgroup_graph([W("xxxyy")]), FgrObject("xy"), budget=20)
    assert not ex.closed
