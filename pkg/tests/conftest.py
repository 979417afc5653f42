"""Independent oracles and hypothesis strategies shared by the test modules."""

from __future__ import annotations

import random

import networkx as nx
from hypothesis import strategies as st

from fgr import graphs as G
from fgr.category import FgrMorphism, FgrObject, validate
from fgr.graphs import full_whitehead
from fgr.words import Letter, Word


def naive_reduce(letters) -> list:
    """Delete the leftmost cancelling pair until none is left."""
    seq = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            a, b = seq[i], seq[i + 1]
            if a.gen == b.gen and a.inverted != b.inverted:
                del seq[i:i + 2]
                changed = True
                break
    return seq


def brute_force_core(g: G.LabeledGraph, rng: random.Random | None = None) -> G.LabeledGraph:
    """Fold any foldable pair (in a random order), then trim leaves one by one."""
    rng = rng or random.Random(0)
    while True:
        pairs = []
        for v in g.vertices:
            hs = [(g.label(h), h) for h in g.half_edges() if g.initial(h) == v]
            for i in range(len(hs)):
                for j in range(i + 1, len(hs)):
                    if hs[i][0] == hs[j][0] and hs[i][1][0] != hs[j][1][0]:
                        pairs.append((hs[i][1], hs[j][1]))
        if not pairs:
            break
        g = G.fold_step(g, *rng.choice(pairs))
    while True:
        leaves = [v for v in g.vertices if v != g.basepoint and g.degree(v) == 1]
        if not leaves:
            return g
        v = leaves[0]
        edges = {e: t for e, t in g.edges.items() if v not in (t[0], t[1])}
        g = G.LabeledGraph([u for u in g.vertices if u != v], edges, g.basepoint)


def to_networkx(g: G.LabeledGraph) -> nx.MultiDiGraph:
    h = nx.MultiDiGraph()
    for v in g.vertices:
        h.add_node(v, base=(v == g.basepoint))
    for s, d, x in g.edges.values():
        h.add_edge(s, d, label=x)
    return h


def isomorphic(g: G.LabeledGraph, h: G.LabeledGraph) -> bool:
    """Pointed labeled isomorphism, checked by networkx."""
    return nx.is_isomorphic(
        to_networkx(g), to_networkx(h),
        node_match=lambda a, b: a["base"] == b["base"],
        edge_match=lambda a, b: sorted(e["label"] for e in a.values())
        == sorted(e["label"] for e in b.values()),
    )


def product_of(gens, indices) -> Word:
    w = Word()
    for i, sign in indices:
        w = w * (gens[i] if sign else gens[i].inverse())
    return w


# random generation


def random_word(rng: random.Random, alphabet, max_len: int, min_len: int = 1) -> Word:
    while True:
        n = rng.randint(min_len, max_len)
        w = Word(Letter(rng.choice(alphabet), rng.random() < 0.5) for _ in range(n))
        if len(w) >= min_len:
            return w


def random_object(rng: random.Random, gens, density: float = 0.4) -> FgrObject:
    pairs = sorted(full_whitehead(gens))
    return FgrObject(gens, [p for p in pairs if rng.random() < density])


def random_valid_images(rng, obj: FgrObject, alphabet, max_len: int, codomain=None,
                        tries: int = 500):
    """Rejection sample images making a valid morphism out of ``obj``."""
    for _ in range(tries):
        images = {g: random_word(rng, alphabet, max_len) for g in obj.generators}
        if validate(FgrMorphism(obj, codomain, images)) is None:
            return images
    return None


letters_ab = st.builds(Letter, st.sampled_from("ab"), st.booleans())
letters_abc = st.builds(Letter, st.sampled_from("abc"), st.booleans())


def words(alphabet="abc", max_size=10, min_size=0):
    lt = st.builds(Letter, st.sampled_from(alphabet), st.booleans())
    return st.lists(lt, min_size=min_size, max_size=max_size).map(Word).filter(
        lambda w: len(w) >= min_size)


def nontrivial_words(alphabet="abc", max_size=6):
    return words(alphabet, max_size, 1)


def subgroups(alphabet="abc", max_gens=3, max_size=6):
    return st.lists(nontrivial_words(alphabet, max_size), min_size=1, max_size=max_gens)


# acceptance lines, echoed after the run so they show without -s
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
