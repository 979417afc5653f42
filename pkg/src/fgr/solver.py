"""Surjectivity problems and the recursive case-splitting search.

A problem is a morphism of core graphs ``gamma -> delta`` together with an
object ``(U, N)``; it asks whether every admissible morphism out of the
object keeps the induced core morphism surjective.  Ambiguous problems are
split by cancellation type and children are closed early when they repeat,
or are contained in, problems already in the tree.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable

from . import graphs as G
from .category import (FgrMorphism, FgrObject, apply_functor, format_images,
                       images_to_json, is_isomorphism, validate)
from .graphs import LabeledGraph, canonical_key, format_wedge, wedge
from .partition import admissible_kinds, build_folding_morphism, triangle_split
from .words import Letter, Word, format_word, letter_image, tau


class SolverError(ValueError):
    pass


class Status(str, Enum):
    NEGATIVE = "Negative"
    STENCIL = "StencilPositive"
    AMBIGUOUS = "Ambiguous"
    BACK_EDGE = "BackEdge"
    EQUIVALENT = "Equivalent"
    CONTAINED = "ContainedIn"
    INCONCLUSIVE = "Inconclusive"


CLOSED = (Status.BACK_EDGE, Status.EQUIVALENT, Status.CONTAINED)


class Problem:
    """Normalized surjectivity problem.

    The basepoint of ``gamma`` is moved onto its cyclic core (a conjugation)
    and ``delta`` is rebased at the image vertex.  ``delta`` may be ``None``
    when only the graph is explored.
    """

    __slots__ = ("gamma", "delta", "obj", "conjugator", "_cmap", "_ckeys", "_wh")

    def __init__(self, gamma: LabeledGraph, delta: LabeledGraph | None, obj: FgrObject,
                 normalize: bool = True):
        gamma = G.core(gamma)
        delta = G.core(delta) if delta is not None else None
        self.conjugator = Word()
        if normalize:
            u, v = G.hair(gamma)
            if u:
                if delta is not None:
                    m = _morphism(gamma, delta)
                    delta = G.core(delta.rebased(m.vertex_map[v]))
                gamma = G.core(gamma.rebased(v))
                self.conjugator = u
        letters = gamma.alphabet() | (delta.alphabet() if delta is not None else set())
        if not letters <= set(obj.generators):
            raise SolverError(f"graphs use letters {sorted(letters - set(obj.generators))} "
                              "outside the object")
        self.gamma, self.delta, self.obj = gamma, delta, obj
        self._cmap = _morphism(gamma, delta) if delta is not None else None
        self._ckeys = None
        self._wh = None

    @property
    def morphism(self):
        return self._cmap

    def whitehead(self) -> frozenset:
        if self._wh is None:
            self._wh = G.whitehead_graph(self.gamma)
        return self._wh

    def unrestricted(self) -> frozenset:
        return self.whitehead() - self.obj.restrictions

    def key(self) -> tuple:
        dk = canonical_key(self.delta) if self.delta is not None else None
        return (canonical_key(self.gamma), dk)

    def conj_keys(self) -> dict:
        """Keys of the problem rebased at every vertex of ``gamma``."""
        if self._ckeys is None:
            out = {}
            for v in self.gamma.vertices:
                gk = canonical_key(self.gamma.rebased(v))
                if self.delta is None:
                    dk = None
                else:
                    d = G.core(self.delta.rebased(self._cmap.vertex_map[v]))
                    dk = canonical_key(d)
                out[v] = (gk, dk)
            self._ckeys = out
        return self._ckeys

    def to_json(self) -> dict:
        d = {"gamma": G.graph_to_json(self.gamma), "object": self.obj.to_json()}
        if self.delta is not None:
            d["delta"] = G.graph_to_json(self.delta)
        return d

    @classmethod
    def from_json(cls, data) -> "Problem":
        if isinstance(data, str):
            data = json.loads(data)
        gamma = _graph_input(data["gamma"])
        delta = _graph_input(data["delta"]) if data.get("delta") is not None else None
        obj = FgrObject.from_json(data["object"])
        return cls(gamma, delta, obj)


def _graph_input(data) -> LabeledGraph:
    if isinstance(data, dict) and "subgroup" in data:
        return G.subgroup_graph(Word.parse(w) if isinstance(w, str) else w
                                for w in data["subgroup"])
    if isinstance(data, list):
        return G.subgroup_graph(Word.parse(w) for w in data)
    return G.graph_from_json(data)


def _morphism(gamma, delta):
    m = G.unique_morphism(gamma, delta)
    if m is None:
        raise SolverError("no morphism from gamma to delta (subgroup not contained)")
    return m


def make_problem(gamma_gens: Iterable[Word], delta_gens: Iterable[Word] | None,
                 obj: FgrObject) -> Problem:
    gamma = G.subgroup_graph(gamma_gens)
    delta = G.subgroup_graph(delta_gens) if delta_gens is not None else None
    return Problem(gamma, delta, obj)


def classify(p: Problem) -> Status:
    if p.delta is not None and not G.is_surjective(p.morphism):
        return Status.NEGATIVE
    if not p.unrestricted():
        return Status.STENCIL
    return Status.AMBIGUOUS


def negative_witness(p: Problem) -> dict | None:
    """Images exhibiting a non-surjective instance of ``p``, or ``None``.

    Each generator goes to itself in the unrestricted free group; the
    functor is then the identity, so this is exactly the map gamma -> delta.
    """
    if p.delta is None:
        return None
    images = {g: Word.gen(g) for g in p.obj.generators}
    m = G.unique_morphism(G.core(apply_functor(images, p.gamma)),
                          G.core(apply_functor(images, p.delta)))
    if m is not None and G.is_surjective(m):
        return None
    return images


# actions chosen by pickers


@dataclass(frozen=True)
class Split:
    x: Letter
    y: Letter

    def describe(self):
        return f"split at {self.x}.{self.y}"


@dataclass(frozen=True)
class Triangle:
    x: Letter  # x.y is restricted
    y: Letter
    z: Letter

    def describe(self):
        return f"triangle on {self.x}.{self.y} with {self.z}"


def split(p: Problem, x: Letter, y: Letter) -> list:
    """Children ``(kind, folding, problem)`` for every admissible kind."""
    if wedge(x, y) not in p.unrestricted():
        raise SolverError(f"{x}.{y} is not an unrestricted edge of the Whitehead graph")
    out = []
    for kind in admissible_kinds(p.obj, x, y):
        fm = build_folding_morphism(p.obj, x, y, kind)
        out.append((kind, fm, _push(p, fm)))
    return out


def triangle_children(p: Problem, x: Letter, y: Letter, z: Letter) -> list:
    f1, f2 = triangle_split(p.obj, x, y, z)
    return [(f1, _push(p, f1)), (f2, _push(p, f2))]


def _push(p: Problem, fm) -> Problem:
    if fm.kind == 1:
        return Problem(p.gamma, p.delta, fm.target, normalize=False)
    gamma = apply_functor(fm.morphism, p.gamma)
    delta = apply_functor(fm.morphism, p.delta) if p.delta is not None else None
    return Problem(gamma, delta, fm.target)


def lex_picker(node: "Node"):
    """Least unrestricted edge; the triangle rule when it applies there."""
    p = node.problem
    free = p.unrestricted()
    a, b = min(free)
    for z, other in ((a, b), (b, a)):
        for c in sorted(free):
            if z not in c or c == (a, b):
                continue
            y2 = c[1] if c[0] == z else c[0]
            if y2 != other and wedge(other, y2) in p.obj.restrictions:
                return Triangle(other, y2, z)
    return Split(a, b)


class ScriptedPicker:
    """Replays fixed actions by node label and falls back to another picker."""

    def __init__(self, script: dict, fallback: Callable = lex_picker):
        self.script = {k: _parse_action(v) for k, v in script.items()}
        self.fallback = fallback

    def __call__(self, node):
        act = self.script.get(node.label)
        if act is None:
            return self.fallback(node)
        return act


def _parse_action(v):
    if isinstance(v, (Split, Triangle)):
        return v
    kind, *letters = v
    ls = [Letter.parse(s) for s in letters]
    if kind == "split":
        return Split(*ls)
    if kind == "triangle":
        return Triangle(*ls)
    raise SolverError(f"unknown action {kind!r}")


# equivalence and containment witnesses


@dataclass
class Witness:
    images: dict
    isomorphism: bool
    vertex: int = 0  # vertex of the contained problem's gamma matching the basepoint


def _reduced_paths(g: LabeledGraph, start: int, max_len: int):
    """Reduced edge paths from ``start``: (word, vertices, edge ids)."""
    out = []

    def rec(v, letters, verts, eids, back):
        for x, w, h in g.out(v):
            if h == back:
                continue
            nl, nv, ne = letters + [x], verts + [w], eids + [h[0]]
            out.append((Word._raw(tuple(nl)), nv, ne))
            if len(nl) < max_len:
                rec(w, nl, nv, ne, (h[0], not h[1]))

    rec(start, [], [], [], None)
    return out


def _edge_plan(g: LabeledGraph) -> list:
    """Edges in depth-first order, each with an already reached endpoint."""
    plan, seen_v, seen_e = [], {g.basepoint}, set()
    stack = [g.basepoint]
    while stack:
        v = stack.pop()
        for x, w, h in g.out(v):
            if h[0] in seen_e:
                continue
            seen_e.add(h[0])
            plan.append((v, x, w))
            if w not in seen_v:
                seen_v.add(w)
                stack.append(w)
    return plan


def _pair_ok(images, a: Letter, b: Letter, M) -> bool:
    ta, tb = tau(letter_image(a, images)), tau(letter_image(b, images))
    return ta != tb and wedge(ta, tb) in M


def _stencil_matches(src: Problem, dst: Problem, max_len: int, letters_only: bool):
    """Morphisms out of ``src.obj`` sending ``src.gamma`` isomorphically onto ``dst.gamma``.

    Yields ``(images, w)`` where ``w`` is the vertex of ``dst.gamma`` hit
    by the basepoint.  Only generators labelling ``src.gamma`` get images.
    """
    T, D = src.gamma, dst.gamma
    M = dst.obj.restrictions
    N = src.obj.restrictions
    if T.rank() != D.rank():
        return
    nE_T, nE_D = len(T.edges), len(D.edges)
    if nE_D < nE_T or nE_D > max_len * nE_T:
        return
    degT = {v: T.degree(v) for v in T.vertices}
    degD = {v: D.degree(v) for v in D.vertices}
    if sum(1 for v in D.vertices if degD[v] != 2) > len(T.vertices):
        return
    if letters_only and (nE_D != nE_T or len(D.vertices) != len(T.vertices)):
        return
    plan = _edge_plan(T)
    # restrictions involving a generator, checked once both sides are assigned
    by_gen: dict = {}
    for a, b in N:
        by_gen.setdefault(a.gen, []).append((a, b))
        by_gen.setdefault(b.gen, []).append((a, b))
    paths_cache: dict = {}

    def paths_from(v):
        if v not in paths_cache:
            paths_cache[v] = _reduced_paths(D, v, 1 if letters_only else max_len)
        return paths_cache[v]

    images: dict = {}
    vmap: dict = {}
    vimg: set = set()
    used: set = set()
    interior: set = set()

    def image_ok(g: str) -> bool:
        w = images[g]
        if not (G.path_whitehead(w) <= M):
            return False
        for a, b in by_gen.get(g, ()):
            if a.gen in images and b.gen in images and not _pair_ok(images, a, b, M):
                return False
        return True

    def walk(a, word):
        """Follow ``word`` from ``a``; returns (edges, interior, end) or None."""
        es, mids = [], []
        v = a
        for i, x in enumerate(word):
            nxt = None
            for y, w, h in D.out(v):
                if y == x:
                    nxt = (w, h[0])
                    break
            if nxt is None:
                return None
            v, e = nxt
            es.append(e)
            if i < len(word) - 1:
                mids.append(v)
        return es, mids, v

    def rec(i):
        if i == len(plan):
            if len(used) == nE_D:
                yield dict(images)
            return
        v, x, w = plan[i]
        a = vmap[v]
        if x.gen in images:
            cands = [(letter_image(x, images), None)]
        else:
            cands = [(pw, None) for pw, _, _ in paths_from(a)]
        for word, _ in cands:
            r = walk(a, word)
            if r is None:
                continue
            es, mids, b = r
            if len(set(es)) != len(es) or used.intersection(es):
                continue
            if any(degD[m] != 2 or m in vimg or m in interior for m in mids):
                continue
            if len(set(mids)) != len(mids):
                continue
            if w in vmap:
                if vmap[w] != b:
                    continue
            elif b in vimg or b in interior or b in mids or degD[b] != degT[w]:
                continue
            new_gen = x.gen not in images
            if new_gen:
                images[x.gen] = word.inverse() if x.inverted else word
                if not image_ok(x.gen):
                    del images[x.gen]
                    continue
            new_v = w not in vmap
            if new_v:
                vmap[w] = b
                vimg.add(b)
            used.update(es)
            interior.update(mids)
            yield from rec(i + 1)
            used.difference_update(es)
            interior.difference_update(mids)
            if new_v:
                del vmap[w]
                vimg.discard(b)
            if new_gen:
                del images[x.gen]

    for start in D.vertices:
        if degD[start] != degT[T.basepoint]:
            continue
        vmap[T.basepoint] = start
        vimg.add(start)
        for imgs in rec(0):
            yield imgs, start
        vimg.discard(start)
        del vmap[T.basepoint]


def _complete_images(src: Problem, dst: Problem, partial: dict, max_len: int,
                     letters_only: bool):
    """Extend ``partial`` to all generators of ``src.obj`` (lexicographic order)."""
    free = [g for g in src.obj.generators if g not in partial]
    if not free:
        yield dict(partial)
        return
    alphabet = G.letters_of(dst.obj.generators)
    words = [Word._raw((x,)) for x in alphabet]
    if not letters_only:
        layer = list(words)
        for _ in range(max_len - 1):
            layer = [w * Word._raw((x,)) for w in layer for x in alphabet
                     if w[-1] != x.inverse()]
            words.extend(layer)

    def rec(i, images):
        if i == len(free):
            yield dict(images)
            return
        for w in words:
            images[free[i]] = w
            yield from rec(i + 1, images)
        del images[free[i]]

    yield from rec(0, dict(partial))


def find_equivalence(p: Problem, q: Problem, max_image_len: int = 2,
                     letters_only: bool = False, stencil_only: bool = True,
                     limit: int = 20000):
    """A morphism ``gamma`` out of ``q.obj`` showing ``p`` is contained in ``q``.

    The witness satisfies that the core image of ``q`` under ``gamma`` is
    ``p`` up to conjugation, and ``gamma`` is a valid morphism into
    ``p.obj``.  With ``letters_only`` the witness must be an isomorphism,
    certifying equivalence.  By default only witnesses whose subdivided
    image of ``q.gamma`` is already folded are searched; ``stencil_only=False``
    enumerates all short substitutions instead.
    """
    if (p.delta is None) != (q.delta is None):
        return None
    if letters_only:
        if len(p.obj.generators) != len(q.obj.generators) or \
                len(p.obj.restrictions) != len(q.obj.restrictions):
            return None
    if stencil_only:
        return _find_stencil(p, q, max_image_len, letters_only, limit)
    return _find_enumerated(p, q, max_image_len, letters_only, limit)


def _accept(p: Problem, q: Problem, images: dict, vertex, letters_only: bool):
    m = FgrMorphism(q.obj, p.obj, images)
    if validate(m) is not None:
        return None
    iso = is_isomorphism(m)
    if letters_only and not iso:
        return None
    if vertex is None:
        cand = Problem(apply_functor(images, q.gamma),
                       apply_functor(images, q.delta) if q.delta is not None else None,
                       p.obj)
        key = cand.key()
        for v, k in p.conj_keys().items():
            if k == key:
                return Witness(images, iso, v)
        return None
    if q.delta is not None:
        d = G.core(apply_functor(images, q.delta))
        if canonical_key(d) != p.conj_keys()[vertex][1]:
            return None
    return Witness(images, iso, vertex)


def check_witness(p: Problem, q: Problem, images: dict):
    """Witness built from given images of ``q``'s generators, or ``None``."""
    return _accept(p, q, images, None, False)


def _find_stencil(p, q, max_len, letters_only, limit):
    tried = 0
    for partial, w in _stencil_matches(q, p, max_len, letters_only):
        for images in _complete_images(q, p, partial, max_len, letters_only):
            tried += 1
            if tried > limit:
                return None
            wit = _accept(p, q, images, w, letters_only)
            if wit is not None:
                return wit
    return None


def _find_enumerated(p, q, max_len, letters_only, limit):
    tried = 0
    for images in _complete_images(q, p, {}, 1 if letters_only else max_len, letters_only):
        tried += 1
        if tried > limit:
            return None
        if any(not w for w in images.values()):
            continue
        wit = _accept(p, q, images, None, letters_only)
        if wit is not None:
            return wit
    return None


# the search tree


@dataclass(eq=False)
class Node:
    label: str
    problem: Problem
    parent: "Node | None" = None
    via: object = None  # folding morphism from the parent
    status: Status = Status.AMBIGUOUS
    target: "Node | None" = None
    witness: Witness | None = None
    action: object = None
    children: list = field(default_factory=list)

    def ancestors(self):
        n = self.parent
        while n is not None:
            yield n
            n = n.parent

    def is_open(self) -> bool:
        return self.status == Status.AMBIGUOUS and self.action is None

    def __repr__(self):
        return f"Node({self.label!r}, {self.status.value})"


def _child_label(parent: str, suffix: str) -> str:
    return suffix if not parent else f"{parent}.{suffix}"


class CaseTree:
    """All nodes of one search, possibly with several roots."""

    def __init__(self):
        self.roots: list = []
        self.nodes: dict = {}

    def add(self, node: Node):
        if node.label in self.nodes:
            raise SolverError(f"duplicate node label {node.label}")
        self.nodes[node.label] = node

    def __getitem__(self, label) -> Node:
        return self.nodes[label]

    def labels(self, status: Status) -> set:
        return {n.label for n in self.nodes.values() if n.status == status}

    def stencil_leaves(self) -> set:
        return self.labels(Status.STENCIL)

    def edges(self, status: Status) -> set:
        return {(n.label, n.target.label) for n in self.nodes.values() if n.status == status}

    def containments(self) -> set:
        return self.edges(Status.CONTAINED)

    def back_edges(self) -> set:
        return self.edges(Status.BACK_EDGE)

    def equivalences(self) -> set:
        return self.edges(Status.EQUIVALENT)

    def _reach(self, start: Node) -> list:
        seen, stack, out = {id(start)}, [start], []
        while stack:
            n = stack.pop()
            out.append(n)
            nxt = list(n.children)
            if n.target is not None:
                nxt.append(n.target)
            for m in nxt:
                if id(m) not in seen:
                    seen.add(id(m))
                    stack.append(m)
        return out

    def verdict_of(self, root: Node) -> str:
        reach = self._reach(root)
        if any(n.status == Status.NEGATIVE for n in reach):
            return "Negative"
        if any(n.status == Status.INCONCLUSIVE for n in reach):
            return "Inconclusive"
        return "Positive"

    @property
    def verdict(self) -> str:
        vs = [self.verdict_of(r) for r in self.roots]
        if "Negative" in vs:
            return "Negative"
        if "Inconclusive" in vs:
            return "Inconclusive"
        return "Positive"

    def to_json(self) -> dict:
        return {"verdict": self.verdict,
                "roots": [r.label for r in self.roots],
                "nodes": [_node_json(n) for n in self.nodes.values()]}


def _node_json(n: Node) -> dict:
    p = n.problem
    d = {
        "label": n.label,
        "status": n.status.value,
        "parent": n.parent.label if n.parent else None,
        "generators": list(p.obj.generators),
        "restrictions": [format_wedge(e) for e in sorted(p.obj.restrictions)],
        "gamma": [format_word(w) for w in G.fundamental_group_basis(p.gamma)],
        "unrestricted": [format_wedge(e) for e in sorted(p.unrestricted())],
    }
    if p.delta is not None:
        d["delta"] = [format_word(w) for w in G.fundamental_group_basis(p.delta)]
    if n.via is not None:
        d["via"] = n.via.to_json()
    if n.action is not None:
        d["action"] = n.action.describe()
    if n.target is not None:
        d["target"] = n.target.label
        d.update(witness=images_to_json(n.witness.images)["images"])
    if n.status == Status.NEGATIVE:
        w = negative_witness(p)
        if w is not None:
            d["counterexample"] = images_to_json(w)["images"]
    return d


class Solver:
    """Worklist expansion with repeat and containment detection.

    Children of an expanded node are classified in order.  An ambiguous
    child is compared with existing nodes: an isomorphic copy of an ancestor
    gives a back edge, of another node an equivalence, and a short
    substitution from another node's object gives a containment.  A
    containment is only accepted when it closes no cycle of dependencies,
    and an equivalence only when no cycle through it uses a containment.
    """

    def __init__(self, picker: Callable | None = None, budget: int = 2000,
                 max_witness_len: int = 2, parallel: bool = False):
        self.picker = picker or lex_picker
        self.budget = budget
        self.max_witness_len = max_witness_len
        self.parallel = parallel
        self.tree = CaseTree()
        self._order: list = []  # registration order

    def add_root(self, problem: Problem, label: str = "") -> Node:
        node = Node(label, problem)
        node.status = classify(problem)
        self.tree.roots.append(node)
        self._register(node)
        return node

    def _register(self, node: Node):
        self.tree.add(node)
        self._order.append(node)

    def run(self) -> CaseTree:
        stack = [r for r in reversed(self.tree.roots)]
        while stack:
            node = stack.pop()
            if not node.is_open():
                continue
            if len(self.tree.nodes) >= self.budget:
                node.status = Status.INCONCLUSIVE
                continue
            kids = self._expand(node)
            for k in reversed(kids):
                if k.is_open():
                    stack.append(k)
        return self.tree

    def _expand(self, node: Node) -> list:
        p = node.problem
        act = self.picker(node)
        node.action = act
        if isinstance(act, Split):
            made = [(str(kind), fm, q) for kind, fm, q in split(p, act.x, act.y)]
        else:
            (f1, q1), (f2, q2) = triangle_children(p, act.x, act.y, act.z)
            made = [("1", f1, q1), ("1'", f2, q2)]
        kids = []
        for suffix, fm, q in made:
            child = Node(_child_label(node.label, suffix), q, node, fm)
            child.status = classify(q)
            node.children.append(child)
            self._register(child)
            if child.status == Status.AMBIGUOUS:
                self._close(child)
            kids.append(child)
        return kids

    def _iso_candidates(self, node: Node) -> list:
        sibs = [c for c in node.parent.children if c is not node] if node.parent else []
        anc = list(node.ancestors())
        seen = {id(n) for n in sibs + anc} | {id(node)}
        rest = [n for n in self._order if id(n) not in seen]
        cands = sibs + anc + rest
        return [c for c in cands if c.status != Status.NEGATIVE]

    def _close(self, node: Node):
        p = node.problem
        anc = {id(a) for a in node.ancestors()}
        cands = self._iso_candidates(node)
        for c in cands:
            if c.problem.key() == p.key() and c.problem.obj == p.obj:
                if self._allowed(node, c, iso=True):
                    wit = Witness({g: Word.gen(g) for g in p.obj.generators}, True, p.gamma.basepoint)
                    self._mark(node, c, wit, iso=True, ancestor=id(c) in anc)
                    return
        wit_c = self._search(p, cands, letters_only=True)
        for c, wit in wit_c:
            if self._allowed(node, c, iso=True):
                self._mark(node, c, wit, iso=True, ancestor=id(c) in anc)
                return
        cands = [c for c in self._order if c is not node and id(c) not in anc
                 and c.status != Status.NEGATIVE]
        for c, wit in self._search(p, cands, letters_only=False):
            if self._allowed(node, c, iso=False):
                self._mark(node, c, wit, iso=False, ancestor=False)
                return

    def _search(self, p: Problem, cands: list, letters_only: bool):
        def probe(c):
            return find_equivalence(p, c.problem, self.max_witness_len, letters_only=letters_only)

        if self.parallel and len(cands) > 1:
            with ThreadPoolExecutor() as ex:
                results = list(ex.map(probe, cands))
            for c, wit in zip(cands, results):
                if wit is not None:
                    yield c, wit
            return
        for c in cands:
            wit = probe(c)
            if wit is not None:
                yield c, wit

    def _mark(self, node, target, wit, iso, ancestor):
        if iso:
            node.status = Status.BACK_EDGE if ancestor else Status.EQUIVALENT
        else:
            node.status = Status.CONTAINED
        node.target = target
        node.witness = wit

    def _allowed(self, node: Node, target: Node, iso: bool) -> bool:
        # paths from target back to node; node is reachable only through its parent
        start = (target, False)
        seen = {(id(target), False)}
        stack = [start]
        while stack:
            n, used = stack.pop()
            if n is node:
                if not iso or used:
                    return False
                continue
            nxt = [(c, used) for c in n.children]
            if n.target is not None:
                nxt.append((n.target, used or n.status == Status.CONTAINED))
            for m, u in nxt:
                k = (id(m), u)
                if k not in seen:
                    seen.add(k)
                    stack.append((m, u))
        return True


def solve(root: Problem, budget: int = 2000, picker: Callable | None = None,
          max_witness_len: int = 2, label: str = "P", parallel: bool = False) -> CaseTree:
    s = Solver(picker, budget, max_witness_len, parallel)
    s.add_root(root, label)
    return s.run()


def render_report(t: CaseTree) -> str:
    """Indented listing of the tree in label order."""
    lines = []

    def show(n: Node, depth: int):
        p = n.problem
        words = ", ".join(format_word(w) for w in G.fundamental_group_basis(p.gamma))
        rs = ", ".join(format_wedge(e) for e in sorted(p.obj.restrictions))
        head = f"{'  ' * depth}{n.label or '.'}: {n.status.value}"
        if n.target is not None:
            head += f" -> {n.target.label} via {format_images(n.witness.images)}"
        lines.append(head)
        pad = "  " * (depth + 1)
        lines.append(f"{pad}gamma <{words}>  U={{{', '.join(p.obj.generators)}}}  N={{{rs}}}")
        if n.status == Status.AMBIGUOUS and n.action is not None:
            free = ", ".join(format_wedge(e) for e in sorted(p.unrestricted()))
            lines.append(f"{pad}unrestricted {{{free}}}; {n.action.describe()}")
        for c in n.children:
            show(c, depth + 1)

    for r in t.roots:
        show(r, 0)
    lines.append(f"verdict: {t.verdict}")
    return "\n".join(lines)
