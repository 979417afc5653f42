"""Pointed labeled graphs in the sense of Serre and Stallings folding.

Every undirected edge is stored once, oriented so that it reads a positive
generator from ``src`` to ``dst``.  A half-edge is a pair ``(edge_id,
inverted)``; the reverse half-edge flips the flag.  Vertex and edge ids are
opaque integers and graphs are compared through :func:`canonical_key`.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .words import Letter, Word, inverse, parse_word, format_word


class GraphError(ValueError):
    pass


WEdge = tuple  # unordered pair of distinct letters, stored sorted


def wedge(x: Letter, y: Letter) -> WEdge:
    if x == y:
        raise GraphError(f"degenerate Whitehead edge {x}.{y}")
    return (x, y) if x < y else (y, x)


def format_wedge(p: WEdge) -> str:
    return f"{p[0]}.{p[1]}"


def parse_wedge(text) -> WEdge:
    if isinstance(text, str):
        a, b = text.split(".")
    else:
        a, b = text
    return wedge(Letter.parse(a), Letter.parse(b))


def letters_of(gens: Iterable[str]) -> list:
    out = []
    for g in gens:
        out.append(Letter(g))
        out.append(Letter(g, True))
    return out


def full_whitehead(gens: Iterable[str]) -> frozenset:
    """All pairs of distinct letters over ``gens``."""
    return frozenset(wedge(a, b) for a, b in combinations(letters_of(gens), 2))


class LabeledGraph:
    """Immutable pointed graph labeled by generator names.

    ``edges`` maps an edge id to ``(src, dst, gen)``.
    """

    __slots__ = ("vertices", "edges", "basepoint", "_out", "_key")

    def __init__(self, vertices: Iterable[int], edges: Mapping[int, tuple],
                 basepoint: int, check: bool = True):
        self.vertices = tuple(sorted(set(vertices)))
        self.edges = dict(edges)
        self.basepoint = basepoint
        self._out = None
        self._key = None
        if check:
            self._check()

    def _check(self):
        vs = set(self.vertices)
        if self.basepoint not in vs:
            raise GraphError("basepoint is not a vertex")
        for eid, (s, d, g) in self.edges.items():
            if s not in vs or d not in vs:
                raise GraphError(f"edge {eid} has an endpoint outside the graph")
        seen = {self.basepoint}
        stack = [self.basepoint]
        while stack:
            v = stack.pop()
            for _, w, _ in self.out(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != vs:
            raise GraphError("graph is not connected")

    def out(self, v: int) -> list:
        """Outgoing half-edges at ``v`` as ``(letter, target, half_edge)``."""
        if self._out is None:
            out = {u: [] for u in self.vertices}
            for eid in sorted(self.edges):
                s, d, g = self.edges[eid]
                out[s].append((Letter(g), d, (eid, False)))
                out[d].append((Letter(g, True), s, (eid, True)))
            for u in out:
                out[u].sort(key=lambda t: (t[0], t[2]))
            self._out = out
        return self._out[v]

    def initial(self, h) -> int:
        s, d, _ = self.edges[h[0]]
        return d if h[1] else s

    def terminal(self, h) -> int:
        s, d, _ = self.edges[h[0]]
        return s if h[1] else d

    def label(self, h) -> Letter:
        return Letter(self.edges[h[0]][2], h[1])

    def half_edges(self) -> list:
        return [(e, b) for e in sorted(self.edges) for b in (False, True)]

    def degree(self, v: int) -> int:
        return len(self.out(v))

    def alphabet(self) -> set:
        return {g for _, _, g in self.edges.values()}

    def rank(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def is_folded(self) -> bool:
        for v in self.vertices:
            labels = [x for x, _, _ in self.out(v)]
            if len(labels) != len(set(labels)):
                return False
        return True

    def is_core(self) -> bool:
        return self.is_folded() and all(
            self.degree(v) > 1 for v in self.vertices if v != self.basepoint)

    def step(self, v: int, x: Letter):
        for y, w, _ in self.out(v):
            if y == x:
                return w
        return None

    def rebased(self, v: int) -> "LabeledGraph":
        if v not in self.vertices:
            raise GraphError(f"{v} is not a vertex")
        return LabeledGraph(self.vertices, self.edges, v, check=False)

    def __eq__(self, other):
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return (self.vertices == other.vertices and self.edges == other.edges
                and self.basepoint == other.basepoint)

    def __hash__(self):
        return hash((self.vertices, self.basepoint, len(self.edges)))

    def __repr__(self):
        return (f"LabeledGraph({len(self.vertices)} vertices, "
                f"{len(self.edges)} edges, basepoint={self.basepoint})")


@dataclass
class GraphMorphism:
    source: LabeledGraph
    target: LabeledGraph
    vertex_map: dict
    edge_map: dict  # positive edges go to positive edges


# construction


def graph_of_word(w: Word) -> LabeledGraph:
    """Path graph reading ``w`` from the basepoint 0."""
    edges = {}
    for i, x in enumerate(w):
        edges[i] = (i + 1, i, x.gen) if x.inverted else (i, i + 1, x.gen)
    return LabeledGraph(range(len(w) + 1), edges, 0)


def add_path(vertices: list, edges: dict, start: int, end: int, w: Word):
    # path from start to end reading w, with fresh interior vertices
    cur = start
    nxt = max(vertices) + 1
    for i, x in enumerate(w):
        if i == len(w) - 1:
            tgt = end
        else:
            tgt = nxt
            vertices.append(tgt)
            nxt += 1
        eid = len(edges)
        while eid in edges:
            eid += 1
        edges[eid] = (tgt, cur, x.gen) if x.inverted else (cur, tgt, x.gen)
        cur = tgt


def bouquet_of_subgroup(generators: Iterable[Word]) -> LabeledGraph:
    """Wedge of cycles at the basepoint, one reading each generator."""
    vertices, edges = [0], {}
    for w in generators:
        if not w:
            raise GraphError("identity generator in subgroup presentation")
        add_path(vertices, edges, 0, 0, w)
    return LabeledGraph(vertices, edges, 0)


def attach_conjugator(g: LabeledGraph, u: Word) -> LabeledGraph:
    """Glue a path reading ``u`` that ends at the basepoint.

    The free end becomes the new basepoint, so the fundamental group is
    conjugated by ``u``.
    """
    if not u:
        return g
    vertices = list(g.vertices)
    edges = dict(g.edges)
    new = max(vertices) + 1
    vertices.append(new)
    add_path(vertices, edges, new, g.basepoint, u)
    return LabeledGraph(vertices, edges, new)


# folding and trimming


def fold_step(g: LabeledGraph, e, f) -> LabeledGraph:
    """Fold two half-edges with the same origin and label."""
    if e == f or e[0] == f[0]:
        raise GraphError("fold_step needs two distinct edges")
    if g.initial(e) != g.initial(f) or g.label(e) != g.label(f):
        raise GraphError("edges do not share origin and label")
    keep, drop = g.terminal(e), g.terminal(f)
    if drop == g.basepoint:
        keep, drop = drop, keep

    def ren(v):
        return keep if v == drop else v

    edges = {}
    for eid, (s, d, x) in g.edges.items():
        if eid != f[0]:
            edges[eid] = (ren(s), ren(d), x)
    vertices = [v for v in g.vertices if v != drop or drop == keep]
    return LabeledGraph(vertices, edges, g.basepoint)


def foldable_pairs(g: LabeledGraph) -> list:
    out = []
    for v in g.vertices:
        hs = g.out(v)
        for (x, _, h1), (y, _, h2) in combinations(hs, 2):
            if x == y and h1[0] != h2[0]:
                out.append((h1, h2))
    return out


def fold(g: LabeledGraph) -> LabeledGraph:
    """Complete Stallings folding with union-find and a worklist."""
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    out = {v: {} for v in g.vertices}
    queue = deque()
    for eid in sorted(g.edges):
        s, d, x = g.edges[eid]
        queue.append((s, Letter(x), d))
        queue.append((d, Letter(x, True), s))
    while queue:
        s, x, d = queue.popleft()
        s, d = find(s), find(d)
        t = out[s].get(x)
        if t is None:
            out[s][x] = d
            continue
        t = find(t)
        if t == d:
            continue
        a, b = t, d
        if b == find(g.basepoint) or len(out[a]) < len(out[b]):
            a, b = b, a
        parent[b] = a
        for y, w in out.pop(b).items():
            queue.append((a, y, w))
        queue.append((s, x, d))

    edges = {}
    for v in sorted(out):
        for x in sorted(out[v]):
            if not x.inverted:
                edges[len(edges)] = (v, find(out[v][x]), x.gen)
    return LabeledGraph(out.keys(), edges, find(g.basepoint), check=False)


def trim(g: LabeledGraph) -> LabeledGraph:
    """Repeatedly delete degree-one vertices other than the basepoint."""
    deg = {v: 0 for v in g.vertices}
    inc = {v: [] for v in g.vertices}
    for eid, (s, d, _) in g.edges.items():
        deg[s] += 1
        deg[d] += 1
        inc[s].append(eid)
        inc[d].append(eid)
    dead_v, dead_e = set(), set()
    stack = [v for v in g.vertices if v != g.basepoint and deg[v] <= 1]
    while stack:
        v = stack.pop()
        if v in dead_v or deg[v] > 1:
            continue
        dead_v.add(v)
        for eid in inc[v]:
            if eid in dead_e:
                continue
            dead_e.add(eid)
            s, d, _ = g.edges[eid]
            w = d if s == v else s
            deg[v] -= 1
            deg[w] -= 1
            if w != g.basepoint and deg[w] <= 1:
                stack.append(w)
    if not dead_v:
        return g
    return LabeledGraph(
        [v for v in g.vertices if v not in dead_v],
        {e: t for e, t in g.edges.items() if e not in dead_e},
        g.basepoint, check=False)


def core(g: LabeledGraph) -> LabeledGraph:
    return trim(fold(g))


def core_by_folding_only(g: LabeledGraph) -> LabeledGraph:
    """Core of a graph whose non-basepoint vertices need no trimming.

    Requires every vertex other than the basepoint to carry two incident
    edges with distinct labels; raises if trimming turns out to be needed.
    """
    for v in g.vertices:
        if v != g.basepoint and len({x for x, _, _ in g.out(v)}) < 2:
            raise GraphError(f"vertex {v} lacks two distinctly labeled edges")
    h = fold(g)
    if trim(h) is not h:
        raise GraphError("folding alone did not produce a core graph")
    return h


def subgroup_graph(generators: Iterable[Word]) -> LabeledGraph:
    return core(bouquet_of_subgroup(list(generators)))


# queries


def _require_folded(*gs):
    for g in gs:
        if not g.is_folded():
            raise GraphError("graph is not folded")


def trace_word(g: LabeledGraph, w: Word, start: int | None = None):
    """Vertex reached by reading ``w``, or ``None`` if reading gets stuck."""
    _require_folded(g)
    v = g.basepoint if start is None else start
    for x in w:
        v = g.step(v, x)
        if v is None:
            return None
    return v


def contains(g: LabeledGraph, w: Word) -> bool:
    return trace_word(g, w) == g.basepoint


def unique_morphism(src: LabeledGraph, dst: LabeledGraph):
    """The label and basepoint preserving morphism, if there is one."""
    _require_folded(src, dst)
    vmap = {src.basepoint: dst.basepoint}
    emap = {}
    stack = [src.basepoint]
    while stack:
        v = stack.pop()
        for x, w, h in src.out(v):
            hit = None
            for y, w2, h2 in dst.out(vmap[v]):
                if y == x:
                    hit = (w2, h2)
                    break
            if hit is None:
                return None
            w2, h2 = hit
            if w in vmap:
                if vmap[w] != w2:
                    return None
            else:
                vmap[w] = w2
                stack.append(w)
            emap[h[0]] = h2[0]
    return GraphMorphism(src, dst, vmap, emap)


def is_surjective(m: GraphMorphism) -> bool:
    return (set(m.vertex_map.values()) == set(m.target.vertices)
            and set(m.edge_map.values()) == set(m.target.edges))


def whitehead_graph(g: LabeledGraph) -> frozenset:
    """Label pairs ``{l(e), l(f)^-1}`` over all 2-paths ``(e, f)``."""
    out = set()
    for v in g.vertices:
        hs = g.out(v)
        for (x, _, h1), (y, _, h2) in combinations(hs, 2):
            if x != y:
                out.add(wedge(inverse(x), inverse(y)))
    return frozenset(out)


def path_whitehead(w: Word) -> frozenset:
    """Whitehead edges of the path graph of ``w``."""
    return frozenset(wedge(w[i], inverse(w[i + 1])) for i in range(len(w) - 1))


# canonical forms


def _bfs_order(g: LabeledGraph) -> dict:
    num = {g.basepoint: 0}
    queue = deque([g.basepoint])
    while queue:
        v = queue.popleft()
        for _, w, _ in g.out(v):
            if w not in num:
                num[w] = len(num)
                queue.append(w)
    return num


def canonical_key(g: LabeledGraph) -> tuple:
    """Hashable isomorphism invariant of a folded pointed graph."""
    if g._key is None:
        num = _bfs_order(g)
        es = sorted((num[s], num[d], x) for s, d, x in g.edges.values())
        g._key = (len(num), tuple(es))
    return g._key


def canonical_form(g: LabeledGraph):
    """Relabel ``g`` by breadth-first search with label-sorted neighbours.

    Returns the relabeled graph with the vertex and edge renamings.
    """
    _require_folded(g)
    num = _bfs_order(g)
    order = sorted(g.edges, key=lambda e: (num[g.edges[e][0]], num[g.edges[e][1]],
                                           g.edges[e][2]))
    emap = {e: i for i, e in enumerate(order)}
    edges = {emap[e]: (num[g.edges[e][0]], num[g.edges[e][1]], g.edges[e][2])
             for e in order}
    return LabeledGraph(range(len(num)), edges, 0, check=False), num, emap


def same_graph(g: LabeledGraph, h: LabeledGraph) -> bool:
    return canonical_key(g) == canonical_key(h)


def path_to(g: LabeledGraph, target: int, start: int | None = None) -> Word:
    """Label of a shortest path from ``start`` (default basepoint)."""
    start = g.basepoint if start is None else start
    prev = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if v == target:
            break
        for x, w, _ in g.out(v):
            if w not in prev:
                prev[w] = (v, x)
                queue.append(w)
    if target not in prev:
        raise GraphError(f"vertex {target} unreachable")
    letters = []
    v = target
    while prev[v] is not None:
        v, x = prev[v]
        letters.append(x)
    return Word(reversed(letters))


def fundamental_group_basis(g: LabeledGraph) -> list:
    """Free basis of the fundamental group from a BFS spanning tree."""
    paths = {g.basepoint: Word()}
    tree = set()
    queue = deque([g.basepoint])
    while queue:
        v = queue.popleft()
        for x, w, h in g.out(v):
            if w not in paths:
                paths[w] = paths[v] * Word._raw((x,))
                tree.add(h[0])
                queue.append(w)
    basis = []
    for eid in sorted(g.edges):
        if eid in tree:
            continue
        s, d, x = g.edges[eid]
        basis.append(paths[s] * Word.gen(x) * paths[d].inverse())
    return basis


def hair(g: LabeledGraph) -> tuple:
    """Walk from a degree-one basepoint of a core graph to its cyclic core.

    Returns the label of the walk and the vertex reached.
    """
    v = g.basepoint
    if g.degree(v) != 1:
        return Word(), v
    letters, back = [], None
    while v == g.basepoint or g.degree(v) == 2:
        x, w, h = next(t for t in g.out(v) if t[2] != back)
        letters.append(x)
        back = (h[0], not h[1])
        v = w
    return Word(letters), v


# text formats


def graph_to_json(g: LabeledGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "basepoint": g.basepoint,
        "edges": [{"id": e, "from": s, "to": d, "label": x}
                  for e, (s, d, x) in sorted(g.edges.items())],
    }


def graph_from_json(data) -> LabeledGraph:
    if isinstance(data, str):
        data = json.loads(data)
    edges = {}
    for item in data["edges"]:
        x = Letter.parse(item["label"])
        s, d = item["from"], item["to"]
        if x.inverted:
            s, d = d, s
        if item["id"] in edges:
            raise GraphError(f"duplicate edge id {item['id']}")
        edges[item["id"]] = (s, d, x.gen)
    return LabeledGraph(data["vertices"], edges, data["basepoint"])


def to_dot(g: LabeledGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        shape = "doublecircle" if v == g.basepoint else "circle"
        lines.append(f'  {v} [shape={shape}];')
    for e, (s, d, x) in sorted(g.edges.items()):
        lines.append(f'  {s} -> {d} [label="{x}"];')
    lines.append("}")
    return "\n".join(lines)


def describe(g: LabeledGraph) -> str:
    """Short text form: the basis words of the fundamental group."""
    basis = fundamental_group_basis(g) if g.is_folded() else []
    return "<" + ", ".join(format_word(w) for w in basis) + ">"


def parse_subgroup(text: str) -> list:
    """Generators separated by ``;`` or, failing that, by ``,``."""
    sep = ";" if ";" in text else ","
    return [parse_word(tok) for tok in text.split(sep) if tok.strip()]
