"""Stencil classes, rank two primitivity and rewriting in a subgroup basis."""

from __future__ import annotations

from dataclasses import dataclass

from . import graphs as G
from .category import FgrObject
from .solver import CaseTree, Node, Problem, Solver, Status, find_equivalence, lex_picker
from .words import Letter, Word, cyclic_reduce, substitute


class AnalysisError(ValueError):
    pass


BASIS_NAMES = ("α", "β", "γ", "δ", "ε", "ζ", "η", "θ")


def rewrite_in_subgroup_basis(w: Word, basis: list, names=None):
    """Express ``w`` as a word in the basis elements, or ``None`` if ``w`` is not in their span.

    Folds the bouquet of the basis while every edge also carries its value
    in the free group on the basis; a fold between parallel edges would
    mean the basis is dependent.
    """
    names = list(names or BASIS_NAMES[: len(basis)])
    if len(names) < len(basis):
        raise AnalysisError("not enough basis names")
    bouquet = G.bouquet_of_subgroup(basis)
    # extra label of each positive edge: the first edge of loop i reads the i-th name
    extra = {}
    eid = 0
    for i, b in enumerate(basis):
        for j in range(len(b)):
            extra[eid] = Word()
            if j == 0:
                # an inverse letter is stored as an edge pointing backwards
                name = Word.gen(names[i])
                extra[eid] = name.inverse() if b[0].inverted else name
            eid += 1
    edges = {e: [s, d, x, extra[e]] for e, (s, d, x) in bouquet.edges.items()}

    def out_of(v):
        res = []
        for e, (s, d, x, val) in edges.items():
            if s == v:
                res.append((Letter(x), d, e, val))
            if d == v:
                res.append((Letter(x, True), s, e, val.inverse()))
        return res

    while True:
        found = None
        for v in {t[0] for t in edges.values()} | {t[1] for t in edges.values()}:
            seen = {}
            for x, d, e, val in out_of(v):
                if x in seen and seen[x][1] != e:
                    found = (v, x, seen[x], (d, e, val))
                    break
                seen[x] = (d, e, val)
            if found:
                break
        if found is None:
            break
        v, x, (d1, e1, g1), (d2, e2, g2) = found
        if d1 == d2:
            raise AnalysisError("basis is not freely independent")
        # regauge d2 so the edge e2 carries g1, then merge d2 into d1
        c = g1.inverse() * g2
        for e, rec in edges.items():
            s, d, y, val = rec
            if s == d2:
                val = c * val
            if d == d2:
                val = val * c.inverse()
            rec[3] = val
        del edges[e2]
        for rec in edges.values():
            if rec[0] == d2:
                rec[0] = d1
            if rec[1] == d2:
                rec[1] = d1
    bp = bouquet.basepoint
    v = bp
    acc = Word()
    for x in w:
        nxt = None
        for y, d, e, val in out_of(v):
            if y == x:
                nxt = (d, val)
                break
        if nxt is None:
            return None
        v, val = nxt
        acc = acc * val
    return acc if v == bp else None


def _whitehead_automorphisms(a: str, b: str) -> list:
    auts = []
    for z, m in ((a, b), (b, a)):
        for mx in (Letter(m), Letter(m, True)):
            mw = Word._raw((mx,))
            zw = Word.gen(z)
            for img in (zw * mw, mw.inverse() * zw, mw.inverse() * zw * mw):
                auts.append({z: img, m: Word.gen(m)})
    return auts


def is_primitive_rank2(w: Word, alphabet=None) -> bool:
    """Whitehead's length reduction in a free group of rank two."""
    gens = sorted(alphabet or w.generators())
    if len(gens) > 2:
        raise AnalysisError("is_primitive_rank2 needs a word over at most two generators")
    while len(gens) < 2:
        gens.append(next(n for n in BASIS_NAMES + ("a", "b") if n not in gens))
    cur = cyclic_reduce(w)[1]
    auts = _whitehead_automorphisms(*gens)
    while True:
        if len(cur) == 1:
            return True
        if len(cur) == 0:
            return False
        for phi in auts:
            nxt = cyclic_reduce(substitute(cur, phi))[1]
            if len(nxt) < len(cur):
                cur = nxt
                break
        else:
            return False


@dataclass
class StencilClass:
    node: Node

    @property
    def label(self) -> str:
        return self.node.label

    @property
    def graph(self):
        return self.node.problem.gamma

    @property
    def obj(self) -> FgrObject:
        return self.node.problem.obj

    def provenance(self) -> list:
        chain = []
        n = self.node
        while n.parent is not None:
            chain.append(n.via)
            n = n.parent
        return list(reversed(chain))


@dataclass
class Exploration:
    classes: list
    closed: bool
    tree: CaseTree
    undecided: int = 0


def compare_leaves(leaves: list, max_image_len: int = 3) -> list:
    """Matrix ``le[i][j]``: leaf ``i`` is contained in leaf ``j`` by a bounded witness."""
    n = len(leaves)
    return [[i == j or find_equivalence(leaves[i].problem, leaves[j].problem,
                                        max_image_len) is not None
             for j in range(n)] for i in range(n)]


def maximal_classes(leaves: list, max_image_len: int = 3) -> list:
    """Leaves not strictly contained in another leaf; one per equivalence class."""
    return _maximal(leaves, compare_leaves(leaves, max_image_len))[0]


def _maximal(leaves, le):
    n = len(leaves)
    keep = []
    for i in range(n):
        dominated = any(le[i][j] and not le[j][i] for j in range(n))
        dup = any(le[i][j] and le[j][i] for j in keep)
        if not dominated and not dup:
            keep.append(i)
    # kept pairs with no witness either way might still be comparable with longer images
    undecided = sum(1 for a in keep for b in keep if a < b and not le[a][b] and not le[b][a])
    return [leaves[i] for i in keep], undecided


def explore_stencil_classes(root: G.LabeledGraph, root_obj: FgrObject, budget: int = 2000,
                            picker=None, max_image_len: int = 3, label: str = "P") -> Exploration:
    """Split on the graph alone and collect the maximal stencil spaces."""
    s = Solver(picker or lex_picker, budget)
    s.add_root(Problem(root, None, root_obj), label)
    return _finish(s.run(), max_image_len)


def explore_roots(problems: dict, budget: int = 2000, picker=None,
                  max_image_len: int = 3) -> Exploration:
    s = Solver(picker or lex_picker, budget)
    for lab, p in problems.items():
        s.add_root(Problem(p.gamma, None, p.obj), str(lab))
    return _finish(s.run(), max_image_len)


def explore_counterexample_classes(budget: int = 2000, picker="paper", variant: str = "printed",
                                   max_image_len: int = 3) -> Exploration:
    from .coords import _picker, counterexample_roots, eight_case_table

    roots = counterexample_roots(eight_case_table(variant), with_delta=False)
    return explore_roots(roots, budget, _picker(picker), max_image_len)


def _finish(tree: CaseTree, max_image_len: int) -> Exploration:
    leaves = [n for n in tree.nodes.values() if n.status == Status.STENCIL]
    kept, undecided = _maximal(leaves, compare_leaves(leaves, max_image_len))
    closed = tree.verdict == "Positive"
    return Exploration([StencilClass(n) for n in kept], closed, tree, undecided)
