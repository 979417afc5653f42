"""Change of coordinates for the rank two counterexample.

The subgroups are ``H = <bbaba^-1>`` and ``K = <b, aba^-1>`` in ``F(a, b)``.
Every nondegenerate ``phi`` is sorted into one of eight rows by the shape
of the conjugacy between ``phi(b)`` and ``phi(aba^-1)``; each row gives a
surjectivity problem over a small object, and the eight problems are
solved with the case-splitting search.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import graphs as G
from .category import FgrMorphism, FgrObject, free_object, validate
from .graphs import parse_wedge
from .solver import CaseTree, Problem, ScriptedPicker, Solver, lex_picker
from .words import Word, cyclic_reduce, parse_word, substitute


class CoordinateError(ValueError):
    pass


H_WORD = parse_word("bbabA")
K_BASIS = [parse_word("b"), parse_word("abA")]
ALPHA, BETA = "α", "β"
SIGMA = {ALPHA: parse_word("b"), BETA: parse_word("abA")}

# (generators, restrictions, psi(alpha), psi(beta), sigma(a), sigma(b))
PRINTED_ROWS = {
    1: ("u", ["u.~u"], "u", "u", "u", "u"),
    2: ("yu", ["y.~u", "u.y", "u.~u"], "u", "yuY", "y", "u"),
    3: ("xu", ["x.~u", "u.x", "u.~u"], "xuX", "u", "X", "xuX"),
    4: ("xuy", ["x.~u", "u.x", "u.~u", "y.~u", "u.y", "y.x"], "xuX", "yuY", "yX", "xuX"),
    5: ("vu", ["v.~u", "u.~v"], "uv", "vu", "U", "uv"),
    6: ("vuy", ["v.~u", "u.~v", "y.~v", "u.y"], "uv", "yvuY", "yv", "uv"),
    7: ("vux", ["v.~u", "u.~v", "x.~u", "v.x"], "xuvX", "vu", "UX", "xuvX"),
    8: ("vuyx", ["v.~u", "u.~v", "x.~u", "v.x", "y.~v", "u.y"], "xuvX", "yvuY", "yUX", "xuvX"),
}

# Row 4 as printed restricts y.x, which fails whenever the two outer
# conjugators end in the same letter.  Routing sigma(a) through u drops it.
COMPLETE_ROWS = dict(PRINTED_ROWS)
COMPLETE_ROWS[4] = ("xuy", ["x.~u", "u.x", "u.~u", "y.~u", "u.y"], "xuX", "yuY", "yuX", "xuX")

# which row applies, keyed by (xbar != 1, ybar != 1, vbar != 1)
ROW_OF_PATTERN = {
    (False, False, False): 1,
    (False, True, False): 2,
    (True, False, False): 3,
    (True, True, False): 4,
    (False, False, True): 5,
    (False, True, True): 6,
    (True, False, True): 7,
    (True, True, True): 8,
}

# root order used when solving, which is also the order containments are searched
ROOT_ORDER = (5, 2, 3, 4, 6, 7, 8, 1)

REFERENCE_SCRIPT = {
    "5": ("split", "u", "~u"),
    "5.1": ("split", "v", "~v"),
    "5.2": ("split", "v", "~v"),
    "2": ("triangle", "u", "~u", "~y"),
    "2.1": ("split", "u", "~y"),
    "3": ("triangle", "~u", "u", "~x"),
    "3.1": ("split", "~x", "~u"),
    "4": ("split", "~x", "~y"),
    "6": ("triangle", "v", "~u", "~y"),
    "6.1": ("split", "v", "~y"),
    "7": ("triangle", "~v", "u", "~x"),
    "7.1": ("split", "~x", "~v"),
    "8": ("split", "~x", "~y"),
}


@dataclass
class Row:
    index: int
    target: FgrObject
    psi: FgrMorphism
    sigma: FgrMorphism


@dataclass
class ChangeOfCoordinates:
    sigma: dict
    rows: dict  # index -> Row
    variant: str = "printed"

    @property
    def cases(self) -> list:
        return [self.rows[i] for i in sorted(self.rows)]


def _row(i, spec) -> Row:
    gens, rs, pa, pb, sa, sb = spec
    obj = FgrObject(list(gens), [parse_wedge(r) for r in rs])
    psi = FgrMorphism(free_object([ALPHA, BETA]), obj,
                      {ALPHA: parse_word(pa), BETA: parse_word(pb)})
    sigma = FgrMorphism(free_object("ab"), obj, {"a": parse_word(sa), "b": parse_word(sb)})
    return Row(i, obj, psi, sigma)


def check_table(coc: ChangeOfCoordinates):
    """Mechanical checks of the conditions a change of coordinates must meet."""
    from .analysis import rewrite_in_subgroup_basis

    basis = [coc.sigma[ALPHA], coc.sigma[BETA]]
    for w in K_BASIS:
        if rewrite_in_subgroup_basis(w, basis) is None:
            raise CoordinateError(f"{w} is not in the image of sigma")
    for i, row in coc.rows.items():
        for name in (ALPHA, BETA):
            lhs = row.sigma(coc.sigma[name])
            if lhs != row.psi.images[name]:
                raise CoordinateError(f"row {i}: sigma_i(sigma({name})) = {lhs}, "
                                      f"expected {row.psi.images[name]}")
        for m, what in ((row.psi, "psi"), (row.sigma, "sigma")):
            v = validate(m)
            if v is not None:
                raise CoordinateError(f"row {i}: {what} is not a valid morphism: {v}")


def eight_case_table(variant: str = "printed") -> ChangeOfCoordinates:
    """The hard-coded table; ``variant="complete"`` uses the corrected row 4."""
    rows = {"printed": PRINTED_ROWS, "complete": COMPLETE_ROWS}.get(variant)
    if rows is None:
        raise CoordinateError(f"unknown table variant {variant!r}")
    coc = ChangeOfCoordinates(dict(SIGMA), {i: _row(i, s) for i, s in rows.items()}, variant)
    check_table(coc)
    return coc


@dataclass(frozen=True)
class ConjugacyDecomposition:
    xbar: Word
    ybar: Word
    ubar: Word
    vbar: Word

    def pattern(self) -> tuple:
        return (bool(self.xbar), bool(self.ybar), bool(self.vbar))


def conjugacy_decompose(p: Word, w: Word) -> ConjugacyDecomposition:
    """Write ``p`` and ``q = w p w^-1`` as conjugates of ``ubar vbar`` and ``vbar ubar``."""
    if not p or not w:
        raise CoordinateError("conjugacy_decompose needs nontrivial words")
    q = w * p * w.inverse()
    xbar, cp = cyclic_reduce(p)
    ybar, cq = cyclic_reduce(q)
    n = len(cp)
    for j in range(1, n + 1):
        if tuple(cp[j:]) + tuple(cp[:j]) == tuple(cq):
            return ConjugacyDecomposition(xbar, ybar, cp[:j], cp[j:])
    raise CoordinateError("cyclic cores are not rotations of each other")


def case_select(phi_a: Word, phi_b: Word, coc: ChangeOfCoordinates | None = None):
    """Row index and residual morphism for ``a -> phi_a, b -> phi_b``."""
    coc = coc or eight_case_table()
    d = conjugacy_decompose(phi_b, phi_a)
    i = ROW_OF_PATTERN[d.pattern()]
    row = coc.rows[i]
    values = {"u": d.ubar, "v": d.vbar, "x": d.xbar, "y": d.ybar}
    res = FgrMorphism(row.target, None, {g: values[g] for g in row.target.generators})
    phi = {"a": phi_a, "b": phi_b}
    for name in (ALPHA, BETA):
        lhs = substitute(coc.sigma[name], phi)
        rhs = res(row.psi.images[name])
        if lhs != rhs:
            raise CoordinateError(f"row {i}: recomposition fails on {name}: {lhs} != {rhs}")
    v = validate(res)
    if v is not None:
        raise CoordinateError(f"row {i} does not accept a->{phi_a}, b->{phi_b}: {v}")
    return i, res


def counterexample_roots(coc: ChangeOfCoordinates | None = None,
                         with_delta: bool = True) -> dict:
    coc = coc or eight_case_table()
    out = {}
    for i in ROOT_ORDER:
        row = coc.rows[i]
        gamma = G.subgroup_graph([row.sigma(H_WORD)])
        delta = G.subgroup_graph([row.sigma(w) for w in K_BASIS]) if with_delta else None
        out[i] = Problem(gamma, delta, row.target)
    return out


def reference_picker() -> ScriptedPicker:
    return ScriptedPicker(REFERENCE_SCRIPT)


def _picker(picker):
    if picker in (None, "paper"):
        return reference_picker()
    if picker == "lex":
        return lex_picker
    return picker


@dataclass
class CounterexampleResult:
    verdict: str
    tree: CaseTree

    def root_verdicts(self) -> dict:
        return {r.label: self.tree.verdict_of(r) for r in self.tree.roots}


def verify_counterexample(budget: int = 2000, picker="paper", variant: str = "printed",
                          max_witness_len: int = 2, parallel: bool = False) -> CounterexampleResult:
    """Solve the eight root problems in one shared tree."""
    coc = eight_case_table(variant)
    s = Solver(_picker(picker), budget, max_witness_len, parallel)
    for i, p in counterexample_roots(coc).items():
        s.add_root(p, str(i))
    tree = s.run()
    return CounterexampleResult(tree.verdict, tree)
