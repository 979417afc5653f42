"""Splitting homomorphisms by cancellation type at an unrestricted edge.

For an unrestricted Whitehead edge ``x.y`` every nondegenerate morphism
out of ``(Y, N)`` cancels in ``phi(x) phi(y)^-1`` in exactly one of five
ways, and factors through the matching folding morphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

from .category import FgrError, FgrMorphism, FgrObject, images_to_json, transport, validate
from .graphs import wedge
from .words import Letter, Word, cancellation_split, letter_image, substitute

FRESH_NAMES = ("t", "s", "r", "q", "p")


def fresh_generator(used) -> str:
    """First name of the sequence t, s, r, q, p, t1, s1, ... not in ``used``."""
    used = set(used)
    k = 0
    while True:
        for name in FRESH_NAMES:
            cand = name if k == 0 else f"{name}{k}"
            if cand not in used:
                return cand
        k += 1


def _set_letter(images: dict, x: Letter, w: Word):
    images[x.gen] = w.inverse() if x.inverted else w


def _lw(x: Letter) -> Word:
    return Word._raw((x,))


@dataclass(frozen=True)
class FoldingMorphism:
    kind: int
    edge: tuple  # ordered pair (x, y)
    inverse_pair: bool
    morphism: FgrMorphism
    target: FgrObject
    fresh: str | None = None

    @property
    def source(self) -> FgrObject:
        return self.morphism.domain

    def to_json(self) -> dict:
        d = {"kind": self.kind, "edge": [str(self.edge[0]), str(self.edge[1])]}
        d.update(images_to_json(self.morphism.images))
        return d

    def describe(self) -> str:
        x, y = self.edge
        changed = {g: w for g, w in self.morphism.images.items() if w != Word.gen(g)}
        body = ", ".join(f"{g}->{w}" for g, w in sorted(changed.items())) or "id"
        return f"kind {self.kind} at {x}.{y}: {body}"


def admissible_kinds(obj: FgrObject, x: Letter, y: Letter) -> list:
    if y == x.inverse():
        return [1, 2]
    if wedge(x.inverse(), y.inverse()) in obj.restrictions:
        return [1, 2, 3, 4]
    return [1, 2, 3, 4, 5]


def build_folding_morphism(obj: FgrObject, x: Letter, y: Letter, kind: int,
                           fresh: str | None = None) -> FoldingMorphism:
    if x == y or x.gen not in obj.generators or y.gen not in obj.generators:
        raise FgrError(f"{x}.{y} is not an edge over {obj.generators}")
    if wedge(x, y) in obj.restrictions:
        raise FgrError(f"{x}.{y} is already restricted")
    inv_pair = y == x.inverse()
    if kind not in (1, 2, 3, 4, 5):
        raise FgrError(f"no cancellation kind {kind}")
    if kind not in admissible_kinds(obj, x, y):
        if inv_pair:
            raise FgrError(f"kind {kind} cannot occur at {x}.{y}: only kinds 1 and 2 "
                           "occur when y is the inverse of x")
        raise FgrError(f"kind {kind} cannot occur at {x}.{y}: "
                       f"{x.inverse()}.{y.inverse()} is restricted")
    images = {g: Word.gen(g) for g in obj.generators}
    gens = list(obj.generators)
    added = []
    new_fresh = None
    if kind == 1:
        added = [wedge(x, y)]
    elif kind == 2:
        new_fresh = fresh or fresh_generator(obj.generators)
        if new_fresh in obj.generators:
            raise FgrError(f"fresh generator {new_fresh} already in use")
        s = Letter(new_fresh)
        if inv_pair:
            _set_letter(images, x, _lw(s.inverse()) * _lw(x) * _lw(s))
        else:
            _set_letter(images, x, _lw(x) * _lw(s))
            _set_letter(images, y, _lw(y) * _lw(s))
        gens.append(new_fresh)
        added = [wedge(x, s.inverse()), wedge(y, s.inverse()), wedge(x, y)]
    elif kind == 3:
        _set_letter(images, x, _lw(x) * _lw(y))
        added = [wedge(x, y.inverse())]
    elif kind == 4:
        _set_letter(images, y, _lw(y) * _lw(x))
        added = [wedge(x.inverse(), y)]
    else:
        _set_letter(images, y, _lw(x))
        gens.remove(y.gen)
    restrictions = transport(obj.restrictions, images) | set(added)
    target = FgrObject(gens, restrictions)
    m = FgrMorphism(obj, target, images)
    v = validate(m)
    assert v is None, f"folding morphism is not valid: {v}"
    return FoldingMorphism(kind, (x, y), inv_pair, m, target, new_fresh)


def classify_and_factor(phi: FgrMorphism, x: Letter, y: Letter, fresh: str | None = None):
    """Factor ``phi`` through the folding morphism matching its cancellation.

    Returns ``(folding, residual)`` with ``phi = residual o folding``.
    """
    obj = phi.domain
    if wedge(x, y) in obj.restrictions:
        raise FgrError(f"{x}.{y} is already restricted")
    u, v = letter_image(x, phi.images), letter_image(y, phi.images)
    sp = cancellation_split(u, v)
    fm = build_folding_morphism(obj, x, y, sp.kind, fresh)
    res = {g: w for g, w in phi.images.items()}
    if sp.kind == 2:
        if fm.inverse_pair:
            # u = t^-1 c t with c cyclically reduced
            _set_letter(res, x, sp.t * u * sp.t.inverse())
        else:
            _set_letter(res, x, sp.u0)
            _set_letter(res, y, sp.v0)
        res[fm.fresh] = sp.t
    elif sp.kind == 3:
        _set_letter(res, x, sp.u0)
    elif sp.kind == 4:
        _set_letter(res, y, sp.v0)
    elif sp.kind == 5:
        del res[y.gen]
    residual = FgrMorphism(fm.target, phi.codomain, res)
    for g in obj.generators:
        if residual(fm.morphism.images[g]) != phi.images[g]:
            raise AssertionError(f"recomposition failed at {g}")
    return fm, residual


class Height(NamedTuple):
    total_length: int
    slack: int


def height(phi: FgrMorphism) -> Height:
    obj = phi.domain
    return Height(sum(len(phi.images[g]) for g in obj.generators),
                  len(obj.unrestricted()))


def lex_edge(obj: FgrObject, phi=None) -> tuple:
    return min(obj.unrestricted())


@dataclass
class Decomposition:
    steps: list
    residual: FgrMorphism

    def recompose(self) -> dict:
        images = dict(self.residual.images)
        for fm in reversed(self.steps):
            images = {g: substitute(w, images) for g, w in fm.morphism.images.items()}
        return images

    def to_json(self) -> dict:
        return {"steps": [fm.to_json() for fm in self.steps],
                "residual": images_to_json(self.residual.images)}


def decompose(phi: FgrMorphism, edge_picker: Callable | None = None) -> Decomposition:
    """Factor repeatedly until the restrictions are saturated."""
    pick = edge_picker or lex_edge
    steps = []
    cur = phi
    while not cur.domain.is_saturated():
        x, y = pick(cur.domain, cur)
        fm, cur = classify_and_factor(cur, x, y)
        steps.append(fm)
    return Decomposition(steps, cur)


def triangle_split(obj: FgrObject, x: Letter, y: Letter, z: Letter) -> tuple:
    """The two kind-1 morphisms adding ``z.y`` and ``z.x``.

    Needs ``x.y`` restricted and ``z.x``, ``z.y`` unrestricted; every
    morphism out of ``obj`` factors through at least one of them.
    """
    if wedge(x, y) not in obj.restrictions:
        raise FgrError(f"triangle rule needs {x}.{y} restricted")
    for a in (x, y):
        if z == a or wedge(z, a) in obj.restrictions:
            raise FgrError(f"triangle rule needs {z}.{a} unrestricted")
    return (build_folding_morphism(obj, z, y, 1), build_folding_morphism(obj, z, x, 1))
