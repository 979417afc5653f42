"""Objects and morphisms of the category of free groups with restrictions.

An object is a generating set together with a set of restricted Whitehead
edges.  A morphism sends generators to nontrivial words and must respect
the restrictions in the sense checked by :func:`validate`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import graphs as G
from .graphs import LabeledGraph, format_wedge, full_whitehead, parse_wedge, wedge
from .words import Letter, Word, letter_image, parse_word, substitute, tau


class FgrError(ValueError):
    pass


class FgrObject:
    """Generators ``Y`` with restrictions ``N``, a subset of the full set ``W_Y``."""

    __slots__ = ("generators", "restrictions", "_hash")

    def __init__(self, generators: Iterable[str], restrictions: Iterable = ()):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise FgrError("repeated generator")
        self.restrictions = frozenset(restrictions)
        gens = set(self.generators)
        for p in self.restrictions:
            if len(p) != 2 or p[0] == p[1] or p[0].gen not in gens or p[1].gen not in gens:
                raise FgrError(f"restriction {p} is not an edge over {self.generators}")
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, FgrObject):
            return NotImplemented
        return (set(self.generators) == set(other.generators)
                and self.restrictions == other.restrictions)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.generators), self.restrictions))
        return self._hash

    def __repr__(self):
        rs = ", ".join(sorted(format_wedge(p) for p in self.restrictions))
        return f"FgrObject({list(self.generators)}, {{{rs}}})"

    def full(self) -> frozenset:
        return full_whitehead(self.generators)

    def unrestricted(self) -> frozenset:
        return self.full() - self.restrictions

    def is_saturated(self) -> bool:
        return self.restrictions == self.full()

    def letters(self) -> list:
        return G.letters_of(self.generators)

    def restrict(self, *pairs) -> "FgrObject":
        return FgrObject(self.generators, self.restrictions | set(pairs))

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "restrictions": [[str(a), str(b)] for a, b in sorted(self.restrictions)],
        }

    @classmethod
    def from_json(cls, data) -> "FgrObject":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["generators"], [parse_wedge(p) for p in data.get("restrictions", [])])


def free_object(generators: Iterable[str]) -> FgrObject:
    return FgrObject(generators, ())


@dataclass(frozen=True)
class Violation:
    condition: str
    detail: str

    def __str__(self):
        return f"condition ({self.condition}) fails: {self.detail}"


def _images_of(m) -> Mapping[str, Word]:
    return m.images if isinstance(m, FgrMorphism) else m


class FgrMorphism:
    """Images of the domain generators, between two objects.

    ``codomain=None`` stands for a free group with no restrictions, i.e. the
    target of all nondegenerate homomorphisms.
    """

    __slots__ = ("domain", "codomain", "images")

    def __init__(self, domain: FgrObject, codomain: FgrObject | None,
                 images: Mapping[str, Word]):
        self.domain = domain
        self.codomain = codomain
        self.images = dict(images)

    def __call__(self, w: Word) -> Word:
        return substitute(w, self.images)

    def letter(self, x: Letter) -> Word:
        return letter_image(x, self.images)

    def __eq__(self, other):
        if not isinstance(other, FgrMorphism):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.images == other.images)

    def __repr__(self):
        return f"FgrMorphism({format_images(self.images)})"

    def validate(self):
        return validate(self)

    def check(self) -> "FgrMorphism":
        v = validate(self)
        if v is not None:
            raise FgrError(str(v))
        return self


def format_images(images: Mapping[str, Word]) -> str:
    return ", ".join(f"{g}->{w}" for g, w in sorted(images.items()))


def images_to_json(images: Mapping[str, Word]) -> dict:
    return {"images": {g: str(w) for g, w in images.items()}}


def images_from_json(data) -> dict:
    if isinstance(data, str):
        data = json.loads(data)
    if "images" in data:
        data = data["images"]
    return {g: parse_word(w) for g, w in data.items()}


def parse_images(text: str) -> dict:
    """Parse ``a=~u;b=uv`` (or comma separated when unambiguous)."""
    text = text.strip()
    if text.startswith("{"):
        return images_from_json(text)
    parts = []
    for chunk in text.split(";"):
        # a comma starts a new assignment only when followed by name=
        cur = ""
        for tok in chunk.split(","):
            if "=" in tok:
                if cur:
                    parts.append(cur)
                cur = tok
            else:
                cur += "," + tok
        if cur:
            parts.append(cur)
    out = {}
    for p in parts:
        g, w = p.split("=", 1)
        out[g.strip()] = parse_word(w)
    return out


def _in_target(p, M) -> bool:
    return p in M if M is not None else p[0] != p[1]


def validate(m: FgrMorphism):
    """First violated condition among (i) to (iv), or ``None``."""
    M = m.codomain.restrictions if m.codomain is not None else None
    for g in m.domain.generators:
        if g not in m.images:
            return Violation("i", f"no image for {g}")
        if not m.images[g]:
            return Violation("i", f"{g} maps to the identity")
    if m.codomain is not None:
        cg = set(m.codomain.generators)
        for g in m.domain.generators:
            bad = m.images[g].generators() - cg
            if bad:
                return Violation("i", f"image of {g} uses {sorted(bad)} outside the codomain")
    if M is not None:
        for g in m.domain.generators:
            for p in G.path_whitehead(m.images[g]):
                if p not in M:
                    return Violation("ii", f"image of {g} contains the edge {format_wedge(p)}")
    for x, y in sorted(m.domain.restrictions):
        if tau(m.letter(x)) == tau(m.letter(y)):
            return Violation("iii", f"{x}.{y} restricted but both images end in {tau(m.letter(x))}")
    if M is not None:
        for x, y in sorted(m.domain.restrictions):
            p = wedge(tau(m.letter(x)), tau(m.letter(y)))
            if p not in M:
                return Violation("iv", f"{x}.{y} is sent to the unrestricted edge {format_wedge(p)}")
    return None


def is_valid(m: FgrMorphism) -> bool:
    return validate(m) is None


def compose(f: FgrMorphism, g: FgrMorphism) -> FgrMorphism:
    """``g`` after ``f``."""
    if f.codomain != g.domain:
        raise FgrError("codomain of the first morphism is not the domain of the second")
    h = FgrMorphism(f.domain, g.codomain, {x: g(w) for x, w in f.images.items()})
    v = validate(h)
    assert v is None, f"composite of valid morphisms failed: {v}"
    return h


def identity(obj: FgrObject) -> FgrMorphism:
    return FgrMorphism(obj, obj, {g: Word.gen(g) for g in obj.generators})


def letter_map(m) -> dict | None:
    """Map of letters if every image is a single letter, else ``None``."""
    out = {}
    for g, w in _images_of(m).items():
        if len(w) != 1:
            return None
        out[Letter(g)] = w[0]
        out[Letter(g, True)] = w[0].inverse()
    return out


def is_isomorphism(m: FgrMorphism) -> bool:
    lm = letter_map(m)
    if lm is None or m.codomain is None:
        return False
    if set(lm.values()) != set(m.codomain.letters()) or len(set(lm.values())) != len(lm):
        return False
    return m.codomain.restrictions == {wedge(lm[x], lm[y]) for x, y in m.domain.restrictions}


def is_stencil(m, g: LabeledGraph) -> bool:
    """Whether the subdivided graph ``F_m(g)`` is already folded."""
    if not g.is_folded():
        return False
    images = _images_of(m)
    for x, y in G.whitehead_graph(g):
        if tau(letter_image(x, images)) == tau(letter_image(y, images)):
            return False
    return True


def apply_functor(m, g: LabeledGraph) -> LabeledGraph:
    """Replace each edge of ``g`` by a path reading the image of its label."""
    images = _images_of(m)
    vertices = list(g.vertices)
    edges: dict = {}
    for eid in sorted(g.edges):
        s, d, x = g.edges[eid]
        w = images.get(x)
        if w is None:
            raise FgrError(f"no image for generator {x}")
        if not w:
            raise FgrError(f"degenerate image for generator {x}")
        G.add_path(vertices, edges, s, d, w)
    return LabeledGraph(vertices, edges, g.basepoint, check=False)


def core_functor_image(m, g: LabeledGraph) -> LabeledGraph:
    return G.core(apply_functor(m, g))


def transport(restrictions: Iterable, m) -> set:
    """Restrictions pushed forward along last letters of images."""
    images = _images_of(m)
    out = set()
    for x, y in restrictions:
        out.add(wedge(tau(letter_image(x, images)), tau(letter_image(y, images))))
    return out
