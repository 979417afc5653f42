"""Reduced words in free groups over named alphabets.

A :class:`Letter` is a generator name together with an inversion flag and a
:class:`Word` is an immutable, always freely reduced tuple of letters.  The
text syntax has two forms: a compact one for single character generators
(``"bbabA"``, upper case meaning inverse) and a token list for arbitrary
names (``"u,v,~u"``).  The identity prints as ``"1"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple


class WordError(ValueError):
    pass


class Letter(NamedTuple):
    """A generator or the formal inverse of one.

    Letters sort by generator name with the positive letter first, which
    is the fixed letter order used by the lexicographic edge picker.
    """

    gen: str
    inverted: bool = False

    @property
    def sign(self) -> int:
        return -1 if self.inverted else 1

    def inverse(self) -> "Letter":
        return Letter(self.gen, not self.inverted)

    def __str__(self):
        return "~" + self.gen if self.inverted else self.gen

    def __repr__(self):
        return f"Letter({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Letter":
        text = text.strip()
        if text.startswith("~"):
            name, inv = text[1:], True
        else:
            name, inv = text, False
        if len(name) == 1 and name.isupper():
            name, inv = name.lower(), not inv
        if not name or not _valid_name(name):
            raise WordError(f"bad letter {text!r}")
        return cls(name, inv)


def _valid_name(name: str) -> bool:
    # identifiers only: a, t1, α
    return name.isidentifier()


def inverse(x: Letter) -> Letter:
    return Letter(x.gen, not x.inverted)


def _compact_ok(gens) -> bool:
    return all(len(g) == 1 and g.islower() and g.upper() != g for g in gens)


class Word(tuple):
    """Freely reduced word.  Construction always reduces."""

    __slots__ = ()

    def __new__(cls, letters: Iterable[Letter] = ()):
        out: list = []
        for x in letters:
            if out and out[-1].gen == x.gen and out[-1].inverted != x.inverted:
                out.pop()
            else:
                out.append(x)
        return tuple.__new__(cls, out)

    @classmethod
    def _raw(cls, letters) -> "Word":
        # caller guarantees the letters are already reduced
        return tuple.__new__(cls, letters)

    @classmethod
    def parse(cls, text: str) -> "Word":
        return parse_word(text)

    @classmethod
    def gen(cls, name: str) -> "Word":
        return cls._raw((Letter(name),))

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        i = 0
        n = min(len(self), len(other))
        while i < n and self[-1 - i] == inverse(other[i]):
            i += 1
        return Word._raw(self[: len(self) - i] + other[i:])

    def __getitem__(self, item):
        res = tuple.__getitem__(self, item)
        if isinstance(item, slice):
            return Word._raw(res)
        return res

    def inverse(self) -> "Word":
        return Word._raw(tuple(inverse(x) for x in reversed(self)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return len(self) == 0

    def generators(self) -> set:
        return {x.gen for x in self}

    def is_cyclically_reduced(self) -> bool:
        return len(self) < 2 or self[-1] != inverse(self[0])

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


ONE = Word()


def format_word(w: Iterable[Letter], compact: bool | None = None) -> str:
    w = tuple(w)
    if not w:
        return "1"
    if compact is None:
        compact = _compact_ok({x.gen for x in w})
    if compact:
        return "".join(x.gen.upper() if x.inverted else x.gen for x in w)
    return ",".join(str(x) for x in w)


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return ONE
    if "," in text or "~" in text:
        letters = [Letter.parse(tok) for tok in text.split(",") if tok.strip()]
    else:
        letters = []
        for c in text:
            if c.isspace():
                continue
            if not _valid_name(c):
                raise WordError(f"bad character {c!r} in word {text!r}")
            letters.append(Letter(c.lower(), c.isupper()) if c.lower() != c.upper()
                           else Letter(c))
    return Word(letters)


def reduce(raw: Iterable[Letter]) -> Word:
    return Word(raw)


def tau(w: Word) -> Letter:
    """Last letter of a nontrivial reduced word."""
    if not w:
        raise WordError("tau undefined on identity")
    return w[-1]


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as ``conjugator * core * conjugator^-1``."""
    i, j = 0, len(w) - 1
    while i < j and w[j] == inverse(w[i]):
        i += 1
        j -= 1
    return Word._raw(w[:i]), Word._raw(w[i:j + 1])


@dataclass(frozen=True)
class CancellationSplit:
    """``u = u0 t`` and ``v = v0 t`` with ``t`` the longest common suffix."""

    t: Word
    u0: Word
    v0: Word
    kind: int


def cancellation_split(u: Word, v: Word) -> CancellationSplit:
    """Classify the cancellation in the product ``u v^-1``."""
    if not u or not v:
        raise WordError("cancellation_split needs nontrivial words")
    n = 0
    while n < len(u) and n < len(v) and u[-1 - n] == v[-1 - n]:
        n += 1
    t = u[len(u) - n:]
    u0, v0 = u[: len(u) - n], v[: len(v) - n]
    if n == 0:
        kind = 1
    elif not u0 and not v0:
        kind = 5
    elif not v0:
        kind = 3
    elif not u0:
        kind = 4
    else:
        kind = 2
    return CancellationSplit(t, u0, v0, kind)


def letter_image(x: Letter, images: Mapping[str, Word]) -> Word:
    try:
        w = images[x.gen]
    except KeyError:
        raise WordError(f"no image for generator {x.gen!r}") from None
    return w.inverse() if x.inverted else w


def substitute(w: Iterable[Letter], images: Mapping[str, Word]) -> Word:
    """Apply the homomorphism given by generator images."""
    out = ONE
    for x in w:
        out = out * letter_image(x, images)
    return out


def cyclic_key(w: Word) -> tuple:
    """Invariant of the conjugacy class of ``w`` up to inversion."""
    _, c = cyclic_reduce(w)
    if not c:
        return ()
    cands = []
    for base in (c, c.inverse()):
        for i in range(len(base)):
            cands.append(tuple(base[i:]) + tuple(base[:i]))
    return min(cands)
