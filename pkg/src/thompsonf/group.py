"""Exact arithmetic in Thompson's group F.

Elements are kept in the standard infinite normal form

    x_{i_0}^{e_0} ... x_{i_m}^{e_m} x_{j_n}^{-f_n} ... x_{j_0}^{-f_0}

stored densely as two exponent vectors ``r`` and ``s`` indexed by generator
(``r[i]`` is the exponent of ``x_i``, ``s[i]`` that of ``x_i^{-1}``).  Every
rewrite below is an application of ``x_j x_i = x_i x_{j+1}`` (i < j) or one of
its inverse forms.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "GeneratorLetter",
    "NormalForm",
    "IDENTITY",
    "X0",
    "X0_INV",
    "X1",
    "X1_INV",
    "FINITE_GENERATORS",
    "parse_word",
    "format_word",
    "parse_normal_form",
    "reduce",
    "nf_to_word",
    "multiply",
    "invert",
    "burillo_D",
    "encoded_length",
    "ball",
    "geodesic_length_bfs",
    "BFS_RADIUS_CAP",
]

BFS_RADIUS_CAP = 10


@dataclass(frozen=True, order=True)
class GeneratorLetter:
    index: int
    sign: int = 1

    def __post_init__(self):
        if self.index < 0:
            raise ValueError(f"generator index must be >= 0, got {self.index}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def inverse(self) -> "GeneratorLetter":
        return GeneratorLetter(self.index, -self.sign)

    @property
    def is_finite_letter(self) -> bool:
        return self.index in (0, 1)

    def __str__(self):
        return f"x{self.index}^{self.sign}"


X0 = GeneratorLetter(0, 1)
X0_INV = GeneratorLetter(0, -1)
X1 = GeneratorLetter(1, 1)
X1_INV = GeneratorLetter(1, -1)
FINITE_GENERATORS = (X0, X0_INV, X1, X1_INV)


@dataclass(frozen=True)
class NormalForm:
    """An element of F in dense normal form.

    The identity has empty vectors.  Otherwise exactly one of ``r[M]``,
    ``s[M]`` is nonzero and ``r[i] * s[i] > 0`` forces block ``i + 1`` to be
    nonempty.
    """

    r: tuple[int, ...] = ()
    s: tuple[int, ...] = ()

    def __post_init__(self):
        r, s = tuple(self.r), tuple(self.s)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)
        if len(r) != len(s):
            raise ValueError("r and s must have the same length")
        if any(e < 0 for e in r + s):
            raise ValueError("exponents must be non-negative")
        if not r:
            return
        if (r[-1] > 0) == (s[-1] > 0):
            raise ValueError("exactly one of r_M, s_M must be nonzero")
        for i in range(len(r) - 1):
            if r[i] and s[i] and not (r[i + 1] or s[i + 1]):
                raise ValueError(
                    f"unreduced at index {i}: x_{i} and x_{i}^-1 present "
                    f"without x_{i + 1}^(+-1)"
                )

    @property
    def M(self) -> int | None:
        return len(self.r) - 1 if self.r else None

    @property
    def is_identity(self) -> bool:
        return not self.r

    def positive(self) -> list[tuple[int, int]]:
        """Sparse positive part as (index, exponent) pairs, ascending."""
        return [(i, e) for i, e in enumerate(self.r) if e]

    def negative(self) -> list[tuple[int, int]]:
        """Sparse negative part as (index, exponent) pairs, descending."""
        return [(i, f) for i, f in reversed(list(enumerate(self.s))) if f]

    def __str__(self):
        return format_word(nf_to_word(self))


IDENTITY = NormalForm()


# -- text grammar ------------------------------------------------------------

_TOKEN = re.compile(r"x(\d+)(?:\^([+-]?\d+))?$")


def parse_word(text: str) -> tuple[GeneratorLetter, ...]:
    """Parse ``x<i>^<e>`` tokens separated by whitespace; ``e`` is the identity.

    Raises ValueError naming the character offset of the first bad token.
    """
    letters: list[GeneratorLetter] = []
    stripped = text.strip()
    if stripped in ("", "e"):
        return ()
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        match = _TOKEN.match(tok)
        if match is None:
            raise ValueError(f"malformed token {tok!r} at position {m.start()}")
        exp = int(match.group(2)) if match.group(2) is not None else 1
        if exp == 0:
            raise ValueError(f"zero exponent in token {tok!r} at position {m.start()}")
        index = int(match.group(1))
        letters.extend([GeneratorLetter(index, 1 if exp > 0 else -1)] * abs(exp))
    return tuple(letters)


def format_word(word: Sequence[GeneratorLetter]) -> str:
    """Inverse of parse_word, grouping equal adjacent letters."""
    if not word:
        return "e"
    out = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        out.append(f"x{word[i].index}^{(j - i) * word[i].sign}")
        i = j
    return " ".join(out)


def parse_normal_form(text: str) -> NormalForm:
    return reduce(parse_word(text))


# -- rewriting ---------------------------------------------------------------


def _push_index(s: list[int], k: int) -> int:
    """Index reached by a letter of index k moved leftward through the
    negative tail: each x_p^-1 with p < current index bumps it by one."""
    p = 0
    while p < k and p < len(s):
        k += s[p]
        p += 1
    return k


def _grow(r: list[int], s: list[int], n: int) -> None:
    while len(r) < n:
        r.append(0)
        s.append(0)


def _insert(r: list[int], s: list[int], letter: GeneratorLetter) -> None:
    """Right-multiply by one letter, sorting it into place without
    resolving condition-3 violations."""
    k = _push_index(s, letter.index)
    if letter.sign < 0:
        _grow(r, s, k + 1)
        s[k] += 1
        return
    if k < len(s) and s[k] > 0:
        s[k] -= 1
        return
    _grow(r, s, k + 1)
    # letters above k (both signs) get their index raised by one
    if k + 1 < len(r):
        r.insert(k + 1, 0)
        s.insert(k + 1, 0)
    r[k] += 1


def _trim(r: list[int], s: list[int]) -> None:
    while r and r[-1] == 0 and s[-1] == 0:
        r.pop()
        s.pop()


def _violation(r: list[int], s: list[int]) -> int | None:
    for i in range(len(r) - 1, -1, -1):
        if r[i] and s[i] and (i + 1 >= len(r) or not (r[i + 1] or s[i + 1])):
            return i
    return None


def _resolve(r: list[int], s: list[int]) -> None:
    # x_i W x_i^-1 = W' when W only uses indices >= i+2 (W' lowers them by one)
    while (i := _violation(r, s)) is not None:
        r[i] -= 1
        s[i] -= 1
        if i + 1 < len(r):
            del r[i + 1]
            del s[i + 1]
    _trim(r, s)


def reduce(word: Iterable[GeneratorLetter]) -> NormalForm:
    """Normal form of an arbitrary word over the infinite generating set."""
    r: list[int] = []
    s: list[int] = []
    for letter in word:
        _insert(r, s, letter)
    _resolve(r, s)
    return NormalForm(tuple(r), tuple(s))


def nf_to_word(nf: NormalForm) -> tuple[GeneratorLetter, ...]:
    word = []
    for i, e in enumerate(nf.r):
        word.extend([GeneratorLetter(i, 1)] * e)
    for i in range(len(nf.s) - 1, -1, -1):
        word.extend([GeneratorLetter(i, -1)] * nf.s[i])
    return tuple(word)


def multiply(nf: NormalForm, g: GeneratorLetter) -> NormalForm:
    """Normal form of nf * g.

    Equal to ``reduce(nf_to_word(nf) + (g,))`` but works on the blocks
    directly: at most one local reduction is ever needed.
    """
    r, s = list(nf.r), list(nf.s)
    t = _push_index(s, g.index)
    if g.sign > 0:
        if t < len(s) and s[t] > 0:
            s[t] -= 1
        else:
            _grow(r, s, t + 1)
            if t + 1 < len(r):
                r.insert(t + 1, 0)
                s.insert(t + 1, 0)
            r[t] += 1
    else:
        _grow(r, s, t + 1)
        s[t] += 1
        if r[t] and s[t] == 1 and (t + 1 >= len(r) or not (r[t + 1] or s[t + 1])):
            r[t] -= 1
            s[t] = 0
            if t + 1 < len(r):
                del r[t + 1]
                del s[t + 1]
    _trim(r, s)
    return NormalForm(tuple(r), tuple(s))


def invert(nf: NormalForm) -> NormalForm:
    return reduce(g.inverse for g in reversed(nf_to_word(nf)))


def burillo_D(nf: NormalForm) -> int:
    """Sum of exponents plus the largest positive and negative indices.

    A missing side contributes index 0.
    """
    pos = [i for i, e in enumerate(nf.r) if e]
    neg = [i for i, f in enumerate(nf.s) if f]
    return sum(nf.r) + sum(nf.s) + (pos[-1] if pos else 0) + (neg[-1] if neg else 0)


def encoded_length(nf: NormalForm) -> int:
    """Length of the {a,b,#} encoding: sum of exponents plus M."""
    return 0 if nf.is_identity else sum(nf.r) + sum(nf.s) + nf.M


# -- Cayley graph ------------------------------------------------------------


@lru_cache(maxsize=4)
def ball(radius: int) -> dict[NormalForm, int]:
    """Word-length ball around the identity for the generators x0^+-1, x1^+-1.

    Returns every element within ``radius`` mapped to its geodesic length, in
    BFS discovery order.
    """
    if not 0 <= radius <= BFS_RADIUS_CAP:
        raise ValueError(f"radius must be in [0, {BFS_RADIUS_CAP}]")
    dist = {IDENTITY: 0}
    frontier = deque([IDENTITY])
    while frontier:
        nf = frontier.popleft()
        d = dist[nf]
        if d == radius:
            continue
        for g in FINITE_GENERATORS:
            nxt = multiply(nf, g)
            if nxt not in dist:
                dist[nxt] = d + 1
                frontier.append(nxt)
    return dist


def geodesic_length_bfs(nf: NormalForm, radius: int) -> int | None:
    return ball(radius).get(nf)
