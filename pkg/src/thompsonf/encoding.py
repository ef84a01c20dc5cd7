"""The {a,b,#} normal-form language and k-track convolution.

An element with dense normal form (r, s) is written

    a^{r_0} b^{s_0} # a^{r_1} b^{s_1} # ... # a^{r_M} b^{s_M}

and the identity is the empty word.  Words are plain ``str``; a convolution is
a tuple of columns, each column a tuple with one symbol per track and ``PAD``
where a track has run out.
"""
from __future__ import annotations

import re
from typing import Sequence

from .group import NormalForm

__all__ = [
    "SYMBOLS",
    "PAD",
    "PAIR_ALPHABET",
    "InvalidWordError",
    "encode",
    "decode",
    "parse_blocks",
    "is_linf_valid",
    "convolve",
    "deconvolve",
    "format_convolution",
    "parse_convolution",
]

SYMBOLS = ("a", "b", "#")
PAD = "_"
# every column of a 2-track convolution; (PAD, PAD) never occurs
PAIR_ALPHABET = tuple(
    (x, y) for x in SYMBOLS + (PAD,) for y in SYMBOLS + (PAD,) if (x, y) != (PAD, PAD)
)

_BLOCK = re.compile(r"(a*)(b*)")


class InvalidWordError(ValueError):
    """A word over {a,b,#} that is not the encoding of a normal form.

    ``condition`` is one of ``alphabet``, ``trailing-#``, ``ba``,
    ``last-block`` or ``unreduced``.
    """

    def __init__(self, word: str, condition: str, detail: str):
        super().__init__(f"{word!r} is not in L_inf ({condition}): {detail}")
        self.word = word
        self.condition = condition


def encode(nf: NormalForm) -> str:
    return "#".join("a" * r + "b" * s for r, s in zip(nf.r, nf.s))


def parse_blocks(word: str) -> list[tuple[int, int]]:
    """Split a word into (r_i, s_i) blocks, checking every L_inf condition."""
    if word == "":
        return []
    bad = set(word) - set(SYMBOLS)
    if bad:
        raise InvalidWordError(word, "alphabet", f"symbols {sorted(bad)} not in {{a,b,#}}")
    if word.endswith("#"):
        raise InvalidWordError(word, "trailing-#", "last block is empty")
    blocks = []
    for i, chunk in enumerate(word.split("#")):
        m = _BLOCK.fullmatch(chunk)
        if m is None:
            raise InvalidWordError(word, "ba", f"block {i} = {chunk!r} has 'a' after 'b'")
        blocks.append((len(m.group(1)), len(m.group(2))))
    r_last, s_last = blocks[-1]
    if r_last and s_last:
        raise InvalidWordError(word, "last-block", "both r_M and s_M are nonzero")
    for i in range(len(blocks) - 1):
        (r, s), (r1, s1) = blocks[i], blocks[i + 1]
        if r and s and not (r1 or s1):
            raise InvalidWordError(
                word, "unreduced", f"r_{i} s_{i} > 0 but block {i + 1} is empty"
            )
    return blocks


def is_linf_valid(word: str) -> bool:
    try:
        parse_blocks(word)
    except InvalidWordError:
        return False
    return True


def decode(word: str) -> NormalForm:
    blocks = parse_blocks(word)
    return NormalForm(tuple(r for r, _ in blocks), tuple(s for _, s in blocks))


# -- convolution -------------------------------------------------------------


def convolve(words: Sequence[str]) -> tuple[tuple[str, ...], ...]:
    n = max((len(w) for w in words), default=0)
    return tuple(
        tuple(w[i] if i < len(w) else PAD for w in words) for i in range(n)
    )


def deconvolve(columns: Sequence[Sequence[str]], tracks: int = 2) -> tuple[str, ...]:
    if not columns:
        return ("",) * tracks
    k = len(columns[0])
    out = [[] for _ in range(k)]
    ended = [False] * k
    for pos, col in enumerate(columns):
        if len(col) != k:
            raise ValueError(f"column {pos} has {len(col)} tracks, expected {k}")
        if all(c == PAD for c in col):
            raise ValueError(f"column {pos} is all padding")
        for t, c in enumerate(col):
            if c == PAD:
                ended[t] = True
            elif ended[t]:
                raise ValueError(f"track {t} resumes after padding at column {pos}")
            else:
                out[t].append(c)
    return tuple("".join(o) for o in out)


def format_convolution(columns: Sequence[Sequence[str]], inline: bool = True) -> str:
    """Inline ``(a|b)(_|b)`` form, or one line per track."""
    if inline:
        return "".join("(" + "|".join(col) + ")" for col in columns)
    if not columns:
        return ""
    return "\n".join("".join(col[t] for col in columns) for t in range(len(columns[0])))


_COLUMN = re.compile(r"\(([^()]*)\)")


def parse_convolution(text: str) -> tuple[tuple[str, ...], ...]:
    """Parse either serialized form back into columns.

    Raises ValueError on malformed text or on columns that violate the
    padding invariants.
    """
    text = text.strip()
    if not text:
        return ()
    if text.startswith("("):
        pos, cols = 0, []
        for m in _COLUMN.finditer(text):
            if m.start() != pos:
                raise ValueError(f"unexpected text at position {pos}")
            cols.append(tuple(m.group(1).split("|")))
            pos = m.end()
        if pos != len(text):
            raise ValueError(f"unexpected text at position {pos}")
    else:
        rows = text.splitlines()
        n = max(len(r) for r in rows)
        cols = [tuple(r[i] if i < len(r) else PAD for r in rows) for i in range(n)]
    for col in cols:
        for c in col:
            if c not in SYMBOLS and c != PAD:
                raise ValueError(f"bad symbol {c!r} in convolution")
    words = deconvolve(cols, tracks=len(cols[0]))
    return convolve(words)
