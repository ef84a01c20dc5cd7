"""Regular pattern languages and the splice construction.

Patterns are tiny regular expressions over {a,b,#}: a sequence of atoms
(``a``, ``b``, ``#``, ``.`` or a class like ``[ab]``), each optionally
followed by ``*`` or ``+``.

``splice_dfa(Z, x, y, W)`` builds a DFA over the pair alphabet for

    { conv(z x w, z y w) : z in L(Z), w in L(W) }

where x and y are fixed words.  The two tracks agree on z, differ on the
fixed heads x / y, then carry the same w shifted by |x| - |y| columns, so a
bounded queue of pending symbols is all the memory needed.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass

from .automata import CounterAutomaton, Transition
from .encoding import PAD, PAIR_ALPHABET, SYMBOLS, convolve

__all__ = [
    "DFA",
    "compile_pattern",
    "pattern_regex",
    "splice_dfa",
    "SpliceSpec",
    "SPLICE_SPECS",
]

_ATOM = re.compile(r"(\[[ab#]+\]|[ab#.])([*+]?)")


@dataclass
class DFA:
    """Partial DFA with integer states; missing moves go to a dead state."""

    start: int
    accepts: frozenset[int]
    delta: dict[tuple[int, object], int]
    alphabet: tuple

    @property
    def states(self) -> list[int]:
        seen = {self.start}
        for (q, _), p in self.delta.items():
            seen.update((q, p))
        return sorted(seen)

    def step(self, q, c):
        return self.delta.get((q, c))

    def accepts_word(self, word) -> bool:
        q = self.start
        for c in word:
            q = self.delta.get((q, c))
            if q is None:
                return False
        return q in self.accepts

    def to_automaton(self, name: str = "") -> CounterAutomaton:
        return CounterAutomaton(
            self.alphabet,
            tuple(f"q{q}" for q in self.states),
            f"q{self.start}",
            frozenset(f"q{q}" for q in self.accepts),
            tuple(Transition(f"q{q}", c, dst=f"q{p}") for (q, c), p in self.delta.items()),
            name,
        )


def _atoms(pattern: str) -> list[tuple[frozenset[str], str]]:
    out, pos = [], 0
    while pos < len(pattern):
        m = _ATOM.match(pattern, pos)
        if m is None:
            raise ValueError(f"bad pattern {pattern!r} at position {pos}")
        atom, quant = m.groups()
        if atom == ".":
            chars = frozenset(SYMBOLS)
        elif atom.startswith("["):
            chars = frozenset(atom[1:-1])
        else:
            chars = frozenset(atom)
        out.append((chars, quant))
        pos = m.end()
    return out


def pattern_regex(pattern: str) -> str:
    """The same language as a Python ``re`` pattern."""
    parts = []
    for chars, quant in _atoms(pattern):
        parts.append("[" + "".join(sorted(chars)) + "]" + quant)
    return "".join(parts)


def _determinize(start, eps, moves, accepting, alphabet) -> DFA:
    """Subset construction.  ``moves(q, c)`` yields successors, ``eps(q)``
    yields epsilon successors and ``accepting(q)`` tests a single state."""

    def closure(qs):
        seen = set(qs)
        todo = list(qs)
        while todo:
            for p in eps(todo.pop()):
                if p not in seen:
                    seen.add(p)
                    todo.append(p)
        return frozenset(seen)

    first = closure([start])
    index = {first: 0}
    todo = deque([first])
    delta = {}
    accepts = set()
    while todo:
        qs = todo.popleft()
        i = index[qs]
        if any(accepting(q) for q in qs):
            accepts.add(i)
        for c in alphabet:
            nxt = closure([p for q in qs for p in moves(q, c)])
            if not nxt:
                continue
            if nxt not in index:
                index[nxt] = len(index)
                todo.append(nxt)
            delta[(i, c)] = index[nxt]
    return minimize(DFA(0, frozenset(accepts), delta, tuple(alphabet)))


def minimize(d: DFA) -> DFA:
    """Moore partition refinement; dead states are dropped and the rest are
    renumbered in breadth-first order from the start."""
    states = d.states
    dead = -1
    block = {q: int(q in d.accepts) for q in states}
    block[dead] = 0
    while True:
        sig = {
            q: (block[q],) + tuple(block[d.delta.get((q, c), dead)] for c in d.alphabet)
            for q in block
        }
        ids: dict = {}
        new = {q: ids.setdefault(s, len(ids)) for q, s in sig.items()}
        if len(ids) == len(set(block.values())):
            break
        block = new
    dead_block = block[dead]
    order = {block[d.start]: 0}
    todo = deque([d.start])
    rep = {block[d.start]: d.start}
    delta = {}
    while todo:
        q = todo.popleft()
        for c in d.alphabet:
            p = d.delta.get((q, c))
            if p is None or block[p] == dead_block:
                continue
            if block[p] not in order:
                order[block[p]] = len(order)
                rep[block[p]] = p
                todo.append(p)
            delta[(order[block[q]], c)] = order[block[p]]
    accepts = frozenset(order[b] for b, q in rep.items() if q in d.accepts)
    return DFA(0, accepts, delta, d.alphabet)


def compile_pattern(pattern: str) -> DFA:
    atoms = _atoms(pattern)
    # NFA state k sits after atom k-1; starred atoms loop on a fresh state
    char_moves: dict[tuple[int, str], set[int]] = {}
    eps_moves: dict[int, set[int]] = {}
    cur = 0
    for n, (chars, quant) in enumerate(atoms, 1):
        if quant == "*":
            eps_moves.setdefault(cur, set()).add(n)
        for c in chars:
            if quant != "*":
                char_moves.setdefault((cur, c), set()).add(n)
            if quant:
                char_moves.setdefault((n, c), set()).add(n)
        cur = n
    final = cur
    return _determinize(
        0,
        lambda q: eps_moves.get(q, ()),
        lambda q, c: char_moves.get((q, c), ()),
        lambda q: q == final,
        SYMBOLS,
    )


def splice_dfa(z: str, x: str, y: str, w: str) -> DFA:
    """DFA over the pair alphabet for conv(z x w, z y w), z in Z, w in W."""
    Z, W = compile_pattern(z), compile_pattern(w)
    heads = (x, y)
    lead = 0 if len(x) <= len(y) else 1
    cap = max(len(x), len(y))

    def eps(state):
        if state[0] == "z" and state[1] in Z.accepts:
            yield ("r", 0, (), False, W.start)

    def moves(state, col):
        if state[0] == "z":
            if col[0] == col[1] and col[0] != PAD:
                q = Z.step(state[1], col[0])
                if q is not None:
                    yield ("z", q)
            return
        _, i, pending, done, wq = state
        pending = list(pending)
        for track in (lead, 1 - lead):
            c, head = col[track], heads[track]
            if i < len(head):
                if c != head[i]:
                    return
            elif track == lead:
                if done or c == PAD:
                    if c != PAD or wq not in W.accepts:
                        return
                    done = True
                else:
                    wq = W.step(wq, c)
                    if wq is None:
                        return
                    pending.append(c)
            else:
                if not pending or pending[0] != c:
                    return
                pending.pop(0)
        yield ("r", min(i + 1, cap), tuple(pending), done, wq)

    def accepting(state):
        return (state[0] == "r" and state[1] >= cap and not state[2]
                and state[4] in W.accepts)

    return _determinize(("z", Z.start), eps, moves, accepting, PAIR_ALPHABET)


@dataclass(frozen=True)
class SpliceSpec:
    """One pair family conv(z x w, z y w) with z, w drawn from patterns."""

    name: str
    z: str = ""
    x: str = ""
    y: str = ""
    w: str = ".*"

    def build(self) -> CounterAutomaton:
        return splice_dfa(self.z, self.x, self.y, self.w).to_automaton(self.name)

    def predicate(self, u: str, v: str) -> bool:
        zre, wre = re.compile(pattern_regex(self.z)), re.compile(pattern_regex(self.w))
        for k in range(len(u) + 1):
            z, rest = u[:k], u[k:]
            if not rest.startswith(self.x) or not zre.fullmatch(z):
                continue
            tail = rest[len(self.x):]
            if v == z + self.y + tail and wre.fullmatch(tail):
                return True
        return False

    def members(self, max_len: int) -> set[tuple]:
        """All convolutions of length <= max_len, generated from the patterns."""
        zre, wre = re.compile(pattern_regex(self.z)), re.compile(pattern_regex(self.w))
        words = ["".join(p) for n in range(max_len + 1)
                 for p in itertools.product(SYMBOLS, repeat=n)]
        zs = [s for s in words if zre.fullmatch(s)]
        ws = [s for s in words if wre.fullmatch(s)]
        head = max(len(self.x), len(self.y))
        out = set()
        for z in zs:
            for w in ws:
                if len(z) + head + len(w) <= max_len:
                    out.add(convolve([z + self.x + w, z + self.y + w]))
        return out


def _specs(*specs: SpliceSpec) -> dict[str, SpliceSpec]:
    return {s.name: s for s in specs}


SPLICE_SPECS = _specs(
    # suffix machines entered with counter 0
    SpliceSpec("m1", x="", y="#"),
    SpliceSpec("m2", x="", y="#", w="a+#.*"),
    SpliceSpec("m2b", x="", y="#", w="[ab].*"),
    SpliceSpec("m3", x="a##", y="#"),
    SpliceSpec("m5", x="##", y=""),
    # right multiplication by x0^-1
    SpliceSpec("x0inv_case1", z="a*b*", x="", y="b"),
    SpliceSpec("x0inv_case2", z="a*", x="a##", y="#"),
    SpliceSpec("x0inv_case2_literal", z="a+#", x="#", y=""),
    SpliceSpec("x0inv_patch", z="a*", x="a", y="", w=""),
    # right multiplication by x1^-1 when s_0 = 0
    SpliceSpec("x1inv_case1_1", z="a*", x="", y="#b", w=""),
    SpliceSpec("x1inv_case1_2", z="a*#a*b*", x="", y="b"),
    SpliceSpec("x1inv_case1_3a", z="a*#a+", x="a", y="", w=""),
    SpliceSpec("x1inv_case1_3b", z="a*", x="#a", y="", w=""),
    SpliceSpec("x1inv_case1_3c", z="a*#a+", x="a##", y="#"),
    SpliceSpec("x1inv_case1_3_patch", z="a*#", x="a##", y="#"),
)
