"""Deterministic non-blind 1-counter automata.

A machine reads one symbol per step.  Each transition carries a guard on the
sign of the counter (checked before the move) and an action on the counter.
A word is accepted when the run ends in an accepting state with counter 0.
Plain finite automata are the special case where every guard is ``any`` and
every action is ``+0``.

Symbols are hashable values: single characters for one-track machines and
tuples of characters for convolution (pair) machines.  ``EPS`` (None) marks an
epsilon transition.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

__all__ = [
    "EPS",
    "DELTA_CAP",
    "ENUM_CAP",
    "Guard",
    "CounterAction",
    "Transition",
    "CounterAutomaton",
    "Conflict",
    "RunResult",
    "NondeterminismError",
    "SymbolError",
    "AlphabetMismatchError",
    "UnsupportedEpsilonError",
    "symbol_text",
    "run",
    "accepts",
    "check_deterministic",
    "intersect_regular",
    "eliminate_epsilon",
    "enumerate_accepted",
    "union_accepts",
    "trim",
]

Symbol = Hashable
EPS = None
DELTA_CAP = 4
ENUM_CAP = 16

_SIGNS = (-1, 0, 1)


class Guard(enum.Enum):
    ANY = "any"
    EQ_ZERO = "=0"
    GT_ZERO = ">0"
    LT_ZERO = "<0"

    @property
    def signs(self) -> frozenset[int]:
        return _GUARD_SIGNS[self]

    def enables(self, counter: int) -> bool:
        return self is Guard.ANY or (counter > 0) - (counter < 0) in self.signs

    def conjoin(self, other: "Guard") -> "Guard | None":
        """Guard enabled exactly where both are, or None if never."""
        signs = self.signs & other.signs
        if not signs:
            return None
        return _SIGNS_GUARD[signs]


_GUARD_SIGNS = {
    Guard.ANY: frozenset(_SIGNS),
    Guard.EQ_ZERO: frozenset({0}),
    Guard.GT_ZERO: frozenset({1}),
    Guard.LT_ZERO: frozenset({-1}),
}
_SIGNS_GUARD = {v: k for k, v in _GUARD_SIGNS.items()}


@dataclass(frozen=True)
class CounterAction:
    delta: int = 0
    reset: bool = False

    def __post_init__(self):
        if abs(self.delta) > DELTA_CAP:
            raise ValueError(f"|delta| must be <= {DELTA_CAP}, got {self.delta}")
        if self.reset and self.delta:
            raise ValueError("set-to-zero carries no delta")

    def apply(self, counter: int) -> int:
        return 0 if self.reset else counter + self.delta

    @property
    def is_noop(self) -> bool:
        return not self.reset and self.delta == 0

    def __str__(self):
        if self.reset:
            return ":=0"
        return f"{self.delta:+d}" if self.delta else "0"


NOOP = CounterAction()


def symbol_text(sym: Symbol) -> str:
    if sym is EPS:
        return "eps"
    if isinstance(sym, tuple):
        return "|".join(sym)
    return str(sym)


@dataclass(frozen=True)
class Transition:
    src: str
    symbol: Symbol
    guard: Guard = Guard.ANY
    action: CounterAction = NOOP
    dst: str = ""

    def label(self) -> str:
        return f"{symbol_text(self.symbol)} [{self.guard.value}] / {self.action}"


@dataclass(frozen=True)
class CounterAutomaton:
    """Immutable machine description.

    ``states`` keeps insertion order (used by exports); transitions are kept
    in a canonical order so that equality is structural.
    """

    alphabet: tuple
    states: tuple[str, ...]
    start: str
    accepts: frozenset[str]
    transitions: tuple[Transition, ...]
    name: str = ""

    def __post_init__(self):
        states = tuple(dict.fromkeys(self.states))
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "accepts", frozenset(self.accepts))
        known = set(states)
        if self.start not in known:
            raise ValueError(f"start state {self.start!r} is not a state")
        if not self.accepts <= known:
            raise ValueError(f"accept states {sorted(self.accepts - known)} are not states")
        alpha = set(self.alphabet)
        for t in self.transitions:
            if t.src not in known or t.dst not in known:
                raise ValueError(f"transition {t} uses an unknown state")
            if t.symbol is not EPS and t.symbol not in alpha:
                raise ValueError(f"transition symbol {symbol_text(t.symbol)!r} not in alphabet")
        order = {q: i for i, q in enumerate(states)}
        canon = sorted(
            set(self.transitions),
            key=lambda t: (order[t.src], symbol_text(t.symbol), t.guard.value,
                           str(t.action), order[t.dst]),
        )
        object.__setattr__(self, "transitions", tuple(canon))

    @cached_property
    def _table(self) -> dict:
        table: dict = {}
        for t in self.transitions:
            if t.symbol is not EPS:
                table.setdefault((t.src, t.symbol), []).append(t)
        return {k: tuple(v) for k, v in table.items()}

    @cached_property
    def has_epsilon(self) -> bool:
        return any(t.symbol is EPS for t in self.transitions)

    @property
    def is_fsa(self) -> bool:
        return all(t.guard is Guard.ANY and t.action.is_noop for t in self.transitions)

    def out(self, state: str, symbol: Symbol) -> tuple[Transition, ...]:
        return self._table.get((state, symbol), ())


class NondeterminismError(RuntimeError):
    pass


class SymbolError(ValueError):
    pass


class AlphabetMismatchError(ValueError):
    pass


class UnsupportedEpsilonError(ValueError):
    pass


@dataclass
class RunResult:
    accepted: bool
    trace: list[tuple[str, int]] = field(default_factory=list)
    reason: str = ""

    def __bool__(self):
        return self.accepted

    @property
    def max_abs_counter(self) -> int:
        return max(abs(c) for _, c in self.trace)


def run(m: CounterAutomaton, word: Sequence[Symbol]) -> RunResult:
    """Run a deterministic machine, recording every (state, counter) visited."""
    if m.has_epsilon:
        raise NondeterminismError(f"{m.name or 'machine'} has epsilon transitions")
    alpha = set(m.alphabet)
    state, counter = m.start, 0
    trace = [(state, counter)]
    for pos, sym in enumerate(word):
        if sym not in alpha:
            raise SymbolError(f"symbol {symbol_text(sym)!r} at position {pos} not in alphabet")
        enabled = [t for t in m.out(state, sym) if t.guard.enables(counter)]
        if len(enabled) > 1:
            raise NondeterminismError(
                f"{len(enabled)} moves from {state!r} on {symbol_text(sym)!r} "
                f"with counter {counter}"
            )
        if not enabled:
            return RunResult(False, trace, f"no move at position {pos}")
        t = enabled[0]
        state, counter = t.dst, t.action.apply(counter)
        trace.append((state, counter))
    if state not in m.accepts:
        return RunResult(False, trace, f"ended in non-accepting state {state!r}")
    if counter != 0:
        return RunResult(False, trace, f"ended with counter {counter}")
    return RunResult(True, trace, "accepted")


def accepts(m: CounterAutomaton, word: Sequence[Symbol]) -> bool:
    """Trace-free acceptance for deterministic machines."""
    table = m._table
    state, counter = m.start, 0
    for sym in word:
        for t in table.get((state, sym), ()):
            if t.guard.enables(counter):
                state, counter = t.dst, t.action.apply(counter)
                break
        else:
            return False
    return counter == 0 and state in m.accepts


def union_accepts(machines: Iterable[CounterAutomaton], word: Sequence[Symbol]) -> bool:
    word = tuple(word)
    return any(run(m, word).accepted for m in machines)


@dataclass(frozen=True)
class Conflict:
    state: str
    symbol: Symbol
    sign: int | None
    transitions: tuple[Transition, ...]

    def __str__(self):
        if self.symbol is EPS:
            return f"{self.state}: epsilon transition"
        sign = {-1: "negative", 0: "zero", 1: "positive"}[self.sign]
        return f"{self.state}: {len(self.transitions)} moves on {symbol_text(self.symbol)} when {sign}"


def check_deterministic(m: CounterAutomaton) -> list[Conflict]:
    conflicts = []
    for t in m.transitions:
        if t.symbol is EPS:
            conflicts.append(Conflict(t.src, EPS, None, (t,)))
    for (state, sym), ts in m._table.items():
        for sign in _SIGNS:
            enabled = tuple(t for t in ts if sign in t.guard.signs)
            if len(enabled) > 1:
                conflicts.append(Conflict(state, sym, sign, enabled))
    return conflicts


def trim(m: CounterAutomaton) -> CounterAutomaton:
    """Drop states that are unreachable or cannot reach acceptance.

    Counter guards are ignored, so the language is unchanged.
    """
    succ: dict[str, set[str]] = {q: set() for q in m.states}
    pred: dict[str, set[str]] = {q: set() for q in m.states}
    for t in m.transitions:
        succ[t.src].add(t.dst)
        pred[t.dst].add(t.src)

    def closure(seeds, edges):
        seen = set(seeds)
        todo = list(seeds)
        while todo:
            for q in edges[todo.pop()]:
                if q not in seen:
                    seen.add(q)
                    todo.append(q)
        return seen

    keep = closure([m.start], succ) & closure(m.accepts, pred)
    keep.add(m.start)
    return CounterAutomaton(
        m.alphabet,
        tuple(q for q in m.states if q in keep),
        m.start,
        m.accepts & keep,
        tuple(t for t in m.transitions if t.src in keep and t.dst in keep),
        m.name,
    )


def intersect_regular(m: CounterAutomaton, f: CounterAutomaton, name: str = "") -> CounterAutomaton:
    """Product machine for L(m) & L(f); the counter comes from m."""
    if set(m.alphabet) != set(f.alphabet):
        raise AlphabetMismatchError("machines have different alphabets")
    if not f.is_fsa or f.has_epsilon:
        raise ValueError("second operand must be an epsilon-free plain FSA")

    def key(p, q):
        return f"{p}&{q}"

    start = (m.start, f.start)
    seen = {start}
    order = [start]
    todo = deque([start])
    transitions = []
    m_eps: dict[str, list[Transition]] = {}
    for t in m.transitions:
        if t.symbol is EPS:
            m_eps.setdefault(t.src, []).append(t)
    while todo:
        p, q = todo.popleft()
        moves = [(t, q) for t in m_eps.get(p, ())]
        for sym in m.alphabet:
            for t in m.out(p, sym):
                for u in f.out(q, sym):
                    moves.append((t, u.dst))
        for t, q2 in moves:
            nxt = (t.dst, q2)
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                todo.append(nxt)
            transitions.append(Transition(key(p, q), t.symbol, t.guard, t.action, key(*nxt)))
    accepting = {key(p, q) for p, q in order if p in m.accepts and q in f.accepts}
    return trim(CounterAutomaton(
        m.alphabet,
        tuple(key(p, q) for p, q in order),
        key(*start),
        accepting,
        tuple(transitions),
        name or f"{m.name}&{f.name}",
    ))


def eliminate_epsilon(m: CounterAutomaton) -> CounterAutomaton:
    """Equivalent epsilon-free machine.

    Epsilon moves may carry guards but must leave the counter alone, so the
    counter sign is fixed along an epsilon path.  Reachability is computed
    per sign and the resulting sign sets are folded back into guards (split
    into single-sign guards when no one guard fits).
    """
    eps: dict[str, list[Transition]] = {}
    for t in m.transitions:
        if t.symbol is EPS:
            if not t.action.is_noop:
                raise UnsupportedEpsilonError(f"epsilon transition {t} changes the counter")
            eps.setdefault(t.src, []).append(t)
    if not eps:
        return m

    def reach(p, sign):
        seen, todo = {p}, [p]
        while todo:
            for t in eps.get(todo.pop(), ()):
                if sign in t.guard.signs and t.dst not in seen:
                    seen.add(t.dst)
                    todo.append(t.dst)
        return seen

    moves: dict[tuple, set[int]] = {}
    accepting = set(m.accepts)
    for p in m.states:
        for sign in _SIGNS:
            for q in reach(p, sign):
                if sign == 0 and q in m.accepts:
                    accepting.add(p)
                for t in m.transitions:
                    if t.src == q and t.symbol is not EPS and sign in t.guard.signs:
                        moves.setdefault((p, t.symbol, t.action, t.dst), set()).add(sign)
    transitions = []
    for (p, sym, action, dst), signs in moves.items():
        guard = _SIGNS_GUARD.get(frozenset(signs))
        guards = [guard] if guard else [_SIGNS_GUARD[frozenset({s})] for s in sorted(signs)]
        transitions.extend(Transition(p, sym, g, action, dst) for g in guards)
    out = CounterAutomaton(m.alphabet, m.states, m.start, accepting, tuple(transitions), m.name)
    return trim(out)


def _step_configs(m, configs, sym, bound):
    out = set()
    for state, counter in configs:
        for t in m.out(state, sym):
            if t.guard.enables(counter):
                c = t.action.apply(counter)
                if abs(c) <= bound:
                    out.add((t.dst, c))
    return out


def _eps_closure(m, configs, bound):
    eps: dict[str, list[Transition]] = {}
    for t in m.transitions:
        if t.symbol is EPS:
            eps.setdefault(t.src, []).append(t)
    if not eps:
        return configs
    seen = set(configs)
    todo = list(configs)
    while todo:
        state, counter = todo.pop()
        for t in eps.get(state, ()):
            if t.guard.enables(counter):
                nxt = (t.dst, t.action.apply(counter))
                if abs(nxt[1]) <= bound and nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
    return seen


def enumerate_accepted(m: CounterAutomaton, max_len: int) -> set[tuple]:
    """Every accepted word of length <= max_len, by exhaustive search.

    Works for nondeterministic machines too (configuration sets).  The
    counter can move at most DELTA_CAP per step, so unless some move resets
    it, configurations whose counter cannot return to zero in the remaining
    steps are dropped.
    """
    if not 0 <= max_len <= ENUM_CAP:
        raise ValueError(f"max_len must be in [0, {ENUM_CAP}]")
    live = trim(m)
    alive = set(live.states)
    found: set[tuple] = set()
    bound = DELTA_CAP * max_len
    resets = any(t.action.reset for t in live.transitions)

    def visit(prefix, configs):
        reach = bound if resets else DELTA_CAP * (max_len - len(prefix))
        configs = {(q, c) for q, c in _eps_closure(live, configs, bound)
                   if q in alive and abs(c) <= reach}
        if not configs:
            return
        if any(q in live.accepts and c == 0 for q, c in configs):
            found.add(prefix)
        if len(prefix) == max_len:
            return
        for sym in live.alphabet:
            nxt = _step_configs(live, configs, sym, bound)
            if nxt:
                visit(prefix + (sym,), nxt)

    visit((), {(live.start, 0)})
    return found
