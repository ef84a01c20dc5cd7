"""Text formats for machines: the ``.cam`` definition format and DOT.

A ``.cam`` file looks like::

    ; comment
    name: fig2
    tracks: 2
    states: q0 q1 q2 q3
    start: q0
    accept: q3
    include: M1 = m1
    q0 --a|a--> q0
    q0 --b|b/+2--> q1
    q1 --#|#[>0]/-1--> q1
    q2 --eps[=0]--> M1

``tracks: 2`` selects the padded pair alphabet; otherwise ``alphabet:``
lists the symbols.  ``include: M1 = m1`` copies machine ``m1`` in with its
states renamed ``M1.<state>``; an edge into ``M1`` lands on its start state
and its accept states stay accepting.
"""
from __future__ import annotations

import re
from typing import Callable

from .automata import (
    EPS,
    CounterAction,
    CounterAutomaton,
    Guard,
    Transition,
    symbol_text,
)
from .encoding import PAIR_ALPHABET

__all__ = [
    "MachineFormatError",
    "parse_symbol",
    "parse_machine",
    "dump_machine",
    "export_dot",
    "parse_dot",
]

_EDGE = re.compile(
    r"^(?P<src>\S+)\s+--(?P<sym>[^\[/\s]+?)(?:\[(?P<guard>[^\]]*)\])?"
    r"(?:/(?P<act>[+-]?\d+|:=0))?-->\s+(?P<dst>\S+)$"
)
_GUARDS = {g.value: g for g in Guard}


class MachineFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def parse_symbol(text: str):
    if text == "eps":
        return EPS
    if "|" in text:
        return tuple(text.split("|"))
    return text


def _parse_action(text: str | None) -> CounterAction:
    if text is None:
        return CounterAction()
    if text == ":=0":
        return CounterAction(reset=True)
    return CounterAction(int(text))


def parse_machine(
    text: str,
    resolve: Callable[[str], CounterAutomaton] | None = None,
    name: str = "",
) -> CounterAutomaton:
    """Parse ``.cam`` text; ``resolve`` loads machines named by ``include``."""
    alphabet: tuple | None = None
    states: list[str] = []
    start = None
    accepts: set[str] = set()
    includes: dict[str, CounterAutomaton] = {}
    edges: list[tuple[int, re.Match]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        if "-->" in line:
            m = _EDGE.match(line)
            if m is None:
                raise MachineFormatError(f"malformed transition {line!r}", lineno)
            edges.append((lineno, m))
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise MachineFormatError(f"expected 'key: value', got {line!r}", lineno)
        key, value = key.strip(), value.strip()
        if key == "name":
            name = value
        elif key == "alphabet":
            alphabet = tuple(parse_symbol(t) for t in value.split())
        elif key == "tracks":
            if value != "2":
                raise MachineFormatError("only 2-track machines are supported", lineno)
            alphabet = PAIR_ALPHABET
        elif key == "states":
            states.extend(value.split())
        elif key == "start":
            start = value
        elif key == "accept":
            accepts.update(value.split())
        elif key == "include":
            alias, eq, target = value.partition("=")
            if not eq or resolve is None:
                raise MachineFormatError(f"cannot resolve include {value!r}", lineno)
            includes[alias.strip()] = resolve(target.strip())
        else:
            raise MachineFormatError(f"unknown header {key!r}", lineno)

    if alphabet is None:
        raise MachineFormatError("missing alphabet (or tracks) header")
    if start is None:
        raise MachineFormatError("missing start header")

    def target(q: str) -> str:
        sub = includes.get(q)
        return f"{q}.{sub.start}" if sub is not None else q

    transitions = []
    states.append(start)
    for lineno, m in edges:
        guard_text = m.group("guard") or "any"
        if guard_text not in _GUARDS:
            raise MachineFormatError(f"unknown guard {guard_text!r}", lineno)
        try:
            action = _parse_action(m.group("act"))
        except ValueError as exc:
            raise MachineFormatError(str(exc), lineno) from None
        src, dst = target(m.group("src")), target(m.group("dst"))
        states.extend((src, dst))
        transitions.append(
            Transition(src, parse_symbol(m.group("sym")), _GUARDS[guard_text], action, dst)
        )
    for alias, sub in includes.items():
        if set(sub.alphabet) != set(alphabet):
            raise MachineFormatError(f"included machine {alias} has a different alphabet")
        states.extend(f"{alias}.{q}" for q in sub.states)
        accepts.update(f"{alias}.{q}" for q in sub.accepts)
        for t in sub.transitions:
            transitions.append(
                Transition(f"{alias}.{t.src}", t.symbol, t.guard, t.action, f"{alias}.{t.dst}")
            )
    try:
        return CounterAutomaton(alphabet, tuple(states), start, frozenset(accepts),
                                tuple(transitions), name)
    except ValueError as exc:
        raise MachineFormatError(str(exc)) from None


def _edge_text(t: Transition) -> str:
    out = f"{t.src} --{symbol_text(t.symbol)}"
    if t.guard is not Guard.ANY:
        out += f"[{t.guard.value}]"
    if not t.action.is_noop:
        out += f"/{t.action}"
    return out + f"--> {t.dst}"


def dump_machine(m: CounterAutomaton) -> str:
    lines = []
    if m.name:
        lines.append(f"name: {m.name}")
    if set(m.alphabet) == set(PAIR_ALPHABET):
        lines.append("tracks: 2")
    else:
        lines.append("alphabet: " + " ".join(symbol_text(s) for s in m.alphabet))
    lines.append("states: " + " ".join(m.states))
    lines.append(f"start: {m.start}")
    lines.append("accept: " + " ".join(q for q in m.states if q in m.accepts))
    lines.extend(_edge_text(t) for t in m.transitions)
    return "\n".join(lines) + "\n"


# -- DOT ---------------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(m: CounterAutomaton) -> str:
    """Graphviz text with deterministic ordering.

    Nodes follow state insertion order; edges are sorted by their text.
    """
    lines = [f"digraph {_quote(m.name or 'machine')} {{"]
    lines.append("  // alphabet: " + " ".join(symbol_text(s) for s in m.alphabet))
    lines.append("  rankdir=LR;")
    lines.append("  __start [shape=point];")
    for q in m.states:
        shape = "doublecircle" if q in m.accepts else "circle"
        lines.append(f"  {_quote(q)} [shape={shape}];")
    lines.append(f"  __start -> {_quote(m.start)};")
    edges = sorted(
        f"  {_quote(t.src)} -> {_quote(t.dst)} [label={_quote(t.label())}];"
        for t in m.transitions
    )
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_NODE = re.compile(r'^\s*"((?:[^"\\]|\\.)*)" \[shape=(\w+)\];$')
_DOT_EDGE = re.compile(
    r'^\s*"((?:[^"\\]|\\.)*)" -> "((?:[^"\\]|\\.)*)" \[label="((?:[^"\\]|\\.)*)"\];$'
)
_DOT_START = re.compile(r'^\s*__start -> "((?:[^"\\]|\\.)*)";$')
_DOT_NAME = re.compile(r'^digraph "((?:[^"\\]|\\.)*)" \{$')
_LABEL = re.compile(r"^(\S+) \[([^\]]+)\] / (\S+)$")


def _unquote(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s)


def parse_dot(text: str) -> CounterAutomaton:
    """Inverse of export_dot (only reads what export_dot writes)."""
    name, alphabet, start = "", None, None
    states: list[str] = []
    accepts: set[str] = set()
    transitions = []
    for line in text.splitlines():
        if m := _DOT_NAME.match(line):
            name = _unquote(m.group(1))
            name = "" if name == "machine" else name
        elif line.strip().startswith("// alphabet:"):
            alphabet = tuple(parse_symbol(t) for t in line.split(":", 1)[1].split())
        elif m := _DOT_START.match(line):
            start = _unquote(m.group(1))
        elif m := _DOT_NODE.match(line):
            q = _unquote(m.group(1))
            states.append(q)
            if m.group(2) == "doublecircle":
                accepts.add(q)
        elif m := _DOT_EDGE.match(line):
            lab = _LABEL.match(_unquote(m.group(3)))
            if lab is None:
                raise MachineFormatError(f"bad edge label in {line.strip()!r}")
            transitions.append(Transition(
                _unquote(m.group(1)),
                parse_symbol(lab.group(1)),
                _GUARDS[lab.group(2)],
                _parse_action(None if lab.group(3) == "0" else lab.group(3)),
                _unquote(m.group(2)),
            ))
    if alphabet is None or start is None:
        raise MachineFormatError("not a machine DOT export")
    return CounterAutomaton(alphabet, tuple(states), start, frozenset(accepts),
                            tuple(transitions), name)
