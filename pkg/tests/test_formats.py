import pytest

from thompsonf.automata import CounterAutomaton, Guard, Transition
from thompsonf.formats import (
    MachineFormatError,
    dump_machine,
    export_dot,
    parse_dot,
    parse_machine,
)
from thompsonf.structure import load_machine, machine_names

ALL = machine_names()


@pytest.mark.parametrize("name", ALL)
def test_cam_round_trip(name):
    m = load_machine(name)
    assert parse_machine(dump_machine(m)) == m


@pytest.mark.parametrize("name", ALL)
def test_dot_round_trip(name):
    m = load_machine(name)
    text = export_dot(m)
    assert parse_dot(text) == m
    assert export_dot(parse_dot(text)) == text


def test_dot_is_deterministic():
    assert export_dot(load_machine("fig4")) == export_dot(load_machine("fig4"))


def test_fig1_dot_shape():
    text = export_dot(load_machine("fig1"))
    nodes = [l for l in text.splitlines() if "[shape=" in l and "__start" not in l]
    assert len(nodes) == 6
    assert sum("doublecircle" in l for l in nodes) == 3
    assert text.startswith('digraph "fig1" {')
    assert '"q0" -> "q1" [label="a [any] / 0"];' in text


def test_single_state_machine():
    m = CounterAutomaton(("a",), ("s",), "s", frozenset({"s"}),
                         (Transition("s", "a", Guard.GT_ZERO, dst="s"),), "")
    assert parse_dot(export_dot(m)) == m
    assert parse_machine(dump_machine(m)) == m


def test_unusual_state_names():
    m = CounterAutomaton(("a",), ('p "x"', "q\\1"), 'p "x"', frozenset({"q\\1"}),
                         (Transition('p "x"', "a", dst="q\\1"),), "odd name")
    assert parse_dot(export_dot(m)) == m


def test_edge_syntax():
    m = parse_machine("""
        ; a comment
        name: demo
        tracks: 2
        states: q0 q1
        start: q0
        accept: q1
        q0 --b|b/+2--> q1   ; trailing comment
        q1 --#|#[>0]/-1--> q1
        q1 --_|b[=0]/:=0--> q1
        q1 --eps[<0]--> q0
    """)
    labels = sorted(t.label() for t in m.transitions)
    assert labels == ["#|# [>0] / -1", "_|b [=0] / :=0", "b|b [any] / +2", "eps [<0] / 0"]
    assert m.name == "demo" and len(m.alphabet) == 15


def test_include():
    m = parse_machine(
        "name: x\ntracks: 2\ninclude: S = m1\nstates: q0\nstart: q0\naccept:\n"
        "q0 --a|a--> S\n",
        resolve=load_machine,
    )
    sub = load_machine("m1")
    assert f"S.{sub.start}" in m.states
    assert {f"S.{q}" for q in sub.accepts} <= m.accepts
    assert any(t.dst == f"S.{sub.start}" for t in m.transitions)


@pytest.mark.parametrize("text,match", [
    ("alphabet: a\nstates: q\n", "start"),
    ("start: q\n", "alphabet"),
    ("alphabet: a\nstart: q\nq --a[>1]--> q\n", "guard"),
    ("alphabet: a\nstart: q\nq -a-> q\n", "expected"),
    ("alphabet: a\nstart: q\nq --a--> \n", "malformed"),
    ("alphabet: a\nstart: q\ncolour: red\n", "unknown header"),
    ("alphabet: a\nstart: q\nq --a/+9--> q\n", "delta"),
    ("alphabet: a\nstart: q\ninclude: M = m1\n", "include"),
    ("tracks: 3\nstart: q\n", "2-track"),
    ("alphabet: a\nstart: q\naccept: r\n", "accept"),
])
def test_parse_errors(text, match):
    with pytest.raises(MachineFormatError, match=match):
        parse_machine(text)


def test_error_carries_line():
    with pytest.raises(MachineFormatError) as info:
        parse_machine("alphabet: a\nstart: q\n\nbogus line\n")
    assert info.value.line == 4


def test_parse_dot_rejects_other_text():
    with pytest.raises(MachineFormatError):
        parse_dot("digraph G { a -> b; }")
