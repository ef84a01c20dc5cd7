import itertools

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from thompsonf.automata import (
    DELTA_CAP,
    EPS,
    CounterAction,
    CounterAutomaton,
    Guard,
    NondeterminismError,
    SymbolError,
    AlphabetMismatchError,
    Transition,
    UnsupportedEpsilonError,
    accepts,
    check_deterministic,
    eliminate_epsilon,
    enumerate_accepted,
    intersect_regular,
    run,
    trim,
    union_accepts,
)
from thompsonf.encoding import convolve
from thompsonf.structure import linf_fsa, load_machine

ANY, EQ, GT, LT = Guard.ANY, Guard.EQ_ZERO, Guard.GT_ZERO, Guard.LT_ZERO


def act(d=0):
    return CounterAction(d)


def machine(transitions, accepts_=("q1",), states=("q0", "q1"), alphabet=("a", "b"), name="t"):
    return CounterAutomaton(alphabet, states, "q0", frozenset(accepts_),
                            tuple(Transition(*t) for t in transitions), name)


# a^n b^n, n >= 0
ANBN = machine(
    [("q0", "a", ANY, act(1), "q0"), ("q0", "b", GT, act(-1), "q1"),
     ("q1", "b", GT, act(-1), "q1")],
    accepts_=("q0", "q1"),
)


def oracle_accepts(m, word):
    """Configuration-set simulation with unbounded counters."""
    def close(configs):
        seen, todo = set(configs), list(configs)
        while todo:
            q, c = todo.pop()
            for t in m.transitions:
                if t.src == q and t.symbol is EPS and t.guard.enables(c):
                    nxt = (t.dst, t.action.apply(c))
                    if nxt not in seen:
                        seen.add(nxt)
                        todo.append(nxt)
        return seen

    configs = close({(m.start, 0)})
    for sym in word:
        configs = close({(t.dst, t.action.apply(c)) for q, c in configs
                         for t in m.transitions
                         if t.src == q and t.symbol == sym and t.guard.enables(c)})
    return any(q in m.accepts and c == 0 for q, c in configs)


STATES = ("q0", "q1", "q2")
random_transitions = st.lists(
    st.tuples(st.sampled_from(STATES), st.sampled_from(("a", "b")),
              st.sampled_from(list(Guard)), st.integers(-2, 2).map(act),
              st.sampled_from(STATES)),
    max_size=9,
)
random_eps = st.lists(
    st.tuples(st.sampled_from(STATES), st.just(EPS), st.sampled_from(list(Guard)),
              st.just(act(0)), st.sampled_from(STATES)),
    max_size=3,
)


def random_machine(ts, accept):
    return machine(ts, accepts_=accept, states=STATES)


accept_sets = st.sets(st.sampled_from(STATES), min_size=1)


def words_upto(n, alphabet=("a", "b")):
    for k in range(n + 1):
        yield from itertools.product(alphabet, repeat=k)


class TestGuardsAndActions:
    def test_enables(self):
        assert ANY.enables(-3) and ANY.enables(0)
        assert EQ.enables(0) and not EQ.enables(1)
        assert GT.enables(2) and not GT.enables(0)
        assert LT.enables(-1) and not LT.enables(0)

    def test_conjoin(self):
        assert ANY.conjoin(GT) is GT
        assert GT.conjoin(EQ) is None
        assert EQ.conjoin(EQ) is EQ

    def test_actions(self):
        assert act(3).apply(1) == 4
        assert CounterAction(reset=True).apply(7) == 0
        assert str(act(-1)) == "-1" and str(act(2)) == "+2" and str(act()) == "0"
        assert str(CounterAction(reset=True)) == ":=0"

    def test_delta_cap(self):
        CounterAction(DELTA_CAP)
        with pytest.raises(ValueError):
            CounterAction(DELTA_CAP + 1)
        with pytest.raises(ValueError):
            CounterAction(1, reset=True)

    def test_label(self):
        t = Transition("p", ("#", "#"), GT, act(-1), "q")
        assert t.label() == "#|# [>0] / -1"


class TestMachine:
    def test_structural_equality(self):
        ts = [("q0", "a", ANY, act(1), "q0"), ("q0", "b", GT, act(-1), "q1")]
        assert machine(ts) == machine(list(reversed(ts)))

    def test_validation(self):
        with pytest.raises(ValueError):
            machine([], accepts_=("zz",))
        with pytest.raises(ValueError):
            machine([("q0", "c", ANY, act(), "q1")])
        with pytest.raises(ValueError):
            machine([("q0", "a", ANY, act(), "q9")])


class TestRun:
    def test_anbn(self):
        for n in range(6):
            assert run(ANBN, "a" * n + "b" * n).accepted
            assert not run(ANBN, "a" * n + "b" * (n + 1)).accepted
            assert not run(ANBN, "a" * (n + 1) + "b" * n).accepted

    def test_reasons_and_trace(self):
        r = run(ANBN, "aab")
        assert not r and "counter 1" in r.reason
        assert r.trace == [("q0", 0), ("q0", 1), ("q0", 2), ("q1", 1)]
        assert r.max_abs_counter == 2
        assert "no move" in run(ANBN, "ba").reason

    def test_fast_path_agrees(self):
        for w in words_upto(6):
            assert accepts(ANBN, w) == run(ANBN, w).accepted

    def test_unknown_symbol(self):
        with pytest.raises(SymbolError, match="position 1"):
            run(ANBN, "ac")

    def test_nondeterminism(self):
        m = machine([("q0", "a", ANY, act(), "q1"), ("q0", "a", GT, act(), "q0")])
        assert run(m, "a").accepted  # counter 0: only the first is enabled
        m2 = machine([("q0", "a", ANY, act(1), "q0"), ("q0", "a", GT, act(), "q1")])
        with pytest.raises(NondeterminismError):
            run(m2, "aa")

    def test_epsilon_rejected(self):
        m = machine([("q0", EPS, ANY, act(), "q1")])
        with pytest.raises(NondeterminismError):
            run(m, "")

    def test_fig2_example(self):
        # u = bb, v = bb ### b
        assert run(load_machine("fig2"), convolve(["bb", "bb###b"])).accepted
        assert not run(load_machine("fig2"), convolve(["bb", "bb##b"])).accepted

    def test_union(self):
        only_a = machine([("q0", "a", ANY, act(), "q1")])
        only_b = machine([("q0", "b", ANY, act(), "q1")])
        assert union_accepts([only_a, only_b], "b")
        assert not union_accepts([only_a, only_b], "ab")

    @given(random_transitions, accept_sets, st.lists(st.sampled_from("ab"), max_size=6))
    def test_matches_oracle(self, ts, acc, word):
        m = random_machine(ts, acc)
        assume(not check_deterministic(m))
        assert run(m, word).accepted == oracle_accepts(m, word)


class TestDeterminismLint:
    def test_clean(self):
        assert check_deterministic(ANBN) == []
        assert check_deterministic(linf_fsa()) == []

    def test_guard_overlap(self):
        m = machine([("q0", "a", ANY, act(), "q1"), ("q0", "a", GT, act(), "q0")])
        conflicts = check_deterministic(m)
        assert [(c.state, c.symbol, c.sign) for c in conflicts] == [("q0", "a", 1)]
        assert "positive" in str(conflicts[0])

    def test_disjoint_guards_are_fine(self):
        m = machine([("q0", "a", EQ, act(), "q1"), ("q0", "a", GT, act(), "q0"),
                     ("q0", "a", LT, act(), "q0")])
        assert check_deterministic(m) == []

    def test_epsilon_reported(self):
        m = machine([("q0", EPS, ANY, act(), "q1")])
        assert "epsilon" in str(check_deterministic(m)[0])


class TestIntersect:
    def test_with_universal(self):
        univ = machine([("q0", c, ANY, act(), "q0") for c in "ab"], accepts_=("q0",),
                       states=("q0",))
        both = intersect_regular(ANBN, univ)
        for w in words_upto(6):
            assert run(both, w).accepted == run(ANBN, w).accepted

    def test_restricts(self):
        even = machine([("q0", c, ANY, act(), "q1") for c in "ab"]
                       + [("q1", c, ANY, act(), "q0") for c in "ab"], accepts_=("q0",))
        both = intersect_regular(ANBN, even)
        for w in words_upto(8):
            assert run(both, w).accepted == (run(ANBN, w).accepted and len(w) % 2 == 0)

    def test_rejects_counter_operand(self):
        with pytest.raises(ValueError):
            intersect_regular(ANBN, ANBN)

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatchError):
            intersect_regular(ANBN, linf_fsa())

    @given(random_transitions, accept_sets, random_transitions, accept_sets)
    def test_random(self, ts, acc, fts, facc):
        m = random_machine(ts, acc)
        f = random_machine([(s, c, ANY, act(), d) for s, c, _, _, d in fts], facc)
        both = intersect_regular(m, f)
        for w in words_upto(4):
            assert oracle_accepts(both, w) == (oracle_accepts(m, w) and oracle_accepts(f, w))


class TestEpsilon:
    def test_chain(self):
        m = machine(
            [("q0", EPS, GT, act(), "q2"), ("q2", EPS, ANY, act(), "q1"),
             ("q0", "a", ANY, act(1), "q0"), ("q1", "b", GT, act(-1), "q1")],
            states=("q0", "q1", "q2"),
        )
        e = eliminate_epsilon(m)
        assert not e.has_epsilon
        for w in words_upto(6):
            assert oracle_accepts(e, w) == oracle_accepts(m, w)
        assert run(e, "aabb").accepted and not run(e, "ab" * 2).accepted

    def test_counter_changing_epsilon(self):
        m = machine([("q0", EPS, ANY, act(1), "q1")])
        with pytest.raises(UnsupportedEpsilonError):
            eliminate_epsilon(m)

    def test_fig4(self):
        m = load_machine("fig4")
        assert m.has_epsilon
        e = eliminate_epsilon(m)
        assert not e.has_epsilon
        assert enumerate_accepted(e, 7) == enumerate_accepted(m, 7)

    @given(random_transitions, random_eps, accept_sets)
    def test_random(self, ts, eps, acc):
        m = random_machine(ts + eps, acc)
        e = eliminate_epsilon(m)
        for w in words_upto(4):
            assert oracle_accepts(e, w) == oracle_accepts(m, w)


class TestEnumerate:
    def test_fig1(self):
        words = {"".join(w) for w in enumerate_accepted(linf_fsa(), 2)}
        assert words == {"", "a", "b", "aa", "bb", "#a", "#b"}

    def test_anbn(self):
        assert enumerate_accepted(ANBN, 5) == {(), ("a", "b"), ("a", "a", "b", "b")}

    def test_empty_language(self):
        m = machine([("q0", "a", ANY, act(), "q0")])
        assert enumerate_accepted(m, 6) == set()

    def test_fig2_contains_example(self):
        assert convolve(["bb", "bb###b"]) in enumerate_accepted(load_machine("fig2"), 6)

    def test_cap(self):
        with pytest.raises(ValueError):
            enumerate_accepted(ANBN, 99)

    def test_reset(self):
        # a^n then one reset: the counter would otherwise never come back
        m = machine([("q0", "a", ANY, act(4), "q0"),
                     ("q0", "b", ANY, CounterAction(reset=True), "q1")])
        assert ("a", "a", "a", "b") in enumerate_accepted(m, 4)

    @given(random_transitions, random_eps, accept_sets)
    def test_random(self, ts, eps, acc):
        m = random_machine(ts + eps, acc)
        got = enumerate_accepted(m, 4)
        assert got == {w for w in words_upto(4) if oracle_accepts(m, w)}


class TestTrim:
    def test_drops_dead_states(self):
        m = machine([("q0", "a", ANY, act(), "q1"), ("q0", "b", ANY, act(), "dead"),
                     ("lost", "a", ANY, act(), "q1")],
                    states=("q0", "q1", "dead", "lost"))
        t = trim(m)
        assert t.states == ("q0", "q1")
        for w in words_upto(3):
            assert run(t, w).accepted == run(m, w).accepted

    def test_keeps_start(self):
        m = machine([], accepts_=())
        assert trim(m).states == ("q0",)
