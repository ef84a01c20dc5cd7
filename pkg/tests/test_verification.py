import json

import pytest

from thompsonf.automata import Transition, check_deterministic
from thompsonf.verification import (
    MAX_FAILURES,
    SuiteResult,
    VerificationReport,
    VerifyConfig,
    all_words,
    run_all,
    verify_bijection,
    verify_language,
    verify_machines,
    verify_multipliers,
    verify_pumping,
    verify_quasigeodesic,
)
from thompsonf.structure import load_machine

SMALL = VerifyConfig(language_max_len=4, ball_radius=2, len_cap=3, p_max=3, m_max=2)


def test_all_words():
    assert list(all_words(0)) == [""]
    assert len(list(all_words(2))) == 13


def test_language_counts():
    assert verify_language(0).passed == 1
    s = verify_language(2)
    assert (s.passed, s.failed) == (13, 0)


def test_language_cap():
    with pytest.raises(ValueError):
        verify_language(99)


def test_bijection_radius_zero():
    s = verify_bijection(0, 0)
    assert s.ok and s.passed == 3


def test_multipliers_radius_zero():
    pos, neg, cov, counter = verify_multipliers(0, 0)
    assert pos.passed == 4 and pos.ok
    assert neg.ok and cov.ok and counter.ok


def test_unpatched_sweep_names_witness():
    pos, neg, _, _ = verify_multipliers(1, 2, patches=False)
    assert not pos.ok and not neg.ok
    assert any(f.startswith("g=x0^-1 u='a' v=''") for f in pos.failures)


def test_quasigeodesic_small():
    quasi, burillo, sandwich, corrected = verify_quasigeodesic(2)
    assert quasi.ok and burillo.ok and corrected.ok
    # the quoted sandwich is only counted here; its status is an acceptance check
    assert sandwich.passed + sandwich.failed == 17


def test_pumping_small():
    s = verify_pumping(3, 2)
    assert (s.passed, s.failed) == (9, 0)


def test_failure_cap():
    s = SuiteResult("x")
    for i in range(MAX_FAILURES + 5):
        s.record(False, str(i))
    assert s.failed == MAX_FAILURES + 5 and len(s.failures) == MAX_FAILURES
    assert not s.ok


def test_report_is_deterministic():
    a, b = run_all(SMALL), run_all(SMALL)
    assert a.to_text() == b.to_text()
    text = a.to_text()
    summary = json.loads(text[text.index("summary:\n") + 9:])
    assert summary == a.summary()
    assert summary["parameters"]["ball_radius"] == 2
    names = [s["name"] for s in summary["suites"]]
    assert names[:3] == ["language", "bijection", "multipliers-positive"]


def test_report_lookup():
    r = VerificationReport({}, [SuiteResult("a", 1), SuiteResult("b", 0, 1)])
    assert r.suite("a").ok and not r.ok
    with pytest.raises(KeyError):
        r.suite("c")


def test_injected_duplicate_transition_is_caught():
    m = load_machine("fig2")
    t = next(t for t in m.transitions if t.src == "q1" and t.symbol == ("#", "#"))
    bad = type(m)(m.alphabet, m.states, m.start, m.accepts,
                  m.transitions + (Transition(t.src, t.symbol, t.guard, t.action, "q0"),),
                  m.name)
    conflicts = check_deterministic(bad)
    assert len(conflicts) == 1 and conflicts[0].state == "q1"


def test_machine_lint_notes_epsilon():
    s = verify_machines()
    assert s.ok
    assert any("fig4" in n for n in s.notes)
