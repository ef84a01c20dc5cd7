"""Acceptance criteria at full scale.

Each ``test_criterion_<n>_*`` test is one criterion; conftest prints a
PASS/FAIL line per criterion after the run.
"""
import random
import time

import pytest

from thompsonf.automata import run
from thompsonf.encoding import convolve, encode
from thompsonf.group import FINITE_GENERATORS, X1_INV, reduce
from thompsonf.structure import SearchStats, multiplier, multiplier_apply, word_to_normal_form
from thompsonf.verification import (
    verify_bijection,
    verify_language,
    verify_machines,
    verify_multipliers,
    verify_pumping,
    verify_quasigeodesic,
)

pytestmark = pytest.mark.acceptance

RADIUS = 7
MAX_LEN = 12
LEN_CAP = 7


def report(criterion, suites, extra=""):
    status = "PASS" if all(s.ok for s in suites) else "FAIL"
    counts = ", ".join(f"{s.name} {s.passed}/{s.passed + s.failed}" for s in suites)
    print(f"criterion {criterion}: {status} ({counts}){extra}")
    for s in suites:
        for f in s.failures[:3]:
            print(f"  {s.name}: {f}")


@pytest.fixture(scope="module")
def patched_sweep():
    return verify_multipliers(RADIUS, LEN_CAP, patches=True)


@pytest.fixture(scope="module")
def unpatched_sweep():
    return verify_multipliers(RADIUS, LEN_CAP, patches=False)


@pytest.fixture(scope="module")
def length_suites():
    return verify_quasigeodesic(RADIUS)


def test_criterion_1_language_exactness():
    t0 = time.perf_counter()
    suite = verify_language(MAX_LEN)
    elapsed = time.perf_counter() - t0
    report(1, [suite], f" in {elapsed:.1f}s")
    assert suite.passed == sum(3 ** k for k in range(MAX_LEN + 1))
    assert suite.ok
    assert elapsed < 30


def test_criterion_2_bijection():
    suite = verify_bijection(RADIUS, MAX_LEN)
    report(2, [suite])
    assert suite.ok


def test_criterion_3_multiplier_sweep(patched_sweep, unpatched_sweep):
    positive, negative, coverage, _ = patched_sweep
    report(3, [positive, negative, coverage])
    for note in coverage.notes:
        print(f"  {note}")
    assert positive.ok and negative.ok and coverage.ok
    # without the gap-filling machines the same sweep must fail with witnesses
    u_pos, u_neg, _, _ = unpatched_sweep
    print(f"  without patches: {u_pos.failed} positive and {u_neg.failed} negative failures")
    assert not u_pos.ok and not u_neg.ok
    assert any(f.startswith("g=x0^-1 u='a' v=''") for f in u_pos.failures)
    assert any(f.startswith("g=x0^-1 u='a' ") for f in u_neg.failures)


def test_criterion_4_quasigeodesic_bounds(length_suites):
    quasi, _, sandwich, _ = length_suites
    report(4, [quasi, sandwich])
    assert quasi.ok
    assert sandwich.ok


def test_criterion_4r_reversed_sandwich(length_suites):
    quasi, burillo, _, corrected = length_suites
    report("4r", [quasi, burillo, corrected])
    assert quasi.ok and burillo.ok and corrected.ok


def test_criterion_5_pumping_witnesses():
    t0 = time.perf_counter()
    suite = verify_pumping(50, 5)
    elapsed = time.perf_counter() - t0
    report(5, [suite], f" in {elapsed:.1f}s")
    assert suite.passed == 50 * 6
    assert suite.ok
    assert elapsed < 5


def test_criterion_6_machine_hygiene(patched_sweep):
    lint = verify_machines()
    _, _, _, counter = patched_sweep
    # the pumping family, run through every case machine
    pumping_ok = True
    for _, m in multiplier(X1_INV).machines:
        for p in range(1, 51):
            for extra in range(6):
                u = "b" * (p + extra)
                cols = convolve([u, u + "#" * (p + 1) + "b"])
                res = run(m, cols)
                pumping_ok &= res.max_abs_counter <= 2 * len(cols) + 2
                pumping_ok &= not res.accepted or res.trace[-1][1] == 0
    report(6, [lint, counter], "" if pumping_ok else "; pumping runs exceed the bound")
    assert lint.ok
    assert counter.ok
    assert pumping_ok


def test_criterion_7_random_words():
    rng = random.Random(20240611)
    stats = SearchStats()
    t0 = time.perf_counter()
    mismatches = []
    for _ in range(1000):
        word = tuple(rng.choice(FINITE_GENERATORS) for _ in range(rng.randint(0, 20)))
        want = encode(reduce(word))
        u = ""
        for g in word:
            u = multiplier_apply(u, g, stats=stats)
        if u != want or word_to_normal_form(word) != want:
            mismatches.append((word, u, want))
    elapsed = time.perf_counter() - t0
    print(f"criterion 7: {'PASS' if not mismatches else 'FAIL'} "
          f"({1000 - len(mismatches)}/1000 words) in {elapsed:.1f}s, "
          f"max |counter| {stats.max_counter}")
    assert not mismatches, mismatches[:3]
    assert not stats.bound_violations
    assert elapsed < 60
