"""Exhaustive checks of the structure against the exact group arithmetic.

Every suite is a finite sweep with named bounds, so "0 failures" is a
statement about an explicit set of inputs.  ``run_all`` assembles the suites
into a report with a plain-text body and a JSON summary block.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import asdict, dataclass, field

from .automata import check_deterministic, eliminate_epsilon, run
from .encoding import SYMBOLS, convolve, decode, encode, is_linf_valid
from .group import (
    FINITE_GENERATORS,
    X1_INV,
    ball,
    burillo_D,
    encoded_length,
    multiply,
)
from .structure import (
    SearchStats,
    accepted_partners,
    linf_fsa,
    load_machine,
    machine_names,
    multiplier,
)

__all__ = [
    "MAX_FAILURES",
    "LANGUAGE_LEN_CAP",
    "BALL_RADIUS_CAP",
    "VerifyConfig",
    "SuiteResult",
    "VerificationReport",
    "all_words",
    "verify_language",
    "verify_bijection",
    "verify_multipliers",
    "verify_quasigeodesic",
    "verify_pumping",
    "verify_machines",
    "run_all",
]

MAX_FAILURES = 20
LANGUAGE_LEN_CAP = 14
BALL_RADIUS_CAP = 8


@dataclass(frozen=True)
class VerifyConfig:
    language_max_len: int = 12
    ball_radius: int = 7
    len_cap: int = 7
    p_max: int = 50
    m_max: int = 5
    patches: bool = True


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def record(self, ok: bool, witness: str = "") -> bool:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < MAX_FAILURES:
                self.failures.append(witness)
        return ok

    @property
    def ok(self) -> bool:
        return self.failed == 0


@dataclass
class VerificationReport:
    parameters: dict
    suites: list[SuiteResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites)

    def suite(self, name: str) -> SuiteResult:
        for s in self.suites:
            if s.name == name:
                return s
        raise KeyError(name)

    def summary(self) -> dict:
        return {
            "ok": self.ok,
            "parameters": self.parameters,
            "suites": [
                {"name": s.name, "passed": s.passed, "failed": s.failed} for s in self.suites
            ],
        }

    def to_text(self) -> str:
        lines = ["parameters: " + " ".join(f"{k}={v}" for k, v in self.parameters.items())]
        for s in self.suites:
            status = "PASS" if s.ok else "FAIL"
            lines.append(f"[{status}] {s.name}: {s.passed} passed, {s.failed} failed")
            lines.extend(f"    note: {n}" for n in s.notes)
            lines.extend(f"    failure: {f}" for f in s.failures)
        lines.append("summary:")
        lines.append(json.dumps(self.summary(), indent=2, sort_keys=True))
        return "\n".join(lines) + "\n"


def all_words(max_len: int, alphabet=SYMBOLS):
    for n in range(max_len + 1):
        for letters in itertools.product(alphabet, repeat=n):
            yield "".join(letters)


def _show(cols) -> str:
    return "".join("(" + "|".join(c) + ")" for c in cols)


# -- suites ------------------------------------------------------------------


def verify_language(max_len: int) -> SuiteResult:
    """The normal-form FSA against the block-structural predicate."""
    if not 0 <= max_len <= LANGUAGE_LEN_CAP:
        raise ValueError(f"max_len must be in [0, {LANGUAGE_LEN_CAP}]")
    suite = SuiteResult("language")
    fsa = linf_fsa()
    table = {(q, c): ts[0].dst for (q, c), ts in fsa._table.items()}
    accepting = fsa.accepts
    # walk the word tree so each word costs one transition; dead prefixes
    # still enumerate their extensions (all must be rejected)
    stack = [("", fsa.start)]
    while stack:
        word, q = stack.pop()
        got = q is not None and q in accepting
        suite.record(got == is_linf_valid(word),
                     f"{word!r}: fsa={got} predicate={not got}")
        if len(word) < max_len:
            for c in SYMBOLS:
                stack.append((word + c, table.get((q, c)) if q is not None else None))
    return suite


def verify_bijection(radius: int, max_len: int) -> SuiteResult:
    suite = SuiteResult("bijection")
    for nf in ball(radius):
        w = encode(nf)
        suite.record(decode(w) == nf and w.count("#") == (nf.M or 0),
                     f"decode(encode({nf})) or #-count")
        suite.record(len(w) == encoded_length(nf), f"|encode({nf})| != exponent sum + M")
    for w in all_words(max_len):
        if is_linf_valid(w):
            suite.record(encode(decode(w)) == w, f"encode(decode({w!r}))")
    return suite


def verify_multipliers(ball_radius: int, len_cap: int, patches: bool = True):
    """Positive sweep over the ball and exhaustive negative sweep over pairs.

    Returns (positive, negative, coverage, counter) suites.
    """
    if not 0 <= ball_radius <= BALL_RADIUS_CAP:
        raise ValueError(f"ball_radius must be in [0, {BALL_RADIUS_CAP}]")
    positive = SuiteResult("multipliers-positive")
    negative = SuiteResult("multipliers-negative")
    coverage = SuiteResult("case-coverage")
    counter = SuiteResult("counter-bound")
    fired: dict[tuple, tuple[str, ...]] = {}

    for nf in ball(ball_radius):
        u = encode(nf)
        for g in FINITE_GENERATORS:
            v = encode(multiply(nf, g))
            mult = multiplier(g, patches)
            cols = mult.columns(u, v)
            hits = []
            for case, m in mult.machines:
                res = run(m, cols)
                counter.record(res.max_abs_counter <= 2 * len(cols) + 2,
                               f"{case} on {_show(cols)}: max |counter| "
                               f"{res.max_abs_counter} > 2n+2")
                if res.accepted:
                    counter.record(res.trace[-1][1] == 0, f"{case}: accepted with counter != 0")
                    hits.append(case)
            positive.record(bool(hits), f"g={g} u={u!r} v={v!r} {_show(cols)}: no machine accepts")
            inv = g if g.sign < 0 else g.inverse
            key = (inv.index, u, v) if g.sign < 0 else (inv.index, v, u)
            fired[key] = tuple(hits)

    stats = SearchStats()
    for u in all_words(len_cap):
        if not is_linf_valid(u):
            continue
        nf = decode(u)
        for g in FINITE_GENERATORS:
            want = encode(multiply(nf, g))
            got = accepted_partners(g, u, len_cap, patches, stats=stats)
            expected = {want} if len(want) <= len_cap else set()
            if set(got) == expected:
                negative.record(True)
                continue
            for v in sorted(set(got) ^ expected):
                cases = ", ".join(got.get(v, ())) or "no machine"
                negative.record(False, f"g={g} u={u!r} v={v!r}: accepted by {cases}; "
                                       f"oracle v={want!r}")
    counter.passed += stats.nodes - len(stats.bound_violations)
    counter.failed += len(stats.bound_violations)
    for case, n, c in stats.bound_violations:
        counter.failures.append(f"{case}: counter {c} after {n} columns")
    counter.notes.append(f"largest |counter| seen in the negative search: {stats.max_counter}")

    overlaps = Counter(h for h in fired.values() if len(h) > 1)
    solo = Counter(h[0] for h in fired.values() if len(h) == 1)
    for hits in fired.values():
        coverage.record(len(hits) >= 1, "uncovered pair")
    coverage.notes.append(f"{sum(overlaps.values())} pairs accepted by two or more case machines")
    for hits, n in sorted(overlaps.items()):
        coverage.notes.append(f"overlap x{n}: {' + '.join(hits)}")
    for case, n in sorted(solo.items()):
        if case.startswith("patch"):
            coverage.notes.append(f"{case}: sole acceptor of {n} pairs")
    return positive, negative, coverage, counter


def verify_quasigeodesic(ball_radius: int):
    """Length bounds against BFS word length, in integer arithmetic.

    Returns (quasigeodesic, burillo, sandwich, sandwich-corrected) suites.
    ``sandwich`` checks D <= D' <= 2D as usually quoted; the true relation is
    D' <= D <= 2D' (checked by ``sandwich-corrected``).
    """
    if not 0 <= ball_radius <= BALL_RADIUS_CAP:
        raise ValueError(f"ball_radius must be in [0, {BALL_RADIUS_CAP}]")
    quasi = SuiteResult("quasigeodesic")
    burillo = SuiteResult("burillo-bound")
    sandwich = SuiteResult("burillo-sandwich")
    corrected = SuiteResult("burillo-sandwich-corrected")
    for nf, l in ball(ball_radius).items():
        dp, d = encoded_length(nf), burillo_D(nf)
        tag = f"{nf}: l={l} D={d} D'={dp}"
        # D'/12 - 2 <= l <= 3D'
        quasi.record(dp - 24 <= 12 * l and l <= 3 * dp, tag)
        # D/6 - 2 <= l <= 3D
        burillo.record(d - 12 <= 6 * l and l <= 3 * d, tag)
        sandwich.record(d <= dp <= 2 * d, tag)
        corrected.record(dp <= d <= 2 * dp, tag)
    return quasi, burillo, sandwich, corrected


def verify_pumping(p_max: int, m_max: int, patches: bool = True) -> SuiteResult:
    """conv(b^p, b^p #^(p+1) b) is accepted; extra b's on both tracks are not."""
    suite = SuiteResult("pumping")
    mult = multiplier(X1_INV, patches)

    def accepted(u, v):
        cols = convolve([u, v])
        return any(run(m, cols).accepted for _, m in mult.machines)

    for p in range(1, p_max + 1):
        v_tail = "#" * (p + 1) + "b"
        suite.record(accepted("b" * p, "b" * p + v_tail), f"p={p}: witness rejected")
        for m in range(1, m_max + 1):
            u = "b" * (p + m)
            suite.record(not accepted(u, u + v_tail), f"p={p} m={m}: pumped word accepted")
    return suite


def verify_machines(patches: bool = True) -> SuiteResult:
    """Determinism of every shipped machine (after epsilon elimination) and
    of every assembled case machine."""
    suite = SuiteResult("machines")
    for name in machine_names():
        m = load_machine(name)
        if m.has_epsilon:
            suite.notes.append(f"{name}: contains epsilon edges (by design), checked after removal")
        conflicts = check_deterministic(eliminate_epsilon(m))
        suite.record(not conflicts, f"{name}: " + "; ".join(map(str, conflicts[:3])))
    for g in FINITE_GENERATORS:
        if g.sign > 0:
            continue
        for case, m in multiplier(g, patches).machines:
            conflicts = check_deterministic(m)
            suite.record(not conflicts, f"{g} {case}: " + "; ".join(map(str, conflicts[:3])))
    return suite


def run_all(config: VerifyConfig = VerifyConfig()) -> VerificationReport:
    report = VerificationReport(asdict(config))
    report.suites.append(verify_language(config.language_max_len))
    report.suites.append(verify_bijection(config.ball_radius, config.language_max_len))
    report.suites.extend(verify_multipliers(config.ball_radius, config.len_cap, config.patches))
    report.suites.extend(verify_quasigeodesic(config.ball_radius))
    report.suites.append(verify_pumping(config.p_max, config.m_max, config.patches))
    report.suites.append(verify_machines(config.patches))
    return report
