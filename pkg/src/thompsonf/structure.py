"""The graph automatic structure: normal-form language and multipliers.

Each multiplier is a union of separately deterministic case machines over
the pair alphabet, every one already intersected with conv(L_inf, L_inf).
Right multiplication by a positive generator reuses the machines of its
inverse with the two tracks swapped, since v = u x exactly when u = v x^-1.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

from .automata import (
    CounterAutomaton,
    Transition,
    eliminate_epsilon,
    intersect_regular,
    run,
    trim,
)
from .encoding import PAD, PAIR_ALPHABET, SYMBOLS, convolve, parse_blocks
from .formats import parse_machine
from .group import X0, X0_INV, X1, X1_INV, GeneratorLetter

__all__ = [
    "MACHINE_DIR_ENV",
    "X0_INV_CASES",
    "X1_INV_CASES",
    "machine_dir",
    "machine_names",
    "load_machine",
    "linf_fsa",
    "linf_pair_fsa",
    "Multiplier",
    "multiplier",
    "multiplier_x0_inv",
    "multiplier_x1_inv",
    "multiplier_accepts",
    "accepting_cases",
    "SearchStats",
    "search_partners",
    "accepted_partners",
    "NoResultError",
    "AmbiguousResultError",
    "multiplier_apply",
    "word_to_normal_form",
]

MACHINE_DIR_ENV = "THOMPSONF_MACHINES"
PAIR_LANGUAGE = "linf_pair"

# (case label, machine file, is_patch); a patch is a pair family that the
# case analysis misses.  With patches off, x0^-1 case 2 also reverts to the
# uncorrected exponent.
X0_INV_CASES = (
    ("case 1", "x0inv_case1", False),
    ("case 2", "x0inv_case2", True),
    ("case 2 (uncorrected)", "x0inv_case2_literal", False),
    ("patch: u = a^n", "x0inv_patch", True),
)
X1_INV_CASES = (
    ("case 1.1", "x1inv_case1_1", False),
    ("case 1.2", "x1inv_case1_2", False),
    ("case 1.3 (r1 > 1, end)", "x1inv_case1_3a", False),
    ("case 1.3 (r1 = 1, end)", "x1inv_case1_3b", False),
    ("case 1.3 (r1 > 1, ##)", "x1inv_case1_3c", False),
    ("patch: case 1.3 (r1 = 1, ##)", "x1inv_case1_3_patch", True),
    ("case 2.1 R>M", "fig2", False),
    ("case 2.1 R=M", "fig3", False),
    ("case 2.1 R<M", "fig4", False),
    ("case 2.2.1", "fig5", False),
    ("case 2.2.2", "fig6", False),
    ("patch: case 2.2.2 type 1, last block", "fig6_last", True),
)


def machine_dir(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get(MACHINE_DIR_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("thompsonf") / "machines"))


def machine_names(directory: str | os.PathLike | None = None) -> list[str]:
    names = sorted(p.stem for p in machine_dir(directory).glob("*.cam"))
    return names + [PAIR_LANGUAGE]


@lru_cache(maxsize=None)
def _load(name: str, directory: str) -> CounterAutomaton:
    if name == PAIR_LANGUAGE:
        return linf_pair_fsa()
    path = Path(directory) / f"{name}.cam"
    if not path.exists():
        raise KeyError(f"no machine named {name!r} in {directory}")
    return parse_machine(path.read_text(), lambda sub: _load(sub, directory), name=name)


def load_machine(name: str, directory: str | os.PathLike | None = None) -> CounterAutomaton:
    """Machine ``name`` from the definition directory, includes resolved."""
    return _load(name, str(machine_dir(directory)))


def linf_fsa(directory: str | os.PathLike | None = None) -> CounterAutomaton:
    return load_machine("fig1", directory)


@lru_cache(maxsize=None)
def _pair_fsa(directory: str) -> CounterAutomaton:
    one = _load("fig1", directory)
    end = "end"

    def step(q, c):
        if c == PAD:
            return end if q == end or q in one.accepts else None
        if q == end:
            return None
        ts = one.out(q, c)
        return ts[0].dst if ts else None

    def key(p, q):
        return f"{p}/{q}"

    start = (one.start, one.start)
    seen, order, todo = {start}, [start], [start]
    transitions = []
    while todo:
        p, q = todo.pop()
        for x, y in PAIR_ALPHABET:
            p2, q2 = step(p, x), step(q, y)
            if p2 is None or q2 is None:
                continue
            if (p2, q2) not in seen:
                seen.add((p2, q2))
                order.append((p2, q2))
                todo.append((p2, q2))
            transitions.append(Transition(key(p, q), (x, y), dst=key(p2, q2)))
    ok = one.accepts | {end}
    return CounterAutomaton(
        PAIR_ALPHABET,
        tuple(key(p, q) for p, q in order),
        key(*start),
        frozenset(key(p, q) for p, q in order if p in ok and q in ok),
        tuple(transitions),
        PAIR_LANGUAGE,
    )


def linf_pair_fsa(directory: str | os.PathLike | None = None) -> CounterAutomaton:
    """conv(L_inf, L_inf): two copies of the normal-form FSA run side by side,
    each track allowed to stop (read padding) only from an accept state."""
    return _pair_fsa(str(machine_dir(directory)))


@lru_cache(maxsize=None)
def _case_machine(name: str, directory: str) -> CounterAutomaton:
    raw = eliminate_epsilon(_load(name, directory))
    return trim(intersect_regular(raw, _pair_fsa(directory), name=name))


@dataclass(frozen=True)
class Multiplier:
    generator: GeneratorLetter
    machines: tuple[tuple[str, CounterAutomaton], ...]
    track_swapped: bool

    @property
    def cases(self) -> list[str]:
        return [case for case, _ in self.machines]

    def columns(self, u: str, v: str) -> tuple:
        return convolve([v, u] if self.track_swapped else [u, v])


def _select(table, patches: bool):
    for case, name, is_patch in table:
        if name == "x0inv_case2_literal":
            if not patches:
                yield case, name
        elif patches or not is_patch:
            yield case, name


@lru_cache(maxsize=None)
def _multiplier(g: GeneratorLetter, patches: bool, directory: str) -> Multiplier:
    if g.index not in (0, 1):
        raise ValueError(f"no multiplier for {g}; only x0 and x1 are generators")
    table = X0_INV_CASES if g.index == 0 else X1_INV_CASES
    machines = tuple(
        (case, _case_machine(name, directory)) for case, name in _select(table, patches)
    )
    return Multiplier(g, machines, track_swapped=g.sign > 0)


def multiplier(
    g: GeneratorLetter, patches: bool = True, directory: str | os.PathLike | None = None
) -> Multiplier:
    return _multiplier(g, patches, str(machine_dir(directory)))


def multiplier_x0_inv(patches: bool = True, directory=None) -> Multiplier:
    return multiplier(X0_INV, patches, directory)


def multiplier_x1_inv(patches: bool = True, directory=None) -> Multiplier:
    return multiplier(X1_INV, patches, directory)


def _check_symbols(*words: str) -> None:
    for w in words:
        bad = set(w) - set(SYMBOLS)
        if bad:
            raise ValueError(f"{w!r} has symbols {sorted(bad)} outside {{a,b,#}}")


def accepting_cases(g: GeneratorLetter, u: str, v: str, patches: bool = True,
                    directory=None) -> list[str]:
    """Labels of the case machines that accept the pair (u, v) for ``g``."""
    _check_symbols(u, v)
    mult = multiplier(g, patches, directory)
    cols = mult.columns(u, v)
    return [case for case, m in mult.machines if run(m, cols).accepted]


def multiplier_accepts(g: GeneratorLetter, u: str, v: str, patches: bool = True,
                       directory=None) -> bool:
    return bool(accepting_cases(g, u, v, patches, directory))


# -- guided search -----------------------------------------------------------


@dataclass
class SearchStats:
    """Bookkeeping gathered while searching machine configurations.

    ``bound_violations`` lists (case, columns read, counter) for any visited
    configuration with |counter| > 2 * columns + 2.
    """

    nodes: int = 0
    max_counter: int = 0
    bound_violations: list = field(default_factory=list)


def search_partners(
    mult: Multiplier,
    fixed: str,
    free_max: int,
    counter_bound: int | None = None,
    stats: SearchStats | None = None,
) -> dict[str, tuple[str, ...]]:
    """Every word of length <= free_max that some case machine pairs with
    ``fixed``, mapped to the accepting case labels.

    ``fixed`` is the input track (the second track when the multiplier is
    swapped).  The search is a depth-first walk over (column, free word,
    machine configurations); configurations that leave |counter| <=
    counter_bound are dropped.
    """
    if counter_bound is None:
        counter_bound = 2 * (len(fixed) + free_max) + 2
    stats = stats if stats is not None else SearchStats()
    names = [case for case, _ in mult.machines]
    tables = [m._table for _, m in mult.machines]
    accepts = [m.accepts for _, m in mult.machines]
    swapped = mult.track_swapped
    n_fixed = len(fixed)
    results: dict[str, tuple[str, ...]] = {}

    stack = [(0, "", False, tuple((k, m.start, 0) for k, (_, m) in enumerate(mult.machines)))]
    while stack:
        pos, free, ended, configs = stack.pop()
        stats.nodes += 1
        if pos >= n_fixed:
            hit = tuple(names[k] for k, q, c in configs if c == 0 and q in accepts[k])
            if hit:
                results[free] = hit
        fc = fixed[pos] if pos < n_fixed else PAD
        if ended:
            choices = (PAD,) if fc != PAD else ()
        else:
            choices = (SYMBOLS if len(free) < free_max else ()) + ((PAD,) if fc != PAD else ())
        limit = 2 * (pos + 1) + 2
        for ch in choices:
            col = (ch, fc) if swapped else (fc, ch)
            nxt = []
            for k, q, c in configs:
                for t in tables[k].get((q, col), ()):
                    if t.guard.enables(c):
                        c2 = t.action.apply(c)
                        if abs(c2) <= counter_bound:
                            nxt.append((k, t.dst, c2))
                            if abs(c2) > stats.max_counter:
                                stats.max_counter = abs(c2)
                            if abs(c2) > limit and len(stats.bound_violations) < 20:
                                stats.bound_violations.append((names[k], pos + 1, c2))
                        break
            if nxt:
                stack.append((pos + 1, free if ch == PAD else free + ch,
                              ended or ch == PAD, tuple(nxt)))
    return results


def accepted_partners(g: GeneratorLetter, u: str, max_len: int, patches: bool = True,
                      stats: SearchStats | None = None, directory=None) -> dict[str, tuple[str, ...]]:
    """All v with |v| <= max_len accepted together with u, with case labels."""
    _check_symbols(u)
    return search_partners(multiplier(g, patches, directory), u, max_len, stats=stats)


class NoResultError(RuntimeError):
    """No accepted partner within the search bounds (a machine is wrong)."""


class AmbiguousResultError(RuntimeError):
    """More than one accepted partner (a machine is wrong)."""


def multiplier_apply(u: str, g: GeneratorLetter, patches: bool = True, directory=None,
                     stats: SearchStats | None = None) -> str:
    """The normal form of u * g, read off the multiplier machines.

    Searches partners of length <= 2|u| + 2 with |counter| <= 2(|u|+|v|) + 2
    and insists on exactly one.
    """
    parse_blocks(u)
    free_max = 2 * len(u) + 2
    found = search_partners(multiplier(g, patches, directory), u, free_max,
                            2 * (len(u) + free_max) + 2, stats)
    if not found:
        raise NoResultError(f"no partner for u={u!r} under {g} within |v| <= {free_max}")
    if len(found) > 1:
        raise AmbiguousResultError(f"partners {sorted(found)} for u={u!r} under {g}")
    return next(iter(found))


def word_to_normal_form(word: Iterable[GeneratorLetter], patches: bool = True,
                        directory=None) -> str:
    """Fold multiplier_apply over a word in x0^+-1, x1^+-1 starting from ""."""
    u = ""
    for g in word:
        if g not in (X0, X0_INV, X1, X1_INV):
            raise ValueError(f"{g} is not in the finite generating set")
        u = multiplier_apply(u, g, patches, directory)
    return u
